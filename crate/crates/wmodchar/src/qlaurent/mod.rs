//! Truncated q-series with rational exponents whose coefficients are jets
//! `c₀ + c₁u + … + c_U u^U` over the Gaussian rationals.
//!
//! A function of (τ, z) restricted to z = s·z₀ becomes such a series with
//! q = e^{2πiτ} and u = 2πis, so e^{2πi(μ|z)} = exp(u·(μ|z₀)).

mod gauss;
mod jet;
mod series;

pub use gauss::{big, rational_sqrt, BigQ, GaussQ};
pub use jet::UJet;
pub use series::{Factored, QJetSeries};

#[cfg(test)]
mod props;
