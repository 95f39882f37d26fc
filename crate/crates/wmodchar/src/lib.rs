//! Exact and numerical machinery for characters of affine Lie algebras and of
//! their quantum Hamiltonian reductions (W-algebras).
//!
//! - [`liealg`]: root systems, Weyl groups, nilpotent gradings, admissible levels.
//! - [`qlaurent`]: truncated q-series whose coefficients are jets in a direction
//!   parameter `u`, over the Gaussian rationals.
//! - [`thetaforms`]: lattice theta functions, Jacobi theta functions, eta, the
//!   f-functions and the W-denominators as exact series.
//! - [`characters`]: numerators, quotients, minimal W-algebra characters,
//!   admissible-level product formulas.
//! - [`modular`]: complex evaluation and numerical checks of S/T transformation laws.
//! - [`report`]: canonical text / CSV / JSON renderings.
//! - [`verify`]: packaged verification runs.

pub mod characters;
pub mod error;
pub mod liealg;
pub mod modular;
pub mod qlaurent;
pub mod report;
pub mod thetaforms;
pub mod verify;

pub use error::{Error, Result};

/// Exact rational scalar used for coordinates, levels and q-exponents.
pub type Q = num_rational::Ratio<i64>;

#[cfg(test)]
pub(crate) fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub(crate) fn qi(n: i64) -> Q {
    Q::from_integer(n)
}
