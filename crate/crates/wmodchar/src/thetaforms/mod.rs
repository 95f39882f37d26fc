//! Theta-type objects as exact series along a direction z = (u/2πi)·z₀.

mod denominator;
mod direction;
mod ffun;
mod jacobi;
pub mod lattice_sum;

pub use denominator::{denominator_lead, eta_exponent, half_roots_pair_up, half_theta, w_denominator};
pub use direction::{generic_direction, in_hf, is_generic};
pub use ffun::{f_function, f_function_alt, theta_lambda, FVariant};
pub(crate) use ffun::positive_level;
pub use jacobi::{dedekind_eta, eta_power, euler_product, jacobi_theta, jacobi_theta_sum, ThetaKind};
pub use lattice_sum::{
    weyl_theta_sum, weyl_theta_sum_lower_bound, weyl_theta_sum_relative, LatticeSum, Shift, SumSpec,
};
