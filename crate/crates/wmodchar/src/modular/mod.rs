//! Complex evaluation of theta-type functions and numerical checks of their
//! S- and T-transformation laws.

mod cosets;
mod eval;
mod transforms;

pub use cosets::Cosets;
pub use eval::{apply_c, e2pii, eta, eta_pow, half_root_pairs, jacobi_theta, q_pow, Eval, Evaluator};
pub use transforms::{
    a1, a_of_z, holomorphy_smoke, phase_pi, phi, phi1, s_coefficient, verify_denominator_transform,
    verify_double_s, verify_f_transform, verify_psi_transform, verify_theorem4b, verify_theta_transforms,
    EvalPoint, Transform, TransformReport, ABS_FLOOR, DEFAULT_EPS,
};

#[cfg(test)]
mod tests;
