//! Character formulas: numerators, Ψ-quotients, minimal W-algebra characters,
//! and admissible-level product formulas.

mod integrable;
mod numerator;
mod products;
mod psi;
mod qhr;
mod result;
mod wmin;

pub use integrable::{check_dominant, integrable_character, vacuum_character_dimension_sum, weyl_kac_numerator, Specialization};
pub use numerator::{
    b_weights, numerator_a_specialized, numerator_b, numerator_b_relative, rhs_theorem1, shifted_vacuum, NumeratorSpec,
};
pub use products::EtaProduct;
pub use psi::{denominator_u_order, psi};
pub use qhr::{
    admissible_vacuum_character, boundary_affine_character, boundary_central_charge, boundary_slice_character,
    boundary_slice_character_product, principal_qhr_character, qhr_admissible_character,
    qhr_admissible_character_printed_a, smallest_admissible_p, qhr_exponent, qhr_prefactor,
    theta11_specialized, vanishing_predicate,
};
pub use result::CharacterResult;
pub use wmin::{
    central_charge_wmin, check_wmin_level, denominator_identity_remark4, wmin_character, wmin_character_along, wmin_spec,
    Remark4Report,
};

#[cfg(test)]
mod tests;
