//! Simple root systems, Weyl groups, nilpotent gradings and admissible data.
//!
//! Every vector of 𝔥 ≅ 𝔥* is stored in simple-root coordinates: the vector
//! `v` stands for Σ vᵢ αᵢ, and inner products go through the Gram matrix
//! `(αᵢ|αⱼ)`, normalized so that `(θ|θ) = 2`.

mod affine;
mod cartan;
pub mod lattice;
pub mod linalg;
mod roots;
mod slice;
mod weyl;

pub use affine::{principal_admissible_vacuum, AdmissibleVacuum, AffineWeight};
pub use cartan::CartanType;
pub use roots::RootSystem;
pub use slice::{NilpotentSlice, SliceKind};
pub use weyl::{is_isometry_of_roots, WeylElement, WeylGroup, DEFAULT_WEYL_CAP};
pub(crate) use weyl::apply_q as weyl_apply_q;
