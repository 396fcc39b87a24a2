//! The bundle `TM ⊕ ∧ᵏT*M`: pairing, Dorfman bracket and subbundle checks.

mod dl;
mod frame;
mod section;

pub use dl::{
    check_dl, check_morphism, from_dl, lambda_bracket, lambda_bracket_alt, leaf_form_at, leaf_form_value,
    tangent_kernel_at, to_dl, DLPair, LeafTensor,
};
pub use frame::{
    check_nondeg_l, direct_product, distribution_frame, is_involutive, is_isotropic, orthogonal_profile, same_span,
    Distribution, OrthogonalProfile, PointProfile, SubbundleFrame,
};
pub(crate) use frame::{annihilator_matrix, form_basis, lift_section};
pub use section::{dorfman_bracket, pairing, CourantSection};
