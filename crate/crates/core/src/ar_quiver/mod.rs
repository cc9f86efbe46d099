//! Auslander-Reiten matrices and `K_0(mod R)`.
//!
//! An [`ArPresentation`] lists the indecomposable MCM modules `M_0 = R,
//! M_1, ..., M_t` and the AR sequence ending in each non-free one. The AR
//! matrix built from it presents `K_0(mod R)` as a cokernel.

mod dynkin;
mod presentation;

pub use dynkin::{cartan_matrix, dynkin_upsilon, DynkinType};
pub use presentation::{
    build_upsilon, cusp_presentation, dual_numbers_presentation, e6_surface_presentation,
    k0_group, ArPresentation, ArSequence,
};
