//! Exact arithmetic for the coefficient fields, truncated power series
//! rings, and matrices of multipliers that encode homomorphisms between
//! sums of indecomposable modules.

mod field;
mod hom;
mod series;

pub use field::{Field, FieldElem};
pub use hom::{endo_matrix_inv, endo_matrix_mul, CornerTag, EndoMatrix, HomMatrix, HomTable};
pub use series::{chi, cusp_ring_member, series_inv, series_mul, IdealEndomorphism, Support, TruncatedSeries};
