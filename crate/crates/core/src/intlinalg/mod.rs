//! Exact integer linear algebra: Smith normal form and cokernels of
//! integer matrices as finitely generated abelian groups.

mod abelian;
mod matrix;
mod snf;

pub use abelian::{cokernel, is_injective, rank, FgAbelianGroup};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithForm};
