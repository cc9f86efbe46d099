//! Exact computations around the lower K-groups of rings of finite
//! Cohen-Macaulay type.
//!
//! - [`intlinalg`]: Smith normal form and cokernels over the integers.
//! - [`ar_quiver`]: Auslander-Reiten matrices and `K_0(mod R)`.
//! - [`rings`]: prime fields, truncated power series, Hom matrices.
//! - [`k1`]: the tilde construction, lifts of AR sequences, the subgroup
//!   generators and the determinant maps that compute `K_1(mod R)` for the
//!   dual numbers and the cusp `k[[T^2, T^3]]`.
//! - [`semilocal`]: brute-force unit groups, commutator subgroups and the
//!   kernel of the Whitehead determinant for small finite rings.
//! - [`cli`]: the batch front end used by the `kcm` binary.

pub mod ar_quiver;
pub mod cli;
pub mod error;
pub mod intlinalg;
pub mod k1;
pub mod rings;
pub mod semilocal;
pub mod verify;

pub use error::{Error, Result};
