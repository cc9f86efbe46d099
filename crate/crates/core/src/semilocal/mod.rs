//! Unit groups of small finite rings, their commutator subgroups, and the
//! kernel of the Whitehead determinant `theta_A: A* -> K_1(A)`, described by
//! its generators `(1 + ab)(1 + ba)^{-1}`.
//!
//! Everything is enumerated, so rings are limited to products of at most
//! two matrix rings `M_n(F_p)` with `n <= 3` and `p` in `{2, 3, 5}`.

mod group;
mod ring;

pub use group::{
    commutator_subgroup, commutator_subgroup_ordered, generate, ker_theta, ker_theta_ordered, unit_group,
    unit_group_ordered, vaserstein_check, vaserstein_check_ordered, Enumeration, FiniteGroup, VasersteinReport,
    Verdict, GROUP_SIZE_LIMIT, PAIR_RING_LIMIT,
};
pub use ring::{FiniteRing, MatrixFactor, RING_SIZE_LIMIT};
