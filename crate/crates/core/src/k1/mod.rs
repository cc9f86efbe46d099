//! `K_1(mod R)` for the dual numbers `k[X]/(X^2)` and the cusp
//! `k[[T^2, T^3]]`, both with representation generator `M = R + m`.
//!
//! `K_1(mod R)` is `Aut(M)_ab` modulo the subgroup generated by the
//! elements [`xi_generator`] attaches to automorphisms of the end terms of
//! AR sequences. The quotient is never formed abstractly: [`delta`] and
//! [`omega`] map `Aut(M)_ab` isomorphically onto a concrete group, and the
//! report tracks images there.

mod delta;
mod factor;
mod family;
mod lift;
mod report;
mod sample;
mod tilde;
mod xi;

pub use delta::{delta, delta_preimage, lambda, mu, omega, omega_bar, Delta, Omega};
pub use factor::{
    commutator_identity_check, elementary_factorization, multiply_word, whitehead_factorization, Factor,
};
pub use family::{Family, FamilyRing, FREE, MAXIMAL};
pub use lift::{ar_lift, ar_lift_parts, cusp_beta_inverse, cusp_split, lift_commutes, ArLift};
pub use report::{k1_compute, Check, K1Report, LambdaRow, XiRow};
pub use sample::{
    aut_m_units, automorphisms, enumerate_units, random_automorphism, random_elem, random_nonzero,
    random_ring_unit, random_series, random_series_unit, ring_units, rng, SampleMode, EXHAUSTIVE_LIMIT,
};
pub use tilde::{tilde, Decomposition, Tilde};
pub use xi::{xi_closed_form, xi_from_lift, xi_generator};
