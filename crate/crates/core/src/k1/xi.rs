use crate::error::Result;
use crate::rings::{EndoMatrix, HomMatrix, TruncatedSeries};

use super::family::{Family, FamilyRing};
use super::lift::{ar_lift, cusp_split, ArLift};
use super::tilde::{tilde, Decomposition};

fn decomposition_of(ring: &FamilyRing, labels: &[usize]) -> Result<Decomposition> {
    let mut mults = vec![0; ring.generator_labels().len()];
    for &l in labels {
        mults[l] += 1;
    }
    Decomposition::new(mults, vec![1; ring.generator_labels().len()])
}

/// `det_E(alpha~) det_E(beta~)^{-1} det_E(gamma~)` for a given lift.
pub fn xi_from_lift(ring: &FamilyRing, lift: &ArLift) -> Result<EndoMatrix> {
    let a = tilde(&decomposition_of(ring, lift.alpha.targets())?, &lift.alpha)?.det_e()?;
    let b = tilde(&decomposition_of(ring, lift.beta.targets())?, &lift.beta)?.det_e()?;
    let c = tilde(&decomposition_of(ring, lift.gamma.targets())?, &lift.gamma)?.det_e()?;
    a.mul(&b.inv()?)?.mul(&c)
}

/// The generator of the subgroup `Xi` attached to `alpha = h * 1_m`.
pub fn xi_generator(ring: &FamilyRing, h: &TruncatedSeries) -> Result<EndoMatrix> {
    xi_from_lift(ring, &ar_lift(ring, h)?)
}

/// Closed forms, computed without the tilde machinery:
/// dual `diag(a^{-1}, a^2)`; cusp
/// `D^{-1} [f, -g(f - gT); -gT^2(f + gT), f D]` with `D = f^2 - g^2 T^2`.
pub fn xi_closed_form(ring: &FamilyRing, h: &TruncatedSeries) -> Result<EndoMatrix> {
    match ring.family() {
        Family::Dual => {
            let a = ring.constant(h.constant_term().clone());
            ring.diag(&a.inv()?, &(&a * &a))
        }
        Family::Cusp => {
            let (f, g) = cusp_split(ring, h);
            let t = ring.t();
            let gt = &g * &t;
            let gt2 = &gt * &t;
            let d = &(&f * &f) - &(&gt * &gt);
            let dinv = d.inv()?;
            let entries = vec![
                &f * &dinv,
                -&(&(&g * &(&f - &gt)) * &dinv),
                -&(&(&gt2 * &(&f + &gt)) * &dinv),
                &(&f * &d) * &dinv,
            ];
            HomMatrix::new(ring.table().clone(), ring.generator_labels(), ring.generator_labels(), entries)
        }
    }
}
