use crate::error::{Error, Result};
use crate::rings::{EndoMatrix, HomMatrix, TruncatedSeries};

use super::family::{Family, FamilyRing};

/// Automorphisms of the three terms of the AR sequence `0 -> m -> X -> m -> 0`
/// making both squares commute: `alpha` on the end term, `beta` on the
/// middle term, `gamma` on the translate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArLift {
    pub alpha: EndoMatrix,
    pub beta: EndoMatrix,
    pub gamma: EndoMatrix,
}

/// Splits a unit `h` of `k[[T]]` as `f + gT` with `f, g` in the cusp ring.
///
/// The choice `g = h_1` (a constant) is canonical: every coefficient of
/// `h` except the linear one goes to `f`.
pub fn cusp_split(ring: &FamilyRing, h: &TruncatedSeries) -> (TruncatedSeries, TruncatedSeries) {
    let g = ring.constant(h.coeff(1));
    let f = h - &(&g * &ring.t());
    (f, g)
}

/// Lift of `alpha = h * 1_m`.
pub fn ar_lift(ring: &FamilyRing, h: &TruncatedSeries) -> Result<ArLift> {
    match ring.family() {
        Family::Dual => {
            let alpha = ring.aut_m(h)?;
            let a = alpha.get(0, 0).clone();
            let beta = HomMatrix::diagonal(ring.table().clone(), ring.middle_labels(), vec![a.clone()])?;
            let gamma = ring.aut_m(&a)?;
            verify(ring, ArLift { alpha, beta, gamma })
        }
        Family::Cusp => {
            let (f, g) = cusp_split(ring, h);
            ar_lift_parts(ring, &f, &g)
        }
    }
}

/// Cusp lift for `alpha = (f + gT) 1_m` with `f, g` in the ring:
/// `beta = [f, g; gT^2, f]`, `gamma = (f - gT) 1_m`.
pub fn ar_lift_parts(ring: &FamilyRing, f: &TruncatedSeries, g: &TruncatedSeries) -> Result<ArLift> {
    if ring.family() != Family::Cusp {
        return Err(Error::Unsupported("explicit (f, g) lifts are for the cusp".into()));
    }
    if !ring.is_ring_element(f) || !ring.is_ring_element(g) {
        return Err(Error::SupportViolation { exponent: 1, support: "semigroup".into() });
    }
    let t = ring.t();
    let gt = g * &t;
    let alpha = ring.aut_m(&(f + &gt))?;
    let beta = HomMatrix::new(
        ring.table().clone(),
        ring.middle_labels(),
        ring.middle_labels(),
        vec![f.clone(), g.clone(), &gt * &t, f.clone()],
    )?;
    let gamma = ring.aut_m(&(f - &gt))?;
    verify(ring, ArLift { alpha, beta, gamma })
}

fn verify(ring: &FamilyRing, lift: ArLift) -> Result<ArLift> {
    if !lift_commutes(ring, &lift)? {
        return Err(Error::Internal(format!("{} lift does not commute", ring.family())));
    }
    Ok(lift)
}

/// Both squares of the lifted diagram commute exactly.
pub fn lift_commutes(ring: &FamilyRing, lift: &ArLift) -> Result<bool> {
    let (inc, proj) = ring.ar_maps();
    let left = lift.beta.mul(&inc)? == inc.mul(&lift.gamma)?;
    let right = proj.mul(&lift.beta)? == lift.alpha.mul(&proj)?;
    Ok(left && right)
}

/// Checks `beta` against the closed-form inverse `D^{-1} [f, -g; -gT^2, f]`
/// with `D = f^2 - g^2 T^2`.
pub fn cusp_beta_inverse(ring: &FamilyRing, f: &TruncatedSeries, g: &TruncatedSeries) -> Result<EndoMatrix> {
    let t2 = ring.series(&[0, 0, 1]);
    let d = &(f * f) - &(&(g * g) * &t2);
    let dinv = d.inv()?;
    HomMatrix::new(
        ring.table().clone(),
        ring.middle_labels(),
        ring.middle_labels(),
        vec![f * &dinv, -&(g * &dinv), -&(&(g * &t2) * &dinv), f * &dinv],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Field;

    #[test]
    fn dual_lift_is_scalar() {
        let ring = FamilyRing::new(Family::Dual, Field::prime(5).unwrap(), 2).unwrap();
        let lift = ar_lift(&ring, &ring.series(&[3, 1])).unwrap();
        assert_eq!(lift.beta.get(0, 0), &ring.series(&[3]));
        assert_eq!(lift.gamma.get(0, 0), &ring.series(&[3]));
    }

    #[test]
    fn cusp_identity_lift() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 8).unwrap();
        let lift = ar_lift(&ring, &ring.series(&[1])).unwrap();
        assert!(lift.beta.is_identity());
        assert!(lift.gamma.is_identity());
    }

    #[test]
    fn cusp_lift_and_inverse() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 8).unwrap();
        let h = ring.series(&[2, 3, 1, 4, 0, 1]);
        let (f, g) = cusp_split(&ring, &h);
        assert_eq!(&f + &(&g * &ring.t()), h);
        let lift = ar_lift(&ring, &h).unwrap();
        let binv = cusp_beta_inverse(&ring, &f, &g).unwrap();
        assert!(lift.beta.mul(&binv).unwrap().is_identity());
        assert!(binv.mul(&lift.beta).unwrap().is_identity());
    }

    #[test]
    fn non_ring_parts_rejected() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 8).unwrap();
        assert!(ar_lift_parts(&ring, &ring.series(&[1, 1]), &ring.series(&[0])).is_err());
    }
}
