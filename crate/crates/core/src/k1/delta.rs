use crate::error::{Error, Result};
use crate::rings::{EndoMatrix, FieldElem, TruncatedSeries};

use super::family::{Family, FamilyRing, MAXIMAL};

/// `delta(a) = ([a_11(0)], a_11 a_22 - a_21 a_12)` in `k* + Aut(m)`, with the
/// second component as a multiplier on `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Delta {
    pub residue: FieldElem,
    pub det: TruncatedSeries,
}

impl Delta {
    pub fn mul(&self, other: &Self) -> Delta {
        Delta { residue: &self.residue * &other.residue, det: &self.det * &other.det }
    }
}

/// Image in `k* + k*` (dual) or `k* + k[[T]]*` (cusp).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Omega {
    pub first: FieldElem,
    pub second: TruncatedSeries,
}

fn check_shape(ring: &FamilyRing, a: &EndoMatrix) -> Result<()> {
    if a.targets() != ring.generator_labels() || a.sources() != ring.generator_labels() {
        return Err(Error::DimensionMismatch("expected an endomorphism of R + m".into()));
    }
    Ok(())
}

pub fn delta(ring: &FamilyRing, a: &EndoMatrix) -> Result<Delta> {
    check_shape(ring, a)?;
    if !a.has_unit_diagonal() {
        return Err(Error::NotInvertible(format!("{} has a non-unit diagonal entry", a.display_with(ring.var()))));
    }
    let det = &(a.get(0, 0) * a.get(1, 1)) - &(a.get(1, 0) * a.get(0, 1));
    let det = ring.table().tag(MAXIMAL, MAXIMAL).normalize(&det)?;
    Ok(Delta { residue: a.get(0, 0).constant_term().clone(), det })
}

/// Composes `delta` with `Aut(m) -> k*` (dual, via `a 1_m <-> a`) or with
/// `chi^{-1}: Aut(m) -> k[[T]]*` (cusp, the identity on multipliers).
pub fn omega(ring: &FamilyRing, a: &EndoMatrix) -> Result<Omega> {
    let d = delta(ring, a)?;
    let second = match ring.family() {
        Family::Dual => ring.constant(d.det.constant_term().clone()),
        Family::Cusp => d.det,
    };
    Ok(Omega { first: d.residue, second })
}

/// Final identification of `(k* + second)/omega(Xi)`:
/// dual `(b, a) -> ba`, cusp `(c, s) -> s`.
pub fn omega_bar(ring: &FamilyRing, w: &Omega) -> TruncatedSeries {
    match ring.family() {
        Family::Dual => w.second.scale(&w.first),
        Family::Cusp => w.second.clone(),
    }
}

/// `lambda(r) = diag(r 1_R, 1_m)`.
pub fn lambda(ring: &FamilyRing, r: &TruncatedSeries) -> Result<EndoMatrix> {
    if !ring.is_ring_unit(r) {
        return Err(Error::NotAUnit(r.display_with(ring.var())));
    }
    ring.diag(r, &ring.series(&[1]))
}

/// The expected map on units: dual `a + bX -> a^2`, cusp the inclusion.
pub fn mu(ring: &FamilyRing, r: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !ring.is_ring_unit(r) {
        return Err(Error::NotAUnit(r.display_with(ring.var())));
    }
    Ok(match ring.family() {
        Family::Dual => {
            let a = r.constant_term();
            ring.constant(a * a)
        }
        Family::Cusp => r.clone(),
    })
}

/// Witness for surjectivity of `delta`: `diag(r 1_R, r^{-1} phi)`.
pub fn delta_preimage(ring: &FamilyRing, r: &TruncatedSeries, phi: &TruncatedSeries) -> Result<EndoMatrix> {
    ring.diag(r, &(&r.inv()? * phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k1::xi::xi_generator;
    use crate::rings::Field;

    #[test]
    fn identity_maps_to_one() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 8).unwrap();
        let d = delta(&ring, &ring.identity()).unwrap();
        assert!(d.residue.is_one() && d.det.is_one());
    }

    #[test]
    fn dual_omega_of_xi() {
        let ring = FamilyRing::new(Family::Dual, Field::prime(5).unwrap(), 2).unwrap();
        let w = omega(&ring, &xi_generator(&ring, &ring.series(&[2, 1])).unwrap()).unwrap();
        assert_eq!(w.first, Field::prime(5).unwrap().from_i64(3));
        assert_eq!(w.second, ring.series(&[2]));
        assert!(omega_bar(&ring, &w).is_one());
    }

    #[test]
    fn dual_lambda_row() {
        let ring = FamilyRing::new(Family::Dual, Field::prime(5).unwrap(), 2).unwrap();
        let r = ring.series(&[2, 3]);
        let img = omega_bar(&ring, &omega(&ring, &lambda(&ring, &r).unwrap()).unwrap());
        assert_eq!(img, ring.series(&[4]));
        assert_eq!(img, mu(&ring, &r).unwrap());
    }

    #[test]
    fn surjectivity_witness() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(7).unwrap(), 6).unwrap();
        let r = ring.series(&[3, 0, 2]);
        let phi = ring.series(&[5, 1, 1]);
        let d = delta(&ring, &delta_preimage(&ring, &r, &phi).unwrap()).unwrap();
        assert_eq!(d.residue, Field::prime(7).unwrap().from_i64(3));
        assert_eq!(d.det, phi);
    }
}
