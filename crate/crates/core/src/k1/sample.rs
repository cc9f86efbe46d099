use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rings::{EndoMatrix, Field, FieldElem, HomMatrix, Support, TruncatedSeries};

use super::family::{FamilyRing, MAXIMAL};

/// Spaces at most this large are enumerated instead of sampled.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    Exhaustive,
    Random { seed: u64 },
}

impl fmt::Display for SampleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleMode::Exhaustive => write!(f, "exhaustive"),
            SampleMode::Random { seed } => write!(f, "random (seed {seed})"),
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over `F_p`; over `Q`, numerator in `[-9, 9]` and denominator in `[1, 9]`.
pub fn random_elem(field: Field, rng: &mut impl Rng) -> FieldElem {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        Field::Rational => FieldElem::rational(rng.gen_range(-9..=9), rng.gen_range(1..=9)),
    }
}

pub fn random_nonzero(field: Field, rng: &mut impl Rng) -> FieldElem {
    loop {
        let x = random_elem(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random multiplier with coefficients only where `support` allows them.
pub fn random_series(ring: &FamilyRing, support: Support, rng: &mut impl Rng) -> TruncatedSeries {
    let field = ring.field();
    let coeffs = (0..ring.precision())
        .map(|e| if support.allows(e) { random_elem(field, rng) } else { field.zero() })
        .collect();
    TruncatedSeries::new(field, ring.precision(), coeffs, Support::FULL).expect("precision validated")
}

fn random_unit_with(ring: &FamilyRing, support: Support, rng: &mut impl Rng) -> TruncatedSeries {
    let mut coeffs = random_series(ring, support, rng).coeffs().to_vec();
    coeffs[0] = random_nonzero(ring.field(), rng);
    TruncatedSeries::new(ring.field(), ring.precision(), coeffs, Support::FULL).expect("precision validated")
}

/// A random unit of `R`.
pub fn random_ring_unit(ring: &FamilyRing, rng: &mut impl Rng) -> TruncatedSeries {
    random_unit_with(ring, ring.ring_support(), rng)
}

/// A random unit of `k[[T]]/(T^N)`.
pub fn random_series_unit(ring: &FamilyRing, rng: &mut impl Rng) -> TruncatedSeries {
    random_unit_with(ring, Support::FULL, rng)
}

/// A random automorphism of `R + m` respecting every Hom constraint.
pub fn random_automorphism(ring: &FamilyRing, rng: &mut impl Rng) -> EndoMatrix {
    let labels = ring.generator_labels();
    let table = ring.table().clone();
    let mut entries = Vec::with_capacity(labels.len() * labels.len());
    for &t in &labels {
        for &s in &labels {
            let support = table.tag(t, s).support;
            entries.push(if t == s { random_unit_with(ring, support, rng) } else { random_series(ring, support, rng) });
        }
    }
    HomMatrix::new(table, labels.clone(), labels, entries).expect("entries drawn inside their supports")
}

/// Every unit whose coefficients live in `support`, or `None` when the
/// field is infinite or there are more than [`EXHAUSTIVE_LIMIT`].
pub fn enumerate_units(ring: &FamilyRing, support: Support) -> Option<Vec<TruncatedSeries>> {
    let field = ring.field();
    let elems = field.elements()?;
    let p = elems.len() as u64;
    let slots: Vec<usize> = (1..ring.precision()).filter(|&e| support.allows(e)).collect();
    let count = (p - 1).checked_mul(p.checked_pow(slots.len() as u32)?)?;
    if count > EXHAUSTIVE_LIMIT {
        return None;
    }
    let mut out = Vec::with_capacity(count as usize);
    for c0 in elems.iter().filter(|x| !x.is_zero()) {
        for mut code in 0..p.pow(slots.len() as u32) {
            let mut coeffs = vec![field.zero(); ring.precision()];
            coeffs[0] = c0.clone();
            for &e in &slots {
                coeffs[e] = elems[(code % p) as usize].clone();
                code /= p;
            }
            out.push(TruncatedSeries::new(field, ring.precision(), coeffs, Support::FULL).expect("precision validated"));
        }
    }
    Some(out)
}

/// All units of `R` when feasible, otherwise `count` seeded random ones.
pub fn ring_units(ring: &FamilyRing, count: usize, seed: u64) -> (Vec<TruncatedSeries>, SampleMode) {
    match enumerate_units(ring, ring.ring_support()) {
        Some(all) => (all, SampleMode::Exhaustive),
        None => {
            let mut r = rng(seed);
            ((0..count).map(|_| random_ring_unit(ring, &mut r)).collect(), SampleMode::Random { seed })
        }
    }
}

/// Multipliers `h` of automorphisms `h 1_m`: units of `k` for the dual
/// numbers (the linear part acts trivially), units of `k[[T]]` for the cusp.
pub fn aut_m_units(ring: &FamilyRing, count: usize, seed: u64) -> (Vec<TruncatedSeries>, SampleMode) {
    let support = ring.table().tag(MAXIMAL, MAXIMAL).support;
    match enumerate_units(ring, support) {
        Some(all) => (all, SampleMode::Exhaustive),
        None => {
            let mut r = rng(seed);
            ((0..count).map(|_| random_unit_with(ring, support, &mut r)).collect(), SampleMode::Random { seed })
        }
    }
}

pub fn automorphisms(ring: &FamilyRing, count: usize, seed: u64) -> Vec<EndoMatrix> {
    let mut r = rng(seed);
    (0..count).map(|_| random_automorphism(ring, &mut r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k1::family::Family;

    #[test]
    fn dual_units_are_exhaustive() {
        let ring = FamilyRing::new(Family::Dual, Field::prime(7).unwrap(), 2).unwrap();
        let (units, mode) = ring_units(&ring, 5, 0);
        assert_eq!(mode, SampleMode::Exhaustive);
        assert_eq!(units.len(), 42);
        let (gens, _) = aut_m_units(&ring, 5, 0);
        assert_eq!(gens.len(), 6);
    }

    #[test]
    fn cusp_units_are_sampled() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 8).unwrap();
        let (units, mode) = ring_units(&ring, 20, 3);
        assert_eq!(mode, SampleMode::Random { seed: 3 });
        assert!(units.iter().all(|u| ring.is_ring_unit(u)));
        assert_eq!(units, ring_units(&ring, 20, 3).0);
    }

    #[test]
    fn automorphisms_are_invertible() {
        let ring = FamilyRing::new(Family::Cusp, Field::rational(), 6).unwrap();
        for a in automorphisms(&ring, 10, 1) {
            assert!(a.inv().is_ok());
        }
    }
}
