use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

use super::ring::FiniteRing;

/// Largest group whose commutators are enumerated pairwise.
pub const GROUP_SIZE_LIMIT: usize = 10_000;
/// Largest ring whose element pairs are enumerated for `Ker theta`.
pub const PAIR_RING_LIMIT: u64 = 5_000;

/// Direction in which ring elements are enumerated; results must not
/// depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Enumeration {
    #[default]
    Forward,
    Reversed,
}

impl Enumeration {
    fn elements(self, ring: &FiniteRing) -> Vec<u64> {
        match self {
            Enumeration::Forward => ring.elements().collect(),
            Enumeration::Reversed => ring.elements().rev().collect(),
        }
    }
}

/// A subgroup of the unit group of a finite ring, as an explicit set of
/// element codes; the operation is ring multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    ring: FiniteRing,
    elements: BTreeSet<u64>,
}

impl FiniteGroup {
    /// Validates closure, identity and inverses.
    pub fn new(ring: FiniteRing, elements: BTreeSet<u64>) -> Result<Self> {
        let g = Self { ring, elements };
        g.audit()?;
        Ok(g)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn elements(&self) -> &BTreeSet<u64> {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.contains(&x)
    }

    pub fn identity(&self) -> u64 {
        self.ring.one()
    }

    pub fn op(&self, a: u64, b: u64) -> u64 {
        self.ring.mul(a, b)
    }

    pub fn inverse(&self, a: u64) -> u64 {
        self.ring.inverse(a).expect("group elements are units")
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().all(|&a| self.elements.iter().all(|&b| self.op(a, b) == self.op(b, a)))
    }

    /// Closure under products and inverses, identity present.
    pub fn audit(&self) -> Result<()> {
        if !self.contains(self.identity()) {
            return Err(Error::Internal("group lacks the identity".into()));
        }
        for &a in &self.elements {
            match self.ring.inverse(a) {
                Some(b) if self.contains(b) => {}
                _ => return Err(Error::Internal(format!("element {a} has no inverse in the group"))),
            }
            if let Some(&b) = self.elements.iter().find(|&&b| !self.contains(self.op(a, b))) {
                return Err(Error::Internal(format!("product of {a} and {b} leaves the group")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subgroup of order {} in ({})*", self.order(), self.ring)
    }
}

/// Subgroup generated by `gens`, by breadth-first right multiplication
/// from the identity; in a finite group this also yields inverses.
pub fn generate(ring: &FiniteRing, gens: impl IntoIterator<Item = u64>) -> Result<FiniteGroup> {
    let gens: BTreeSet<u64> = gens.into_iter().collect();
    let one = ring.one();
    let mut seen = BTreeSet::from([one]);
    let mut queue = VecDeque::from([one]);
    while let Some(x) = queue.pop_front() {
        for &g in &gens {
            let y = ring.mul(x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    FiniteGroup::new(ring.clone(), seen)
}

pub fn unit_group(ring: &FiniteRing) -> Result<FiniteGroup> {
    unit_group_ordered(ring, Enumeration::Forward)
}

pub fn unit_group_ordered(ring: &FiniteRing, order: Enumeration) -> Result<FiniteGroup> {
    let units = order.elements(ring).into_iter().filter(|&x| ring.inverse(x).is_some()).collect();
    FiniteGroup::new(ring.clone(), units)
}

pub fn commutator_subgroup(g: &FiniteGroup) -> Result<FiniteGroup> {
    commutator_subgroup_ordered(g, Enumeration::Forward)
}

pub fn commutator_subgroup_ordered(g: &FiniteGroup, order: Enumeration) -> Result<FiniteGroup> {
    if g.order() > GROUP_SIZE_LIMIT {
        return Err(Error::SizeBound(format!("group of order {} exceeds {GROUP_SIZE_LIMIT}", g.order())));
    }
    let mut elems: Vec<u64> = g.elements().iter().copied().collect();
    if order == Enumeration::Reversed {
        elems.reverse();
    }
    let inv: Vec<u64> = elems.iter().map(|&x| g.inverse(x)).collect();
    let mut comms = BTreeSet::new();
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            comms.insert(g.op(g.op(x, y), g.op(inv[i], inv[j])));
        }
    }
    generate(g.ring(), comms)
}

/// Subgroup of `A*` generated by `(1 + ab)(1 + ba)^{-1}` over all pairs
/// with `1 + ab` a unit.
pub fn ker_theta(ring: &FiniteRing) -> Result<FiniteGroup> {
    ker_theta_ordered(ring, Enumeration::Forward)
}

pub fn ker_theta_ordered(ring: &FiniteRing, order: Enumeration) -> Result<FiniteGroup> {
    if ring.size() > PAIR_RING_LIMIT {
        return Err(Error::SizeBound(format!("{ring} has more than {PAIR_RING_LIMIT} elements")));
    }
    let one = ring.one();
    let elems = order.elements(ring);
    let inverse: Vec<Option<u64>> = ring.elements().map(|x| ring.inverse(x)).collect();
    let mut gens = BTreeSet::new();
    for &a in &elems {
        for &b in &elems {
            let Some(u) = inverse[ring.add(one, ring.mul(b, a)) as usize] else { continue };
            let x = ring.add(one, ring.mul(a, b));
            if inverse[x as usize].is_none() {
                return Err(Error::Internal(format!("1+ab is not a unit while 1+ba is, in {ring}")));
            }
            gens.insert(ring.mul(x, u));
        }
    }
    generate(ring, gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Strict,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => write!(f, "equal"),
            Verdict::Strict => write!(f, "strict"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VasersteinReport {
    pub ring: FiniteRing,
    pub units: usize,
    pub commutators: usize,
    pub ker_theta: usize,
    pub verdict: Verdict,
}

/// Compares `[A*, A*]` with `Ker theta_A`. The first is always contained in
/// the second; a violation is reported as an internal error.
pub fn vaserstein_check(ring: &FiniteRing) -> Result<VasersteinReport> {
    vaserstein_check_ordered(ring, Enumeration::Forward)
}

pub fn vaserstein_check_ordered(ring: &FiniteRing, order: Enumeration) -> Result<VasersteinReport> {
    let units = unit_group_ordered(ring, order)?;
    let comm = commutator_subgroup_ordered(&units, order)?;
    let ker = ker_theta_ordered(ring, order)?;
    if !comm.is_subset_of(&ker) {
        return Err(Error::Internal(format!("[A*, A*] is not contained in Ker theta for {ring}")));
    }
    let verdict = if comm.order() == ker.order() { Verdict::Equal } else { Verdict::Strict };
    Ok(VasersteinReport {
        ring: ring.clone(),
        units: units.order(),
        commutators: comm.order(),
        ker_theta: ker.order(),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_units_are_cyclic_of_order_four() {
        let f5: FiniteRing = "F5".parse().unwrap();
        let u = unit_group(&f5).unwrap();
        assert_eq!(u.order(), 4);
        assert!(u.is_abelian());
        assert_eq!(generate(&f5, [2]).unwrap().order(), 4);
        assert_eq!(commutator_subgroup(&u).unwrap().order(), 1);
        assert_eq!(ker_theta(&f5).unwrap().order(), 1);
    }

    #[test]
    fn m2f2_is_strict() {
        let r = vaserstein_check(&"M2F2".parse().unwrap()).unwrap();
        assert_eq!((r.units, r.commutators, r.ker_theta, r.verdict), (6, 3, 6, Verdict::Strict));
    }

    #[test]
    fn m2f3_is_equal() {
        let r = vaserstein_check(&"M2F3".parse().unwrap()).unwrap();
        assert_eq!((r.units, r.commutators, r.ker_theta, r.verdict), (48, 24, 24, Verdict::Equal));
    }

    #[test]
    fn reversed_enumeration_agrees() {
        let a: FiniteRing = "M2F2".parse().unwrap();
        let u = unit_group(&a).unwrap();
        assert_eq!(ker_theta(&a).unwrap(), ker_theta_ordered(&a, Enumeration::Reversed).unwrap());
        assert_eq!(
            commutator_subgroup(&u).unwrap(),
            commutator_subgroup_ordered(&u, Enumeration::Reversed).unwrap()
        );
    }

    #[test]
    fn non_units_are_rejected() {
        let a: FiniteRing = "M2F2".parse().unwrap();
        assert!(FiniteGroup::new(a.clone(), BTreeSet::from([a.one(), 0])).is_err());
    }
}
