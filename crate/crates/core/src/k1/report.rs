use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::ar_quiver::build_upsilon;
use crate::error::Result;
use crate::intlinalg::{cokernel, is_injective, FgAbelianGroup, IntegerMatrix};
use crate::rings::{Field, HomMatrix, TruncatedSeries};

use super::delta::{lambda, mu, omega, omega_bar, Omega};
use super::family::{Family, FamilyRing};
use super::lift::{ar_lift, cusp_beta_inverse, cusp_split, lift_commutes, ArLift};
use super::sample::{aut_m_units, random_elem, rng, ring_units, SampleMode};
use super::xi::{xi_closed_form, xi_from_lift, xi_generator};

/// A named pass/fail property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self { name: name.into(), passed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiRow {
    /// Multiplier of the automorphism `h 1_m` of the end term.
    pub h: TruncatedSeries,
    pub omega: Omega,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaRow {
    pub unit: TruncatedSeries,
    /// `omega_bar(lambda(unit))`, computed through the matrix route.
    pub image: TruncatedSeries,
}

#[derive(Clone, Debug)]
pub struct K1Report {
    pub family: Family,
    pub field: Field,
    pub precision: usize,
    pub seed: u64,
    pub var: &'static str,
    pub generator_sampling: SampleMode,
    pub unit_sampling: SampleMode,
    pub group: String,
    pub upsilon: IntegerMatrix,
    pub injective: bool,
    pub k0: FgAbelianGroup,
    pub xi_rows: Vec<XiRow>,
    pub lambda_rows: Vec<LambdaRow>,
    pub checks: Vec<Check>,
}

impl K1Report {
    pub fn all_passed(&self) -> bool {
        self.injective && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }
}

/// Computes `K_1(mod R)` for one of the worked families through the
/// explicit isomorphisms, sampling `samples` generators and units (or
/// enumerating them when the space is small).
pub fn k1_compute(family: Family, field: Field, precision: usize, samples: usize, seed: u64) -> Result<K1Report> {
    let ring = FamilyRing::new(family, field, precision)?;
    let upsilon = build_upsilon(&ring.presentation())?;
    let injective = is_injective(&upsilon)?;
    let k0 = cokernel(&upsilon)?;

    let (gens, generator_sampling) = aut_m_units(&ring, samples, seed);
    let (units, unit_sampling) = ring_units(&ring, samples, seed.wrapping_add(1));

    let xi_data: Vec<(XiRow, ArLift, bool)> = gens
        .par_iter()
        .map(|h| {
            let lift = ar_lift(&ring, h)?;
            let xi = xi_from_lift(&ring, &lift)?;
            let closed = xi == xi_closed_form(&ring, h)?;
            Ok((XiRow { h: h.clone(), omega: omega(&ring, &xi)? }, lift, closed))
        })
        .collect::<Result<_>>()?;

    let lambda_rows: Vec<LambdaRow> = units
        .par_iter()
        .map(|r| Ok(LambdaRow { unit: r.clone(), image: omega_bar(&ring, &omega(&ring, &lambda(&ring, r)?)?) }))
        .collect::<Result<_>>()?;

    let mut checks = vec![
        Check::new("lift diagrams commute", all_ok(xi_data.iter().map(|(_, l, _)| lift_commutes(&ring, l)))?),
        Check::new("xi matches closed form", xi_data.iter().all(|(_, _, c)| *c)),
    ];
    let one = ring.series(&[1]);
    let xi_rows: Vec<XiRow> = xi_data.into_iter().map(|(row, _, _)| row).collect();
    let first_components: BTreeSet<String> = xi_rows.iter().map(|r| r.omega.first.to_string()).collect();
    let kstar = field.units().map(|u| u.len());

    match family {
        Family::Dual => {
            checks.push(Check::new(
                "omega(xi_a) = (a^-1, a)",
                all_ok(xi_rows.iter().map(|r| {
                    let a = r.h.constant_term();
                    Ok(r.omega.first == a.inv()? && r.omega.second == ring.constant(a.clone()))
                }))?,
            ));
            checks.push(Check::new(
                "omega(Xi) lies in the kernel of (b, a) -> ba",
                xi_rows.iter().all(|r| omega_bar(&ring, &r.omega).is_one()),
            ));
            if let (Some(n), SampleMode::Exhaustive) = (kstar, generator_sampling) {
                checks.push(Check::new("omega(Xi) is the whole kernel", first_components.len() == n));
            }
            checks.push(Check::new(
                "mu(a+bX) = a^2",
                all_ok(lambda_rows.iter().map(|row| Ok(row.image == mu(&ring, &row.unit)?)))?,
            ));
            checks.push(Check::new(
                "mu factors as r -> pi(r)^2",
                lambda_rows.iter().all(|row| row.image == ring.constant(row.unit.constant_term().pow(2))),
            ));
            if let (Some(elems), SampleMode::Exhaustive) = (field.units(), unit_sampling) {
                let squares: BTreeSet<String> = elems.iter().map(|a| (a * a).to_string()).collect();
                let image: BTreeSet<String> =
                    lambda_rows.iter().map(|row| row.image.constant_term().to_string()).collect();
                checks.push(Check::new("image of mu = squares of k*", squares == image));
            }
            checks.push(Check::new("xi is independent of the lift", dual_lift_independence(&ring, &gens, seed)?));
        }
        Family::Cusp => {
            checks.push(Check::new(
                "beta * beta^-1 = 1 (closed-form inverse)",
                all_ok(gens.iter().map(|h| {
                    let (f, g) = cusp_split(&ring, h);
                    let lift = ar_lift(&ring, h)?;
                    let binv = cusp_beta_inverse(&ring, &f, &g)?;
                    Ok(lift.beta.mul(&binv)?.is_identity() && binv.mul(&lift.beta)?.is_identity())
                }))?,
            ));
            // The displayed xi_h has (1,1) entry f / (f^2 - g^2 T^2), whose
            // constant term is h(0)^-1.
            checks.push(Check::new(
                "omega(xi_h) = (h(0)^-1, 1)",
                all_ok(xi_rows.iter().map(|r| Ok(r.omega.first == r.h.constant_term().inv()? && r.omega.second == one)))?,
            ));
            let covered = cusp_constant_generators(&ring)?;
            checks.push(Check::new("omega(Xi) = k* + {1}", covered));
            checks.push(Check::new(
                "mu is the inclusion",
                all_ok(lambda_rows.iter().map(|row| Ok(row.image == mu(&ring, &row.unit)?)))?,
            ));
        }
    }

    let group = match family {
        Family::Dual => format!("k* = {field}*"),
        Family::Cusp => format!("k[[T]]* truncated at T^{precision}, k = {field}"),
    };
    Ok(K1Report {
        family,
        field,
        precision: ring.precision(),
        seed,
        var: ring.var(),
        generator_sampling,
        unit_sampling,
        group,
        upsilon,
        injective,
        k0,
        xi_rows,
        lambda_rows,
        checks,
    })
}

fn all_ok(mut it: impl Iterator<Item = Result<bool>>) -> Result<bool> {
    it.try_fold(true, |acc, x| Ok(acc && x?))
}

/// Perturbing `beta` by `1 + cX` keeps the diagram commutative and must not
/// change `omega(xi)`.
fn dual_lift_independence(ring: &FamilyRing, gens: &[TruncatedSeries], seed: u64) -> Result<bool> {
    let mut r = rng(seed ^ 0x5eed);
    all_ok(gens.iter().map(|h| {
        let lift = ar_lift(ring, h)?;
        let c = random_elem(ring.field(), &mut r);
        let one_plus_cx = ring.series(&[1]).checked_add(&ring.series(&[0, 1]).scale(&c))?;
        let bump = HomMatrix::diagonal(ring.table().clone(), ring.middle_labels(), vec![one_plus_cx])?;
        let other = ArLift { beta: lift.beta.mul(&bump)?, ..lift.clone() };
        Ok(lift_commutes(ring, &other)? && omega(ring, &xi_from_lift(ring, &other)?)? == omega(ring, &xi_from_lift(ring, &lift)?)?)
    }))
}

/// Constant generators `h = c` already give every first component `c^-1`.
fn cusp_constant_generators(ring: &FamilyRing) -> Result<bool> {
    let Some(units) = ring.field().units() else {
        let c = ring.field().from_ratio(3, 7)?;
        let w = omega(ring, &xi_generator(ring, &ring.constant(c.clone()))?)?;
        return Ok(w.first == c.inv()? && w.second.is_one());
    };
    let mut seen = BTreeSet::new();
    for c in &units {
        let w = omega(ring, &xi_generator(ring, &ring.constant(c.clone()))?)?;
        if !w.second.is_one() {
            return Ok(false);
        }
        seen.insert(w.first.to_string());
    }
    Ok(seen.len() == units.len())
}
