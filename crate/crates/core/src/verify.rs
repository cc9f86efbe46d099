//! The invariant suite behind `kcm verify`: every module's properties,
//! evaluated on seeded samples, one pass/fail line per property.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::ar_quiver::{
    build_upsilon, cartan_matrix, cusp_presentation, dual_numbers_presentation, dynkin_upsilon,
    e6_surface_presentation, k0_group, ArPresentation, ArSequence, DynkinType,
};
use crate::error::Result;
use crate::intlinalg::{cokernel, is_injective, smith_normal_form, IntegerMatrix};
use crate::k1::{
    self, commutator_identity_check, delta, delta_preimage, elementary_factorization, k1_compute, lift_commutes,
    multiply_word, random_automorphism, random_ring_unit, random_series,
    random_series_unit, rng, tilde, whitehead_factorization, Decomposition, Factor, Family, FamilyRing,
};
use crate::rings::{cusp_ring_member, EndoMatrix, Field, HomMatrix, Support, TruncatedSeries};
use crate::semilocal::{
    commutator_subgroup, commutator_subgroup_ordered, ker_theta, ker_theta_ordered, unit_group, vaserstein_check,
    Enumeration, FiniteRing, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Property {
    pub module: &'static str,
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub field: Field,
    pub precision: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { field: Field::prime(5).expect("5 is an odd prime"), precision: 8, samples: 100, seed: 0 }
    }
}

struct Suite {
    props: Vec<Property>,
}

impl Suite {
    fn record(&mut self, module: &'static str, name: impl Into<String>, outcome: Result<bool>) {
        self.props.push(Property { module, name: name.into(), passed: matches!(outcome, Ok(true)) });
    }
}

fn all(it: impl IntoIterator<Item = Result<bool>>) -> Result<bool> {
    it.into_iter().try_fold(true, |acc, x| Ok(acc && x?))
}

pub fn verify_all(cfg: &VerifyConfig) -> Result<Vec<Property>> {
    let mut s = Suite { props: Vec::new() };
    intlinalg_props(&mut s, cfg);
    ar_quiver_props(&mut s, cfg);
    rings_props(&mut s, cfg)?;
    k1_props(&mut s, cfg)?;
    semilocal_props(&mut s);
    Ok(s.props)
}

fn random_int_matrix(r: &mut impl Rng, max_dim: usize) -> IntegerMatrix {
    let (rows, cols) = (r.gen_range(1..=max_dim), r.gen_range(1..=max_dim));
    let entries = (0..rows * cols).map(|_| BigInt::from(r.gen_range(-5..=5))).collect();
    IntegerMatrix::new(rows, cols, entries).expect("nonempty")
}

/// gcd of all maximal minors; equals the cokernel order when it is finite.
fn maximal_minor_gcd(m: &IntegerMatrix) -> Result<BigInt> {
    let (r, c) = (m.rows(), m.cols());
    let all_rows: Vec<usize> = (0..r).collect();
    let mut g = BigInt::zero();
    for mask in 0u32..(1 << c) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let cols: Vec<usize> = (0..c).filter(|&j| mask & (1 << j) != 0).collect();
        g = g.gcd(&m.select(&all_rows, &cols)?.determinant()?);
    }
    Ok(g)
}

fn intlinalg_props(s: &mut Suite, cfg: &VerifyConfig) {
    let mut r = rng(cfg.seed);
    let mats: Vec<IntegerMatrix> = (0..cfg.samples).map(|_| random_int_matrix(&mut r, 4)).collect();
    s.record(
        "intlinalg",
        "smith form: u m v = d, u and v unimodular, d_i | d_(i+1)",
        all(mats.iter().map(|m| {
            let f = smith_normal_form(m)?;
            let d = f.diagonal();
            let chain = d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
            Ok(f.u.mul(m)?.mul(&f.v)? == f.d
                && f.u.determinant()?.abs() == BigInt::from(1)
                && f.v.determinant()?.abs() == BigInt::from(1)
                && d.iter().all(|x| !x.is_negative())
                && chain)
        })),
    );
    s.record(
        "intlinalg",
        "cokernel invariant under row/column permutation and sign changes",
        all(mats.iter().map(|m| {
            let mut rows: Vec<usize> = (0..m.rows()).collect();
            let mut cols: Vec<usize> = (0..m.cols()).collect();
            rows.shuffle(&mut r);
            cols.shuffle(&mut r);
            let mut p = m.select(&rows, &cols)?;
            let flip_row = r.gen_range(0..p.rows());
            let flip_col = r.gen_range(0..p.cols());
            for j in 0..p.cols() {
                p[(flip_row, j)] = -p[(flip_row, j)].clone();
            }
            for i in 0..p.rows() {
                p[(i, flip_col)] = -p[(i, flip_col)].clone();
            }
            Ok(cokernel(&p)? == cokernel(m)?)
        })),
    );
    s.record(
        "intlinalg",
        "finite cokernel order = gcd of maximal minors",
        all(mats.iter().filter(|m| m.rows() <= m.cols()).map(|m| {
            let g = maximal_minor_gcd(m)?;
            let coker = cokernel(m)?;
            Ok(match coker.order() {
                Some(o) => o == g,
                None => g.is_zero(),
            })
        })),
    );
    s.record(
        "intlinalg",
        "injective iff rank equals column count",
        all(mats.iter().map(|m| {
            let rank = smith_normal_form(m)?.rank();
            Ok(is_injective(m)? == (rank == m.cols()) && rank <= m.rows().min(m.cols()))
        })),
    );
}

fn random_presentation(r: &mut impl Rng) -> ArPresentation {
    let t = r.gen_range(1..=5);
    let seqs = (1..=t)
        .map(|j| ArSequence::new(j, r.gen_range(1..=t), (0..=t).map(|_| r.gen_range(0..3)).collect()))
        .collect();
    ArPresentation::new(t + 1, seqs).expect("random presentation is well formed")
}

fn ade_types() -> Vec<DynkinType> {
    let mut v: Vec<DynkinType> = (1..=8).map(DynkinType::A).collect();
    v.extend((4..=8).map(DynkinType::D));
    v.extend([DynkinType::E6, DynkinType::E7, DynkinType::E8]);
    v
}

fn ar_quiver_props(s: &mut Suite, cfg: &VerifyConfig) {
    let mut r = rng(cfg.seed ^ 1);
    let mut pres: Vec<ArPresentation> = vec![e6_surface_presentation(), dual_numbers_presentation(), cusp_presentation()];
    pres.extend((0..cfg.samples.min(50)).map(|_| random_presentation(&mut r)));
    s.record(
        "ar-quiver",
        "column sums equal 2 - sum of middle multiplicities",
        all(pres.iter().map(|p| {
            let m = build_upsilon(p)?;
            Ok(p.sequences().iter().all(|seq| {
                let col: BigInt = (0..m.rows()).map(|i| m.get(i, seq.end - 1).clone()).sum();
                col == BigInt::from(2) - BigInt::from(seq.middle.iter().sum::<u64>())
            }))
        })),
    );
    s.record(
        "ar-quiver",
        "relabeling non-free modules leaves K0 unchanged",
        all(pres.iter().map(|p| {
            let mut perm: Vec<usize> = (1..=p.t()).collect();
            perm.shuffle(&mut r);
            Ok(k0_group(&p.relabel(&perm)?)? == k0_group(p)?)
        })),
    );
    s.record(
        "ar-quiver",
        "ADE: lower block is the Cartan matrix, upsilon injective",
        all(ade_types().into_iter().map(|ty| {
            let u = dynkin_upsilon(ty)?;
            let n = ty.rank();
            let lower = u.select(&(1..=n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>())?;
            let cartan = cartan_matrix(ty)?;
            let symmetric = cartan.transpose() == cartan;
            let entries_ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let x = cartan.get(i, j);
                    if i == j {
                        *x == BigInt::from(2)
                    } else {
                        x.is_zero() || *x == BigInt::from(-1)
                    }
                })
            });
            Ok(lower == cartan && symmetric && entries_ok && is_injective(&u)?)
        })),
    );
    s.record(
        "ar-quiver",
        "Cartan determinants: n+1 for A_n, 4 for D_n, 3/2/1 for E6/E7/E8",
        all(ade_types().into_iter().map(|ty| {
            let expected = match ty {
                DynkinType::A(n) => n as i64 + 1,
                DynkinType::D(_) => 4,
                DynkinType::E6 => 3,
                DynkinType::E7 => 2,
                DynkinType::E8 => 1,
            };
            Ok(cartan_matrix(ty)?.determinant()? == BigInt::from(expected))
        })),
    );
}

/// A unit of a finite ring has some power equal to the identity; a
/// non-unit never does. Used as the brute-force invertibility oracle.
pub fn invertible_by_powers(a: &EndoMatrix) -> Result<bool> {
    let mut seen = HashSet::new();
    let mut x = a.clone();
    loop {
        if x.is_identity() {
            return Ok(true);
        }
        let key: Vec<TruncatedSeries> =
            (0..x.rows()).flat_map(|i| (0..x.cols()).map(move |j| (i, j))).map(|(i, j)| x.get(i, j).clone()).collect();
        if !seen.insert(key) {
            return Ok(false);
        }
        x = x.mul(a)?;
    }
}

fn rings_props(s: &mut Suite, cfg: &VerifyConfig) -> Result<()> {
    let ring = FamilyRing::new(Family::Cusp, cfg.field, cfg.precision)?;
    let mut r = rng(cfg.seed ^ 2);
    let triples: Vec<[TruncatedSeries; 3]> =
        (0..cfg.samples).map(|_| [0; 3].map(|_| random_series(&ring, Support::FULL, &mut r))).collect();
    s.record(
        "rings",
        "series ring axioms: associativity, distributivity, commutativity",
        Ok(triples.iter().all(|[a, b, c]| {
            &(a * b) * c == a * &(b * c) && a * &(b + c) == &(a * b) + &(a * c) && a * b == b * a && a + b == b + a
        })),
    );
    s.record(
        "rings",
        "unit iff c0 != 0, inverse is two-sided",
        all(triples.iter().map(|[a, _, _]| {
            if a.constant_term().is_zero() {
                return Ok(a.inv().is_err() && !a.is_unit());
            }
            let b = a.inv()?;
            Ok(a.is_unit() && (a * &b).is_one() && (&b * a).is_one())
        })),
    );
    let semis: Vec<TruncatedSeries> =
        (0..cfg.samples).map(|_| random_series(&ring, Support::SEMIGROUP, &mut r)).collect();
    let ideals: Vec<TruncatedSeries> = (0..cfg.samples).map(|_| random_series(&ring, Support::IDEAL, &mut r)).collect();
    s.record(
        "rings",
        "cusp ring closed under + and *",
        Ok(semis.windows(2).all(|w| cusp_ring_member(&(&w[0] + &w[1])) && cusp_ring_member(&(&w[0] * &w[1])))),
    );
    s.record(
        "rings",
        "ideal support closed under multiplication by full and semigroup series",
        Ok(ideals.iter().zip(&triples).zip(&semis).all(|((x, [h, _, _]), f)| {
            (h * x).clone().with_support(Support::IDEAL).is_ok() && (f * x).clone().with_support(Support::IDEAL).is_ok()
        })),
    );
    let small = FamilyRing::new(Family::Cusp, Field::prime(3)?, 4)?;
    let mats: Vec<EndoMatrix> = (0..cfg.samples)
        .map(|_| {
            let labels = small.generator_labels();
            let table = small.table().clone();
            let entries = labels
                .iter()
                .flat_map(|&t| labels.iter().map(move |&s| (t, s)))
                .map(|(t, s)| random_series(&small, table.tag(t, s).support, &mut r))
                .collect();
            HomMatrix::new(table.clone(), labels.clone(), labels, entries)
        })
        .collect::<Result<_>>()?;
    s.record(
        "rings",
        "invertible iff unit diagonal (brute force, N = 4 over F3)",
        all(mats.iter().map(|a| Ok(invertible_by_powers(a)? == a.has_unit_diagonal() && a.inv().is_ok() == a.has_unit_diagonal()))),
    );
    Ok(())
}

fn k1_props(s: &mut Suite, cfg: &VerifyConfig) -> Result<()> {
    for family in [Family::Dual, Family::Cusp] {
        let ring = FamilyRing::new(family, cfg.field, cfg.precision)?;
        let name = |p: &str| format!("{family}: {p}");
        let mut r = rng(cfg.seed ^ 3);
        let pairs: Vec<(EndoMatrix, EndoMatrix)> = (0..cfg.samples)
            .map(|_| (random_automorphism(&ring, &mut r), random_automorphism(&ring, &mut r)))
            .collect();

        let x = Decomposition::new(vec![2, 1], vec![1, 1])?;
        let xl = x.labels();
        s.record(
            "k1",
            name("tilde is multiplicative and tilde(1) = 1"),
            all(pairs.iter().take(20).map(|(a, b)| {
                let a3 = a.direct_sum(&HomMatrix::diagonal(ring.table().clone(), vec![0], vec![random_ring_unit(&ring, &mut r)])?)?;
                let b3 = b.direct_sum(&HomMatrix::identity(ring.table().clone(), vec![0])?)?;
                let perm = [2, 0, 1];
                let reorder = |m: &EndoMatrix| m.block(&perm, &perm);
                let (a3, b3) = (reorder(&a3)?, reorder(&b3)?);
                let lhs = tilde(&x, &a3.mul(&b3)?)?;
                let rhs = tilde(&x, &a3)?.matrix().mul(tilde(&x, &b3)?.matrix())?;
                let id = HomMatrix::identity(ring.table().clone(), xl.clone())?;
                Ok(lhs.matrix() == &rhs && tilde(&x, &id)?.matrix().is_identity())
            })),
        );
        s.record(
            "k1",
            name("lift diagrams commute"),
            all((0..cfg.samples).map(|_| {
                let h = random_series_unit(&ring, &mut r);
                lift_commutes(&ring, &k1::ar_lift(&ring, &h)?)
            })),
        );
        s.record(
            "k1",
            name("delta(ab) = delta(a) delta(b)"),
            all(pairs.iter().map(|(a, b)| Ok(delta(&ring, &a.mul(b)?)? == delta(&ring, a)?.mul(&delta(&ring, b)?)))),
        );
        s.record(
            "k1",
            name("delta(diag(r, r^-1 phi)) = ([r], phi)"),
            all((0..cfg.samples).map(|_| {
                let rr = random_ring_unit(&ring, &mut r);
                let phi = ring.aut_m(&random_series_unit(&ring, &mut r))?.get(0, 0).clone();
                let d = delta(&ring, &delta_preimage(&ring, &rr, &phi)?)?;
                Ok(&d.residue == rr.constant_term() && d.det == phi)
            })),
        );
        s.record(
            "k1",
            name("elementary factorization re-multiplies exactly"),
            all(pairs.iter().map(|(a, _)| {
                let word = elementary_factorization(a)?;
                Ok(&multiply_word(ring.table(), &ring.generator_labels(), &word)? == a)
            })),
        );
        s.record(
            "k1",
            name("Whitehead factorization gives diag(r, r^-1)"),
            all((0..cfg.samples).map(|_| {
                let mut rr = random_ring_unit(&ring, &mut r);
                rr = rr.scale(&rr.constant_term().inv()?);
                let word = whitehead_factorization(&ring, &rr)?;
                Ok(multiply_word(ring.table(), &ring.generator_labels(), &word)? == ring.diag(&rr, &rr.inv()?)?)
            })),
        );
        s.record(
            "k1",
            name("every e_ij factor is a commutator"),
            all(pairs.iter().map(|(a, _)| {
                let labels = ring.generator_labels();
                all(elementary_factorization(a)?.iter().map(|f| match f {
                    Factor::E { row, col, mu } => commutator_identity_check(ring.table(), &labels, *row, *col, mu),
                    Factor::D { .. } => Ok(true),
                }))
            })),
        );
        let report = k1_compute(family, cfg.field, cfg.precision, cfg.samples, cfg.seed)?;
        for c in &report.checks {
            s.record("k1", name(&c.name), Ok(c.passed));
        }
    }
    Ok(())
}

fn semilocal_props(s: &mut Suite) {
    let names = ["M2F2", "M2F3", "M3F2", "F5", "M2F5", "F2xF2", "F3xF5"];
    let rings: Vec<FiniteRing> = names.iter().map(|n| n.parse().expect("static ring names parse")).collect();
    s.record(
        "semilocal",
        "[A*, A*] is contained in Ker theta",
        all(rings.iter().map(|a| {
            let comm = commutator_subgroup(&unit_group(a)?)?;
            Ok(comm.is_subset_of(&ker_theta(a)?))
        })),
    );
    s.record(
        "semilocal",
        "subgroups pass the closure audit",
        all(rings.iter().map(|a| {
            commutator_subgroup(&unit_group(a)?)?.audit()?;
            ker_theta(a)?.audit()?;
            Ok(true)
        })),
    );
    s.record(
        "semilocal",
        "commutative rings have trivial Ker theta",
        all(rings.iter().filter(|a| a.is_commutative()).map(|a| Ok(ker_theta(a)?.order() == 1))),
    );
    s.record(
        "semilocal",
        "M_n(F_p) equal except M2(F2) strict",
        all(rings.iter().filter(|a| a.factors().len() == 1).map(|a| {
            let f = a.factors()[0];
            let expected = if (f.n, f.p) == (2, 2) { Verdict::Strict } else { Verdict::Equal };
            Ok(vaserstein_check(a)?.verdict == expected)
        })),
    );
    s.record(
        "semilocal",
        "results independent of enumeration order",
        all(rings.iter().take(4).map(|a| {
            let u = unit_group(a)?;
            Ok(ker_theta(a)? == ker_theta_ordered(a, Enumeration::Reversed)?
                && commutator_subgroup(&u)? == commutator_subgroup_ordered(&u, Enumeration::Reversed)?)
        })),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let cfg = VerifyConfig { samples: 12, ..VerifyConfig::default() };
        let failed: Vec<_> = verify_all(&cfg).unwrap().into_iter().filter(|p| !p.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn powers_oracle() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(3).unwrap(), 4).unwrap();
        assert!(invertible_by_powers(&ring.identity()).unwrap());
        let a = ring.diag(&ring.series(&[2, 0, 1]), &ring.series(&[1, 1])).unwrap();
        assert!(invertible_by_powers(&a).unwrap());
        let b = ring.diag(&ring.series(&[0, 0, 1]), &ring.series(&[1])).unwrap();
        assert!(!invertible_by_powers(&b).unwrap());
    }
}
