use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::ar_quiver::{cusp_presentation, dual_numbers_presentation, ArPresentation};
use crate::error::{Error, Result};
use crate::rings::{CornerTag, EndoMatrix, Field, FieldElem, HomMatrix, HomTable, Support, TruncatedSeries};

/// Index of `R` among the indecomposables.
pub const FREE: usize = 0;
/// Index of the maximal ideal `m`, the only non-free indecomposable.
pub const MAXIMAL: usize = 1;

/// The two worked ring families, both with representation generator `R + m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `k[X]/(X^2)`
    Dual,
    /// `k[[T^2, T^3]]`
    Cusp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Dual => write!(f, "dual"),
            Family::Cusp => write!(f, "cusp"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dual" => Ok(Family::Dual),
            "cusp" => Ok(Family::Cusp),
            other => Err(Error::Unsupported(format!("unknown ring family {other:?}"))),
        }
    }
}

/// A family instantiated over a field at a truncation precision, with the
/// Hom table for `End(R + m)`.
///
/// Every Hom space is encoded by multipliers in `k[[T]]/(T^N)` (for the
/// dual numbers, `N = 2` and the variable is `X`):
///
/// | family | `Hom(R,R)` | `Hom(m,R)` | `Hom(R,m)` | `Hom(m,m)` |
/// |--------|------------|------------|------------|------------|
/// | cusp   | semigroup  | full       | ideal      | full       |
/// | dual   | full       | scalar*    | maximal    | scalar*    |
///
/// `*` entries are reduced modulo `X`, which annihilates `m`.
#[derive(Clone, Debug)]
pub struct FamilyRing {
    family: Family,
    table: Arc<HomTable>,
}

impl FamilyRing {
    /// The dual numbers always use precision 2; `precision` applies to the cusp.
    pub fn new(family: Family, field: Field, precision: usize) -> Result<Self> {
        let names = vec!["R".to_string(), "m".to_string()];
        let (precision, tags) = match family {
            Family::Dual => (
                2,
                vec![
                    vec![CornerTag::checked(Support::FULL), CornerTag::reduced(Support::SCALAR)],
                    vec![CornerTag::checked(Support::MAXIMAL), CornerTag::reduced(Support::SCALAR)],
                ],
            ),
            Family::Cusp => (
                precision,
                vec![
                    vec![CornerTag::checked(Support::SEMIGROUP), CornerTag::checked(Support::FULL)],
                    vec![CornerTag::checked(Support::IDEAL), CornerTag::checked(Support::FULL)],
                ],
            ),
        };
        if precision < 4 && family == Family::Cusp {
            return Err(Error::InvalidPrecision(precision));
        }
        let table = Arc::new(HomTable::new(field, precision, names, tags)?);
        Ok(Self { family, table })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn field(&self) -> Field {
        self.table.field()
    }

    pub fn precision(&self) -> usize {
        self.table.precision()
    }

    pub fn table(&self) -> &Arc<HomTable> {
        &self.table
    }

    pub fn var(&self) -> &'static str {
        match self.family {
            Family::Dual => "X",
            Family::Cusp => "T",
        }
    }

    pub fn presentation(&self) -> ArPresentation {
        match self.family {
            Family::Dual => dual_numbers_presentation(),
            Family::Cusp => cusp_presentation(),
        }
    }

    /// Support of elements of `R` inside `k[[T]]/(T^N)`.
    pub fn ring_support(&self) -> Support {
        match self.family {
            Family::Dual => Support::FULL,
            Family::Cusp => Support::SEMIGROUP,
        }
    }

    pub fn maximal_support(&self) -> Support {
        match self.family {
            Family::Dual => Support::MAXIMAL,
            Family::Cusp => Support::IDEAL,
        }
    }

    pub fn series(&self, coeffs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64(self.field(), self.precision(), coeffs, Support::FULL)
            .expect("precision validated")
    }

    pub fn constant(&self, c: FieldElem) -> TruncatedSeries {
        TruncatedSeries::constant(c, self.precision()).expect("precision validated")
    }

    pub fn t(&self) -> TruncatedSeries {
        TruncatedSeries::monomial(self.field().one(), 1, self.precision()).expect("precision validated")
    }

    pub fn is_ring_element(&self, r: &TruncatedSeries) -> bool {
        r.clone().with_support(self.ring_support()).is_ok()
    }

    pub fn is_ring_unit(&self, r: &TruncatedSeries) -> bool {
        self.is_ring_element(r) && r.is_unit()
    }

    /// `r - 1` lies in the maximal ideal.
    pub fn is_one_plus_maximal(&self, r: &TruncatedSeries) -> bool {
        self.is_ring_element(r) && r.constant_term().is_one()
    }

    /// Labels of the representation generator `M = R + m`.
    pub fn generator_labels(&self) -> Vec<usize> {
        vec![FREE, MAXIMAL]
    }

    /// Labels of the middle term of the AR sequence ending in `m`.
    pub fn middle_labels(&self) -> Vec<usize> {
        match self.family {
            Family::Dual => vec![FREE],
            Family::Cusp => vec![FREE, MAXIMAL],
        }
    }

    pub fn identity(&self) -> EndoMatrix {
        HomMatrix::identity(self.table.clone(), self.generator_labels()).expect("identity respects every tag")
    }

    /// `h * 1_m` as a 1x1 endomorphism of `m`.
    pub fn aut_m(&self, h: &TruncatedSeries) -> Result<EndoMatrix> {
        let a = HomMatrix::new(self.table.clone(), vec![MAXIMAL], vec![MAXIMAL], vec![h.clone()])?;
        if !a.get(0, 0).is_unit() {
            return Err(Error::NotAUnit(format!("{} is not an automorphism of m", h.display_with(self.var()))));
        }
        Ok(a)
    }

    /// `diag(r * 1_R, phi * 1_m)` on `R + m`.
    pub fn diag(&self, r: &TruncatedSeries, phi: &TruncatedSeries) -> Result<EndoMatrix> {
        HomMatrix::diagonal(self.table.clone(), self.generator_labels(), vec![r.clone(), phi.clone()])
    }

    /// The two maps of the AR sequence `0 -> m -> X -> m -> 0`.
    ///
    /// Dual numbers: `m -(incl)-> R -(X)-> m`.
    /// Cusp: `m -(1, -T)^t-> R + m -(T^2  T)-> m`.
    pub fn ar_maps(&self) -> (HomMatrix, HomMatrix) {
        let one = self.series(&[1]);
        let tab = self.table.clone();
        match self.family {
            Family::Dual => {
                let x = self.series(&[0, 1]);
                let inc = HomMatrix::new(tab.clone(), vec![FREE], vec![MAXIMAL], vec![one]);
                let proj = HomMatrix::new(tab, vec![MAXIMAL], vec![FREE], vec![x]);
                (inc.expect("inclusion respects tags"), proj.expect("projection respects tags"))
            }
            Family::Cusp => {
                let minus_t = -&self.t();
                let t2 = self.series(&[0, 0, 1]);
                let inc = HomMatrix::new(tab.clone(), vec![FREE, MAXIMAL], vec![MAXIMAL], vec![one, minus_t]);
                let proj = HomMatrix::new(tab, vec![MAXIMAL], vec![FREE, MAXIMAL], vec![t2, self.t()]);
                (inc.expect("inclusion respects tags"), proj.expect("projection respects tags"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ar_sequence_composes_to_zero() {
        for fam in [Family::Dual, Family::Cusp] {
            let ring = FamilyRing::new(fam, Field::prime(5).unwrap(), 8).unwrap();
            let (inc, proj) = ring.ar_maps();
            let comp = proj.mul(&inc).unwrap();
            assert!(comp.get(0, 0).is_zero(), "{fam}");
        }
    }

    #[test]
    fn dual_precision_is_two() {
        let ring = FamilyRing::new(Family::Dual, Field::prime(7).unwrap(), 8).unwrap();
        assert_eq!(ring.precision(), 2);
        assert!(FamilyRing::new(Family::Cusp, Field::prime(7).unwrap(), 3).is_err());
    }

    #[test]
    fn scalar_entries_are_reduced() {
        let ring = FamilyRing::new(Family::Dual, Field::prime(5).unwrap(), 2).unwrap();
        let a = ring.aut_m(&ring.series(&[2, 3])).unwrap();
        assert_eq!(a.get(0, 0), &ring.series(&[2]));
        assert!(ring.aut_m(&ring.series(&[0, 1])).is_err());
    }

    #[test]
    fn parse_family() {
        assert_eq!("Cusp".parse::<Family>().unwrap(), Family::Cusp);
        assert!("node".parse::<Family>().is_err());
    }
}
