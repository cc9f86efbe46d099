use std::fmt;
use std::sync::Arc;

use super::{Field, Support, TruncatedSeries};
use crate::error::{Error, Result};

/// Constraint on the multipliers that encode `Hom(M_source, M_target)`.
///
/// With `reduce` unset, a multiplier outside `support` is rejected. With
/// `reduce` set, coefficients outside `support` are discarded instead: the
/// multiplier is only defined modulo the annihilator of the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CornerTag {
    pub support: Support,
    pub reduce: bool,
}

impl CornerTag {
    pub const fn checked(support: Support) -> Self {
        Self { support, reduce: false }
    }

    pub const fn reduced(support: Support) -> Self {
        Self { support, reduce: true }
    }

    pub fn normalize(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.reduce {
            Ok(x.restrict(self.support))
        } else {
            x.clone().with_support(self.support)
        }
    }
}

/// Describes the Hom spaces between the indecomposable summands in play,
/// all encoded as multipliers in `k[[T]]/(T^N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTable {
    field: Field,
    precision: usize,
    names: Vec<String>,
    /// `tags[target][source]`
    tags: Vec<Vec<CornerTag>>,
}

impl HomTable {
    pub fn new(field: Field, precision: usize, names: Vec<String>, tags: Vec<Vec<CornerTag>>) -> Result<Self> {
        if precision < 2 {
            return Err(Error::InvalidPrecision(precision));
        }
        if tags.len() != names.len() || tags.iter().any(|r| r.len() != names.len()) {
            return Err(Error::DimensionMismatch("Hom table must be square over the module names".into()));
        }
        Ok(Self { field, precision, names, tags })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn module_count(&self) -> usize {
        self.names.len()
    }

    pub fn tag(&self, target: usize, source: usize) -> CornerTag {
        self.tags[target][source]
    }

    pub fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(self.field, self.precision).expect("precision validated")
    }

    pub fn one(&self) -> TruncatedSeries {
        TruncatedSeries::one(self.field, self.precision).expect("precision validated")
    }
}

/// Matrix of multipliers representing a homomorphism
/// `M_{sources[0]} + ... -> M_{targets[0]} + ...`; elements are column
/// vectors, composition is matrix product.
///
/// Every entry is kept normalized according to its [`CornerTag`].
#[derive(Clone, Debug)]
pub struct HomMatrix {
    table: Arc<HomTable>,
    targets: Vec<usize>,
    sources: Vec<usize>,
    entries: Vec<TruncatedSeries>,
}

/// Endomorphisms are square [`HomMatrix`] values with `targets == sources`.
pub type EndoMatrix = HomMatrix;

fn same_table(a: &Arc<HomTable>, b: &Arc<HomTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for HomMatrix {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table)
            && self.targets == other.targets
            && self.sources == other.sources
            && self.entries == other.entries
    }
}

impl Eq for HomMatrix {}

impl HomMatrix {
    pub fn new(
        table: Arc<HomTable>,
        targets: Vec<usize>,
        sources: Vec<usize>,
        entries: Vec<TruncatedSeries>,
    ) -> Result<Self> {
        if entries.len() != targets.len() * sources.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} Hom matrix",
                entries.len(),
                targets.len(),
                sources.len()
            )));
        }
        let m = table.module_count();
        if targets.iter().chain(&sources).any(|&i| i >= m) {
            return Err(Error::DimensionMismatch("module index outside the Hom table".into()));
        }
        let mut normalized = Vec::with_capacity(entries.len());
        for (k, e) in entries.iter().enumerate() {
            if e.field() != table.field() {
                return Err(Error::FieldMismatch);
            }
            if e.precision() != table.precision() {
                return Err(Error::PrecisionMismatch(e.precision(), table.precision()));
            }
            let (i, j) = (k / sources.len(), k % sources.len());
            normalized.push(table.tag(targets[i], sources[j]).normalize(e)?);
        }
        Ok(Self { table, targets, sources, entries: normalized })
    }

    pub fn from_fn(
        table: Arc<HomTable>,
        targets: Vec<usize>,
        sources: Vec<usize>,
        mut f: impl FnMut(usize, usize) -> TruncatedSeries,
    ) -> Result<Self> {
        let entries = (0..targets.len())
            .flat_map(|i| (0..sources.len()).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self::new(table, targets, sources, entries)
    }

    pub fn identity(table: Arc<HomTable>, labels: Vec<usize>) -> Result<Self> {
        let (one, zero) = (table.one(), table.zero());
        Self::from_fn(table, labels.clone(), labels, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn diagonal(table: Arc<HomTable>, labels: Vec<usize>, diag: Vec<TruncatedSeries>) -> Result<Self> {
        if diag.len() != labels.len() {
            return Err(Error::DimensionMismatch("diagonal length".into()));
        }
        let zero = table.zero();
        Self::from_fn(table, labels.clone(), labels, |i, j| if i == j { diag[i].clone() } else { zero.clone() })
    }

    pub fn table(&self) -> &Arc<HomTable> {
        &self.table
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn rows(&self) -> usize {
        self.targets.len()
    }

    pub fn cols(&self) -> usize {
        self.sources.len()
    }

    pub fn is_endo(&self) -> bool {
        self.targets == self.sources
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.sources.len() + j]
    }

    pub fn is_identity(&self) -> bool {
        self.is_endo()
            && (0..self.rows())
                .all(|i| (0..self.cols()).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// `self * other`, i.e. first `other`, then `self`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::FieldMismatch);
        }
        if self.sources != other.targets {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: sources {:?} vs targets {:?}",
                self.sources, other.targets
            )));
        }
        let n = self.sources.len();
        Self::from_fn(self.table.clone(), self.targets.clone(), other.sources.clone(), |i, j| {
            let mut acc = self.table.zero();
            for k in 0..n {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.targets != other.targets || self.sources != other.sources || !same_table(&self.table, &other.table) {
            return Err(Error::DimensionMismatch("cannot add Hom matrices of different shape".into()));
        }
        Self::from_fn(self.table.clone(), self.targets.clone(), self.sources.clone(), |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            table: self.table.clone(),
            targets: self.targets.clone(),
            sources: self.sources.clone(),
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// All diagonal entries are units. For pairwise non-isomorphic
    /// summands with local endomorphism rings this is equivalent to
    /// invertibility.
    pub fn has_unit_diagonal(&self) -> bool {
        self.is_endo() && (0..self.rows()).all(|i| self.get(i, i).is_unit())
    }

    /// Two-sided inverse by Gauss-Jordan elimination on the multipliers.
    ///
    /// Pivots are taken on the diagonal when it holds a unit, otherwise
    /// from the first lower row whose entry in the pivot column is a unit.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_endo() {
            return Err(Error::NotInvertible("not an endomorphism".into()));
        }
        let n = self.rows();
        let mut a: Vec<Vec<TruncatedSeries>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut b: Vec<Vec<TruncatedSeries>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { self.table.one() } else { self.table.zero() }).collect())
            .collect();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| a[r][k].is_unit()) else {
                return Err(Error::NotInvertible(format!("no unit pivot in column {k} after elimination")));
            };
            a.swap(k, p);
            b.swap(k, p);
            let pinv = a[k][k].inv()?;
            for j in 0..n {
                a[k][j] = &a[k][j] * &pinv;
                b[k][j] = &b[k][j] * &pinv;
            }
            for r in 0..n {
                if r == k || a[r][k].is_zero() {
                    continue;
                }
                let factor = a[r][k].clone();
                for j in 0..n {
                    a[r][j] = &a[r][j] - &(&factor * &a[k][j]);
                    b[r][j] = &b[r][j] - &(&factor * &b[k][j]);
                }
            }
        }
        let inv = Self::new(self.table.clone(), self.targets.clone(), self.sources.clone(), b.concat())?;
        if !(self.mul(&inv)?.is_identity() && inv.mul(self)?.is_identity()) {
            return Err(Error::NotInvertible("inverse does not respect the Hom constraints".into()));
        }
        Ok(inv)
    }

    /// Sub-block with the given row and column positions.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let targets = rows.iter().map(|&r| self.targets[r]).collect();
        let sources = cols.iter().map(|&c| self.sources[c]).collect();
        Self::from_fn(self.table.clone(), targets, sources, |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Block-diagonal sum `self + other`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::FieldMismatch);
        }
        let (r1, c1) = (self.rows(), self.cols());
        let targets = [self.targets.clone(), other.targets.clone()].concat();
        let sources = [self.sources.clone(), other.sources.clone()].concat();
        let zero = self.table.zero();
        Self::from_fn(self.table.clone(), targets, sources, |i, j| match (i < r1, j < c1) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - r1, j - c1).clone(),
            _ => zero.clone(),
        })
    }

    /// Renders entries with the given variable name, rows separated by `; `.
    pub fn display_with(&self, var: &str) -> String {
        let rows: Vec<String> = (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.get(i, j).display_with(var)).collect::<Vec<_>>().join(", "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

impl fmt::Display for HomMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("T"))
    }
}

pub fn endo_matrix_mul(a: &EndoMatrix, b: &EndoMatrix) -> Result<EndoMatrix> {
    a.mul(b)
}

pub fn endo_matrix_inv(a: &EndoMatrix) -> Result<EndoMatrix> {
    a.inv()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<HomTable> {
        let f = Field::prime(5).unwrap();
        let c = CornerTag::checked;
        Arc::new(
            HomTable::new(
                f,
                6,
                vec!["R".into(), "m".into()],
                vec![vec![c(Support::SEMIGROUP), c(Support::FULL)], vec![c(Support::IDEAL), c(Support::FULL)]],
            )
            .unwrap(),
        )
    }

    fn s(t: &HomTable, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64(t.field(), t.precision(), c, Support::FULL).unwrap()
    }

    #[test]
    fn identity_products() {
        let t = table();
        let id = HomMatrix::identity(t.clone(), vec![0, 1]).unwrap();
        assert_eq!(id.mul(&id).unwrap(), id);
        assert_eq!(id.inv().unwrap(), id);
    }

    #[test]
    fn rejects_constraint_violations() {
        let t = table();
        let bad = HomMatrix::from_fn(t.clone(), vec![0, 1], vec![0, 1], |i, j| {
            if (i, j) == (1, 0) { s(&t, &[0, 1]) } else { s(&t, &[1]) }
        });
        assert!(matches!(bad, Err(Error::SupportViolation { .. })));
    }

    #[test]
    fn inverse_round_trip() {
        let t = table();
        let a = HomMatrix::new(
            t.clone(),
            vec![0, 1],
            vec![0, 1],
            vec![s(&t, &[2, 0, 1]), s(&t, &[1, 3]), s(&t, &[0, 0, 4, 1]), s(&t, &[3, 1, 1])],
        )
        .unwrap();
        let b = a.inv().unwrap();
        assert!(a.mul(&b).unwrap().is_identity());
        assert!(b.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn non_unit_diagonal_is_not_invertible() {
        let t = table();
        let a = HomMatrix::new(
            t.clone(),
            vec![0, 1],
            vec![0, 1],
            vec![s(&t, &[1]), s(&t, &[2]), s(&t, &[0, 0, 1]), s(&t, &[0, 1])],
        )
        .unwrap();
        assert!(!a.has_unit_diagonal());
        assert!(matches!(a.inv(), Err(Error::NotInvertible(_))));
    }
}
