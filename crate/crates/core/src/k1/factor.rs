use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rings::{EndoMatrix, HomMatrix, HomTable, TruncatedSeries};

use super::family::FamilyRing;

/// Elementary automorphisms of a sum of indecomposables (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// Identity except `phi` in diagonal slot `index`.
    D { index: usize, phi: TruncatedSeries },
    /// Identity plus `mu` in slot `(row, col)`, `row != col`.
    E { row: usize, col: usize, mu: TruncatedSeries },
}

impl Factor {
    pub fn to_matrix(&self, table: &Arc<HomTable>, labels: &[usize]) -> Result<EndoMatrix> {
        let (one, zero) = (table.one(), table.zero());
        let n = labels.len();
        let (slot, value) = match self {
            Factor::D { index, phi } => ((*index, *index), phi),
            Factor::E { row, col, mu } => {
                if row == col {
                    return Err(Error::DimensionMismatch("e_ij needs i != j".into()));
                }
                ((*row, *col), mu)
            }
        };
        if slot.0 >= n || slot.1 >= n {
            return Err(Error::DimensionMismatch(format!("factor slot {slot:?} outside a {n}x{n} matrix")));
        }
        HomMatrix::from_fn(table.clone(), labels.to_vec(), labels.to_vec(), |i, j| {
            if (i, j) == slot {
                value.clone()
            } else if i == j {
                one.clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn is_elementary(&self) -> bool {
        matches!(self, Factor::E { .. })
    }

    pub fn display_with(&self, var: &str) -> String {
        match self {
            Factor::D { index, phi } => format!("d{}({})", index + 1, phi.display_with(var)),
            Factor::E { row, col, mu } => format!("e{}{}({})", row + 1, col + 1, mu.display_with(var)),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("T"))
    }
}

/// Product of the word, left to right.
pub fn multiply_word(table: &Arc<HomTable>, labels: &[usize], word: &[Factor]) -> Result<EndoMatrix> {
    let mut acc = HomMatrix::identity(table.clone(), labels.to_vec())?;
    for f in word {
        acc = acc.mul(&f.to_matrix(table, labels)?)?;
    }
    Ok(acc)
}

/// Gaussian-elimination word for an automorphism.
///
/// `a = d_1(a_11) * prod_i e_i1(a_i1) * (word for the Schur complement on
/// slots 2..n) * prod_j e_1j(a_11^{-1} a_1j)`; trivial factors are omitted.
pub fn elementary_factorization(a: &EndoMatrix) -> Result<Vec<Factor>> {
    if !a.is_endo() {
        return Err(Error::NotInvertible("not an endomorphism".into()));
    }
    let mut word = Vec::new();
    factor_into(a, 0, &mut word)?;
    Ok(word)
}

fn factor_into(a: &EndoMatrix, offset: usize, word: &mut Vec<Factor>) -> Result<()> {
    let n = a.rows();
    if n == 0 {
        return Ok(());
    }
    let a11 = a.get(0, 0);
    if !a11.is_unit() {
        return Err(Error::NotInvertible(format!("pivot {} is not a unit", a11.display_with("T"))));
    }
    if !a11.is_one() {
        word.push(Factor::D { index: offset, phi: a11.clone() });
    }
    for i in 1..n {
        if !a.get(i, 0).is_zero() {
            word.push(Factor::E { row: offset + i, col: offset, mu: a.get(i, 0).clone() });
        }
    }
    if n == 1 {
        return Ok(());
    }
    let rest: Vec<usize> = (1..n).collect();
    let a11_inv = a.block(&[0], &[0])?.inv()?;
    let row = a11_inv.mul(&a.block(&[0], &rest)?)?;
    let schur = a.block(&rest, &rest)?.add(&a.block(&rest, &[0])?.mul(&row)?.neg())?;
    factor_into(&schur, offset + 1, word)?;
    for j in 1..n {
        if !row.get(0, j - 1).is_zero() {
            word.push(Factor::E { row: offset, col: offset + j, mu: row.get(0, j - 1).clone() });
        }
    }
    Ok(())
}

/// For `r` in `1 + m`: `e21(r^{-1} - 1) e12(1) e21(r - 1) e12(-r^{-1})`,
/// whose product is `diag(r 1_R, r^{-1} 1_m)`.
pub fn whitehead_factorization(ring: &FamilyRing, r: &TruncatedSeries) -> Result<Vec<Factor>> {
    if !ring.is_one_plus_maximal(r) {
        return Err(Error::NotInOnePlusMaximal(r.display_with(ring.var())));
    }
    let one = ring.series(&[1]);
    let rinv = r.inv()?;
    Ok(vec![
        Factor::E { row: 1, col: 0, mu: &rinv - &one },
        Factor::E { row: 0, col: 1, mu: one.clone() },
        Factor::E { row: 1, col: 0, mu: r - &one },
        Factor::E { row: 0, col: 1, mu: -&rinv },
    ])
}

/// `e_ij(mu) = [e_ij(mu/2), d_j(-1)]` by exact multiplication, with
/// `[x, y] = x y x^{-1} y^{-1}`.
pub fn commutator_identity_check(
    table: &Arc<HomTable>,
    labels: &[usize],
    row: usize,
    col: usize,
    mu: &TruncatedSeries,
) -> Result<bool> {
    let field = table.field();
    let half = field.from_i64(2).inv()?;
    let lhs = Factor::E { row, col, mu: mu.clone() }.to_matrix(table, labels)?;
    let x = Factor::E { row, col, mu: mu.scale(&half) }.to_matrix(table, labels)?;
    let y = Factor::D { index: col, phi: -&table.one() }.to_matrix(table, labels)?;
    let rhs = x.mul(&y)?.mul(&x.inv()?)?.mul(&y.inv()?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k1::family::Family;
    use crate::rings::Field;

    fn cusp() -> FamilyRing {
        FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 8).unwrap()
    }

    #[test]
    fn identity_has_empty_word() {
        let ring = cusp();
        assert!(elementary_factorization(&ring.identity()).unwrap().is_empty());
    }

    #[test]
    fn normal_form_is_recovered() {
        let ring = cusp();
        let labels = ring.generator_labels();
        let word = vec![
            Factor::D { index: 0, phi: ring.series(&[2, 0, 1]) },
            Factor::E { row: 1, col: 0, mu: ring.series(&[0, 0, 3, 1]) },
        ];
        let a = multiply_word(ring.table(), &labels, &word).unwrap();
        assert_eq!(elementary_factorization(&a).unwrap(), word);
    }

    #[test]
    fn whitehead_products() {
        for (fam, coeffs) in [(Family::Dual, vec![1, 1]), (Family::Cusp, vec![1, 0, 1])] {
            let ring = FamilyRing::new(fam, Field::prime(5).unwrap(), 8).unwrap();
            let r = ring.series(&coeffs);
            let word = whitehead_factorization(&ring, &r).unwrap();
            let prod = multiply_word(ring.table(), &ring.generator_labels(), &word).unwrap();
            assert_eq!(prod, ring.diag(&r, &r.inv().unwrap()).unwrap(), "{fam}");
        }
        assert!(whitehead_factorization(&cusp(), &cusp().series(&[2])).is_err());
    }

    #[test]
    fn commutator_identity() {
        let ring = cusp();
        let labels = ring.generator_labels();
        assert!(commutator_identity_check(ring.table(), &labels, 0, 1, &ring.series(&[0])).unwrap());
        assert!(commutator_identity_check(ring.table(), &labels, 0, 1, &ring.series(&[1, 2, 3])).unwrap());
        assert!(commutator_identity_check(ring.table(), &labels, 1, 0, &ring.series(&[0, 0, 4, 1])).unwrap());
    }
}
