use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;
use crate::error::Result;

/// Smith normal form `u * m * v = d` with `u`, `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Diagonal entries of `d`, including trailing zeros, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smallest nonzero absolute value in the trailing block starting at
/// `(k, k)`; ties go to the lowest `(row, col)` in row-major order.
fn find_pivot(d: &IntegerMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in k..d.rows() {
        for c in k..d.cols() {
            let x = d.get(r, c);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((r, c, a));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Diagonalizes `m` by unimodular row and column operations.
///
/// Pivots are chosen by smallest nonzero absolute value, then cleared
/// from their row and column by truncated division. When the pivot does
/// not divide the rest of the trailing block, the offending row is added
/// to the pivot row and the step repeats. Diagonal entries come out
/// nonnegative with `d[i] | d[i+1]`.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SmithForm> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows)?;
    let mut v = IntegerMatrix::identity(cols)?;

    'outer: for k in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = find_pivot(&d, k) else {
                break 'outer;
            };
            d.swap_rows(k, pr);
            u.swap_rows(k, pr);
            d.swap_cols(k, pc);
            v.swap_cols(k, pc);

            let pivot = d[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, k)] / &pivot);
                d.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                clean &= d[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(k, j)] / &pivot);
                d.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                clean &= d[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let offending = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    Ok(SmithForm { u, d, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(m).unwrap();
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.determinant().unwrap().abs(), BigInt::one());
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert!(s.d[(r, c)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntegerMatrix::identity(2).unwrap();
        let s = check(&id);
        assert_eq!(s.d, id);
        assert_eq!(s.u, id);
        assert_eq!(s.v, id);
    }

    #[test]
    fn column_minus_one_two() {
        let m = IntegerMatrix::from_rows(&[[-1], [2]]).unwrap();
        let s = check(&m);
        assert_eq!(s.d, IntegerMatrix::from_rows(&[[1], [0]]).unwrap());
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) has invariant factors 1, 6.
        let m = IntegerMatrix::from_rows(&[[2, 0], [0, 3]]).unwrap();
        let s = check(&m);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let m = IntegerMatrix::zeros(2, 3).unwrap();
        let s = check(&m);
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn large_entries_do_not_overflow() {
        let big = BigInt::from(u64::MAX) * BigInt::from(u64::MAX);
        let m = IntegerMatrix::new(2, 2, vec![big.clone(), BigInt::from(1), BigInt::zero(), big])
            .unwrap();
        let s = check(&m);
        assert_eq!(s.diagonal()[0], BigInt::one());
    }
}
