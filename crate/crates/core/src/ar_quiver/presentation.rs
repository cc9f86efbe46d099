use std::collections::HashSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intlinalg::{cokernel, FgAbelianGroup, IntegerMatrix};

/// One almost split sequence `0 -> M_translate -> X -> M_end -> 0`, with the
/// middle term `X` recorded by its multiplicities over `M_0..M_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArSequence {
    pub end: usize,
    pub translate: usize,
    pub middle: Vec<u64>,
}

impl ArSequence {
    pub fn new(end: usize, translate: usize, middle: Vec<u64>) -> Self {
        Self { end, translate, middle }
    }
}

/// Indecomposable MCM modules `M_0 = R, M_1, ..., M_t` together with the
/// AR sequence ending in each non-free `M_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArPresentation {
    labels: Vec<String>,
    sequences: Vec<ArSequence>,
}

impl ArPresentation {
    /// Labels default to `M0..Mt`.
    pub fn new(module_count: usize, sequences: Vec<ArSequence>) -> Result<Self> {
        let labels = (0..module_count).map(|i| format!("M{i}")).collect();
        Self::with_labels(labels, sequences)
    }

    /// Sequences may be given in any order; they are stored sorted by end term.
    pub fn with_labels(labels: Vec<String>, mut sequences: Vec<ArSequence>) -> Result<Self> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::MalformedPresentation(
                "need R and at least one non-free indecomposable".into(),
            ));
        }
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::MalformedPresentation("module labels must be distinct".into()));
        }
        let t = n - 1;
        if sequences.len() != t {
            return Err(Error::MalformedPresentation(format!(
                "expected {t} sequences, one per non-free module, found {}",
                sequences.len()
            )));
        }
        for s in &sequences {
            if s.end == 0 || s.end > t {
                return Err(Error::MalformedPresentation(format!(
                    "end term index {} outside 1..={t}",
                    s.end
                )));
            }
            if s.translate == 0 || s.translate > t {
                return Err(Error::MalformedPresentation(format!(
                    "translate index {} outside 1..={t}",
                    s.translate
                )));
            }
            if s.middle.len() != n {
                return Err(Error::MalformedPresentation(format!(
                    "middle term of sequence ending in M{} has {} multiplicities, expected {n}",
                    s.end,
                    s.middle.len()
                )));
            }
        }
        sequences.sort_by_key(|s| s.end);
        if sequences.windows(2).any(|w| w[0].end == w[1].end) {
            return Err(Error::MalformedPresentation("two sequences share an end term".into()));
        }
        Ok(Self { labels, sequences })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sequences(&self) -> &[ArSequence] {
        &self.sequences
    }

    /// Number `t` of non-free indecomposables.
    pub fn t(&self) -> usize {
        self.labels.len() - 1
    }

    /// Applies a permutation of `1..=t` to every index (`perm[j-1]` is the
    /// new index of `M_j`); `M_0` stays fixed.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let t = self.t();
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=t).collect::<Vec<_>>() {
            return Err(Error::MalformedPresentation("not a permutation of 1..=t".into()));
        }
        let map = |i: usize| if i == 0 { 0 } else { perm[i - 1] };
        let mut labels = self.labels.clone();
        for (i, l) in self.labels.iter().enumerate() {
            labels[map(i)] = l.clone();
        }
        let sequences = self
            .sequences
            .iter()
            .map(|s| {
                let mut middle = vec![0; t + 1];
                for (i, &n) in s.middle.iter().enumerate() {
                    middle[map(i)] = n;
                }
                ArSequence::new(map(s.end), map(s.translate), middle)
            })
            .collect();
        Self::with_labels(labels, sequences)
    }
}

/// The `(t+1) x t` AR matrix: column `j` holds the coordinates of
/// `tau(M_j) + M_j - X_j` in `Z M_0 + ... + Z M_t`.
pub fn build_upsilon(p: &ArPresentation) -> Result<IntegerMatrix> {
    let t = p.t();
    let mut m = IntegerMatrix::zeros(t + 1, t)?;
    for s in p.sequences() {
        let col = s.end - 1;
        for (i, &n) in s.middle.iter().enumerate() {
            m[(i, col)] -= BigInt::from(n);
        }
        m[(s.translate, col)] += 1;
        m[(s.end, col)] += 1;
    }
    Ok(m)
}

/// `K_0(mod R)` as the cokernel of the AR homomorphism.
pub fn k0_group(p: &ArPresentation) -> Result<FgAbelianGroup> {
    cokernel(&build_upsilon(p)?)
}

/// The presentation for `C[[X,Y,Z]]/(X^3 + Y^4 + Z^2)`, seven indecomposables.
pub fn e6_surface_presentation() -> ArPresentation {
    let seqs = vec![
        ArSequence::new(1, 1, vec![0, 0, 1, 0, 0, 0, 0]),
        ArSequence::new(2, 2, vec![0, 1, 0, 1, 0, 0, 0]),
        ArSequence::new(3, 3, vec![0, 0, 1, 0, 1, 0, 1]),
        ArSequence::new(4, 4, vec![0, 0, 0, 1, 0, 1, 0]),
        ArSequence::new(5, 5, vec![0, 0, 0, 0, 1, 0, 0]),
        ArSequence::new(6, 6, vec![1, 0, 0, 1, 0, 0, 0]),
    ];
    ArPresentation::new(7, seqs).expect("static presentation is well formed")
}

/// `k[X]/(X^2)`: the single sequence `0 -> m -> R -> m -> 0`.
pub fn dual_numbers_presentation() -> ArPresentation {
    ArPresentation::new(2, vec![ArSequence::new(1, 1, vec![1, 0])])
        .expect("static presentation is well formed")
}

/// `k[[T^2, T^3]]`: the single sequence `0 -> m -> R + m -> m -> 0`.
pub fn cusp_presentation() -> ArPresentation {
    ArPresentation::new(2, vec![ArSequence::new(1, 1, vec![1, 1])])
        .expect("static presentation is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn e6_matrix_matches_printed_table() {
        let expected = IntegerMatrix::from_rows(&[
            [0, 0, 0, 0, 0, -1],
            [2, -1, 0, 0, 0, 0],
            [-1, 2, -1, 0, 0, 0],
            [0, -1, 2, -1, 0, -1],
            [0, 0, -1, 2, -1, 0],
            [0, 0, 0, -1, 2, 0],
            [0, 0, -1, 0, 0, 2],
        ])
        .unwrap();
        assert_eq!(build_upsilon(&e6_surface_presentation()).unwrap(), expected);
    }

    #[test]
    fn one_dimensional_examples() {
        let dual = build_upsilon(&dual_numbers_presentation()).unwrap();
        assert_eq!(dual, IntegerMatrix::from_rows(&[[-1], [2]]).unwrap());
        let cusp = build_upsilon(&cusp_presentation()).unwrap();
        assert_eq!(cusp, IntegerMatrix::from_rows(&[[-1], [1]]).unwrap());
    }

    #[test]
    fn column_sums() {
        let p = e6_surface_presentation();
        let m = build_upsilon(&p).unwrap();
        for s in p.sequences() {
            let sum: BigInt = (0..m.rows()).map(|i| m[(i, s.end - 1)].clone()).sum();
            let mid: u64 = s.middle.iter().sum();
            assert_eq!(sum, BigInt::from(2) - BigInt::from(mid));
        }
    }

    #[test]
    fn distinct_translate_contributes_separately() {
        let p = ArPresentation::new(
            3,
            vec![ArSequence::new(1, 2, vec![0, 0, 0]), ArSequence::new(2, 1, vec![1, 0, 0])],
        )
        .unwrap();
        let m = build_upsilon(&p).unwrap();
        assert_eq!(m, IntegerMatrix::from_rows(&[[0, -1], [1, 1], [1, 1]]).unwrap());
        assert!(m[(0, 0)].is_zero());
    }

    #[test]
    fn malformed_presentations() {
        let bad_index = ArPresentation::new(2, vec![ArSequence::new(2, 1, vec![1, 0])]);
        assert!(matches!(bad_index, Err(Error::MalformedPresentation(_))));
        let free_translate = ArPresentation::new(2, vec![ArSequence::new(1, 0, vec![1, 0])]);
        assert!(free_translate.is_err());
        let short_middle = ArPresentation::new(2, vec![ArSequence::new(1, 1, vec![1])]);
        assert!(short_middle.is_err());
        let missing = ArPresentation::new(3, vec![ArSequence::new(1, 1, vec![1, 0, 0])]);
        assert!(missing.is_err());
        let dup_labels =
            ArPresentation::with_labels(vec!["R".into(), "R".into()], vec![ArSequence::new(1, 1, vec![1, 0])]);
        assert!(dup_labels.is_err());
    }

    #[test]
    fn relabel_permutes_rows_and_columns() {
        let p = e6_surface_presentation();
        let q = p.relabel(&[6, 5, 4, 3, 2, 1]).unwrap();
        let a = build_upsilon(&p).unwrap();
        let b = build_upsilon(&q).unwrap();
        // new index of M_j is 7 - j
        for i in 0..7 {
            for j in 1..7 {
                let ni = if i == 0 { 0 } else { 7 - i };
                assert_eq!(a[(i, j - 1)], b[(ni, 7 - j - 1)]);
            }
        }
        assert_eq!(k0_group(&p).unwrap(), k0_group(&q).unwrap());
    }
}
