use crate::error::{Error, Result};
use crate::rings::{EndoMatrix, HomMatrix};

/// A module `X = M_0^{n_0} + ... + M_t^{n_t}` relative to a representation
/// generator `M = M_0^{m_0} + ... + M_t^{m_t}` with every `m_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    multiplicities: Vec<usize>,
    generator: Vec<usize>,
}

impl Decomposition {
    pub fn new(multiplicities: Vec<usize>, generator: Vec<usize>) -> Result<Self> {
        if multiplicities.len() != generator.len() {
            return Err(Error::DimensionMismatch("X and M need one multiplicity per indecomposable".into()));
        }
        if generator.contains(&0) {
            return Err(Error::DimensionMismatch("representation generator needs every m_i >= 1".into()));
        }
        if multiplicities.iter().all(|&n| n == 0) {
            return Err(Error::DimensionMismatch("X must be nonzero".into()));
        }
        Ok(Self { multiplicities, generator })
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn generator(&self) -> &[usize] {
        &self.generator
    }

    /// Smallest `q` with `q * m_j >= n_j` for all `j`, found by scanning.
    pub fn q(&self) -> usize {
        (1..)
            .find(|&q| self.multiplicities.iter().zip(&self.generator).all(|(&n, &m)| q * m >= n))
            .expect("every m_j >= 1, so some q works")
    }

    /// Complement multiplicities `v_j = q m_j - n_j`.
    pub fn complement(&self) -> Vec<usize> {
        let q = self.q();
        self.multiplicities.iter().zip(&self.generator).map(|(&n, &m)| q * m - n).collect()
    }

    fn expand(mults: &[usize]) -> Vec<usize> {
        mults.iter().enumerate().flat_map(|(i, &n)| std::iter::repeat_n(i, n)).collect()
    }

    /// Summand labels of `X` in block order.
    pub fn labels(&self) -> Vec<usize> {
        Self::expand(&self.multiplicities)
    }

    pub fn generator_labels(&self) -> Vec<usize> {
        Self::expand(&self.generator)
    }

    /// The isomorphism `psi: X + Y -> M^q` as a permutation of summand
    /// positions: `psi[a]` is where summand `a` of `X + Y` lands in `M^q`.
    ///
    /// For each `j`, the `n_j` copies of `M_j` from `X` followed by the
    /// `v_j` copies from `Y` are dealt into the `q` copies of `M_j^{m_j}`.
    pub fn psi(&self) -> Vec<usize> {
        let q = self.q();
        let v = self.complement();
        let t1 = self.generator.len();
        let m_size: usize = self.generator.iter().sum();
        let x_size: usize = self.multiplicities.iter().sum();
        let offset = |mults: &[usize], j: usize| mults[..j].iter().sum::<usize>();
        let mut psi = vec![0; q * m_size];
        for j in 0..t1 {
            let m_j = self.generator[j];
            for s in 0..q * m_j {
                let source = if s < self.multiplicities[j] {
                    offset(&self.multiplicities, j) + s
                } else {
                    x_size + offset(&v, j) + (s - self.multiplicities[j])
                };
                let copy = s / m_j;
                psi[source] = copy * m_size + offset(&self.generator, j) + s % m_j;
            }
        }
        psi
    }
}

/// Result of the tilde construction: an automorphism of `M^q`, stored as
/// a `q|M| x q|M|` matrix over the indecomposable summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tilde {
    q: usize,
    generator_size: usize,
    matrix: EndoMatrix,
}

impl Tilde {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn matrix(&self) -> &EndoMatrix {
        &self.matrix
    }

    /// Entry `(r, c)` of the `q x q` matrix over `E = End(M)`.
    pub fn entry(&self, r: usize, c: usize) -> Result<EndoMatrix> {
        let m = self.generator_size;
        let rows: Vec<usize> = (r * m..(r + 1) * m).collect();
        let cols: Vec<usize> = (c * m..(c + 1) * m).collect();
        self.matrix.block(&rows, &cols)
    }

    /// Generalized determinant over `E`, available here for `q = 1`, where
    /// it is the single entry.
    pub fn det_e(&self) -> Result<EndoMatrix> {
        if self.q != 1 {
            return Err(Error::Unsupported(format!("generalized determinant of a {}x{} matrix over E", self.q, self.q)));
        }
        self.entry(0, 0)
    }
}

/// `psi (alpha + 1_Y) psi^{-1}` for an automorphism `alpha` of `X`.
pub fn tilde(x: &Decomposition, alpha: &EndoMatrix) -> Result<Tilde> {
    let labels = x.labels();
    if !alpha.is_endo() || alpha.targets() != labels.as_slice() {
        return Err(Error::DimensionMismatch(format!(
            "alpha acts on summands {:?}, X has {:?}",
            alpha.targets(),
            labels
        )));
    }
    alpha.inv().map_err(|e| Error::NotInvertible(format!("tilde needs an automorphism: {e}")))?;

    let y_labels = Decomposition::expand(&x.complement());
    let padded = if y_labels.is_empty() {
        alpha.clone()
    } else {
        alpha.direct_sum(&HomMatrix::identity(alpha.table().clone(), y_labels)?)?
    };
    let psi = x.psi();
    let mut inverse = vec![0; psi.len()];
    for (a, &b) in psi.iter().enumerate() {
        inverse[b] = a;
    }
    let q = x.q();
    let target_labels: Vec<usize> = (0..q).flat_map(|_| x.generator_labels()).collect();
    let matrix = HomMatrix::from_fn(padded.table().clone(), target_labels.clone(), target_labels, |i, j| {
        padded.get(inverse[i], inverse[j]).clone()
    })?;
    Ok(Tilde { q, generator_size: x.generator.iter().sum(), matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k1::family::{Family, FamilyRing};
    use crate::rings::Field;

    #[test]
    fn q_and_complement() {
        let x = Decomposition::new(vec![3, 0, 1], vec![1, 2, 1]).unwrap();
        assert_eq!(x.q(), 3);
        assert_eq!(x.complement(), vec![0, 6, 2]);
        assert!(Decomposition::new(vec![0, 0], vec![1, 1]).is_err());
        assert!(Decomposition::new(vec![1, 0], vec![1, 0]).is_err());
    }

    #[test]
    fn psi_is_a_permutation() {
        let x = Decomposition::new(vec![3, 0, 1], vec![1, 2, 1]).unwrap();
        let mut p = x.psi();
        p.sort_unstable();
        assert_eq!(p, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn single_summand_lands_in_its_slot() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 6).unwrap();
        let h = ring.series(&[2, 1, 3]);
        let x = Decomposition::new(vec![0, 1], vec![1, 1]).unwrap();
        let alpha = ring.aut_m(&h).unwrap();
        let t = tilde(&x, &alpha).unwrap();
        assert_eq!(t.q(), 1);
        assert_eq!(t.det_e().unwrap(), ring.diag(&ring.series(&[1]), &h).unwrap());
    }

    #[test]
    fn whole_generator_is_unchanged() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 6).unwrap();
        let x = Decomposition::new(vec![1, 1], vec![1, 1]).unwrap();
        let a = ring.diag(&ring.series(&[3, 0, 1]), &ring.series(&[1, 1])).unwrap();
        assert_eq!(tilde(&x, &a).unwrap().matrix(), &a);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 6).unwrap();
        let x = Decomposition::new(vec![1, 1], vec![1, 1]).unwrap();
        let a = ring.diag(&ring.series(&[0, 0, 1]), &ring.series(&[1])).unwrap();
        assert!(matches!(tilde(&x, &a), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn q_two_spreads_copies() {
        let ring = FamilyRing::new(Family::Cusp, Field::prime(5).unwrap(), 6).unwrap();
        // X = R^2, M = R + m: q = 2, Y = m^2.
        let x = Decomposition::new(vec![2, 0], vec![1, 1]).unwrap();
        let r = ring.series(&[2]);
        let alpha = HomMatrix::diagonal(ring.table().clone(), vec![0, 0], vec![r.clone(), r.clone()]).unwrap();
        let t = tilde(&x, &alpha).unwrap();
        assert_eq!(t.q(), 2);
        assert_eq!(t.entry(0, 0).unwrap(), ring.diag(&r, &ring.series(&[1])).unwrap());
        assert_eq!(t.entry(1, 1).unwrap(), ring.diag(&r, &ring.series(&[1])).unwrap());
        assert!(t.entry(0, 1).unwrap().get(0, 0).is_zero());
        assert!(t.det_e().is_err());
    }
}
