use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::intlinalg::IntegerMatrix;

/// Simply laced Dynkin types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl DynkinType {
    pub fn validate(self) -> Result<Self> {
        match self {
            DynkinType::A(n) if n < 1 => Err(Error::InvalidDynkin(format!("A_{n} needs n >= 1"))),
            DynkinType::D(n) if n < 4 => Err(Error::InvalidDynkin(format!("D_{n} needs n >= 4"))),
            t => Ok(t),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) => n,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
        }
    }

    /// Edges of the Dynkin graph on vertices `1..=rank` (Bourbaki labels).
    pub fn edges(self) -> Vec<(usize, usize)> {
        let path = |from: usize, to: usize| (from..to).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self {
            DynkinType::A(n) => path(1, n),
            DynkinType::D(n) => {
                let mut e = path(1, n - 2);
                e.push((n - 2, n - 1));
                e.push((n - 2, n));
                e
            }
            DynkinType::E6 | DynkinType::E7 | DynkinType::E8 => {
                let mut e = vec![(1, 3), (2, 4)];
                e.extend(path(3, self.rank()));
                e
            }
        }
    }

    /// Vertices adjacent to the extending vertex of the affine diagram.
    pub fn extending_neighbours(self) -> Vec<usize> {
        match self {
            DynkinType::A(1) => vec![1],
            DynkinType::A(n) => vec![1, n],
            DynkinType::D(_) => vec![2],
            DynkinType::E6 => vec![2],
            DynkinType::E7 => vec![1],
            DynkinType::E8 => vec![8],
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Accepts `A3`, `a_3`, `D5`, `E6`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidDynkin(format!("cannot parse {s:?}"));
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let digits = chars.as_str().trim_start_matches('_');
        let n: usize = digits.parse().map_err(|_| bad())?;
        let t = match (letter, n) {
            ('A', n) => DynkinType::A(n),
            ('D', n) => DynkinType::D(n),
            ('E', 6) => DynkinType::E6,
            ('E', 7) => DynkinType::E7,
            ('E', 8) => DynkinType::E8,
            _ => return Err(bad()),
        };
        t.validate()
    }
}

/// Cartan matrix: 2 on the diagonal, -1 on edges.
pub fn cartan_matrix(ty: DynkinType) -> Result<IntegerMatrix> {
    let ty = ty.validate()?;
    let n = ty.rank();
    let mut m = IntegerMatrix::zeros(n, n)?;
    for i in 0..n {
        m[(i, i)] = 2.into();
    }
    for (a, b) in ty.edges() {
        m[(a - 1, b - 1)] = (-1).into();
        m[(b - 1, a - 1)] = (-1).into();
    }
    Ok(m)
}

/// AR matrix of the rational double point of the given type: row 0 comes
/// from the extending vertex `M_0 = R`, rows `1..=t` are the Cartan matrix.
pub fn dynkin_upsilon(ty: DynkinType) -> Result<IntegerMatrix> {
    let cartan = cartan_matrix(ty)?;
    let n = cartan.rows();
    let mut m = IntegerMatrix::zeros(n + 1, n)?;
    for j in ty.extending_neighbours() {
        m[(0, j - 1)] = (-1).into();
    }
    for i in 0..n {
        for j in 0..n {
            m[(i + 1, j)] = cartan[(i, j)].clone();
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::is_injective;

    #[test]
    fn a1_and_a2() {
        let a1 = dynkin_upsilon(DynkinType::A(1)).unwrap();
        assert_eq!(a1, IntegerMatrix::from_rows(&[[-1], [2]]).unwrap());
        let a2 = cartan_matrix(DynkinType::A(2)).unwrap();
        assert_eq!(a2, IntegerMatrix::from_rows(&[[2, -1], [-1, 2]]).unwrap());
    }

    #[test]
    fn e6_lower_block_matches_surface_example() {
        // Bourbaki E6 relabelled: path 1-3-4-5-6 with 2 on 4.
        let m = dynkin_upsilon(DynkinType::E6).unwrap();
        assert_eq!(m.row(0).iter().filter(|x| **x == (-1).into()).count(), 1);
        assert!(is_injective(&m).unwrap());
    }

    #[test]
    fn parse_and_reject() {
        assert_eq!("E7".parse::<DynkinType>().unwrap(), DynkinType::E7);
        assert_eq!("a_4".parse::<DynkinType>().unwrap(), DynkinType::A(4));
        assert_eq!("D5".parse::<DynkinType>().unwrap(), DynkinType::D(5));
        assert!("D3".parse::<DynkinType>().is_err());
        assert!("A0".parse::<DynkinType>().is_err());
        assert!("E9".parse::<DynkinType>().is_err());
        assert!("F4".parse::<DynkinType>().is_err());
        assert!(cartan_matrix(DynkinType::D(2)).is_err());
    }

    #[test]
    fn extended_diagram_degrees() {
        // In the affine diagram every vertex of A_n (n >= 2) has degree 2.
        let n = 5;
        let ty = DynkinType::A(n);
        let mut deg = vec![0; n + 1];
        for (a, b) in ty.edges() {
            deg[a] += 1;
            deg[b] += 1;
        }
        for v in ty.extending_neighbours() {
            deg[v] += 1;
        }
        assert!(deg[1..].iter().all(|&d| d == 2));
    }
}
