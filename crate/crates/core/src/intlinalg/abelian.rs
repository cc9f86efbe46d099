use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntegerMatrix};
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_s`
/// with `d_1 | d_2 | ... | d_s`, every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if let Some(bad) = torsion.iter().find(|d| *d < &BigInt::from(2)) {
            return Err(Error::DimensionMismatch(format!("invariant factor {bad} is below 2")));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::DimensionMismatch("invariant factors must form a divisibility chain".into()));
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Group order, `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^rows / im(m)` for `m` viewed as a map `Z^cols -> Z^rows`.
pub fn cokernel(m: &IntegerMatrix) -> Result<FgAbelianGroup> {
    let snf = smith_normal_form(m)?;
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    let torsion = diag.into_iter().filter(|x| x.abs() > BigInt::one()).collect();
    FgAbelianGroup::new(m.rows() - rank, torsion)
}

pub fn rank(m: &IntegerMatrix) -> Result<usize> {
    Ok(smith_normal_form(m)?.rank())
}

/// True iff `m: Z^cols -> Z^rows` has trivial kernel.
pub fn is_injective(m: &IntegerMatrix) -> Result<bool> {
    Ok(rank(m)? == m.cols())
}
