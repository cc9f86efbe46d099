use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::k1::rng;

/// Largest ring the lab will enumerate.
pub const RING_SIZE_LIMIT: u64 = 100_000;

/// Matrix entries in row-major order; only the first `n * n` are used.
type Digits = [u64; 9];

/// The matrix ring `M_n(F_p)`; `n = 1` is the field itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixFactor {
    pub n: usize,
    pub p: u64,
}

impl MatrixFactor {
    pub fn new(n: usize, p: u64) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::Unsupported(format!("matrix size {n} (expected 1..=3)")));
        }
        if ![2, 3, 5].contains(&p) {
            return Err(Error::InvalidField(format!("F{p} (expected one of F2, F3, F5)")));
        }
        Ok(Self { n, p })
    }

    fn len(&self) -> usize {
        self.n * self.n
    }

    fn size(&self) -> u64 {
        self.p.pow(self.len() as u32)
    }

    fn mul(&self, a: &Digits, b: &Digits) -> Digits {
        let (n, p) = (self.n, self.p);
        let mut c = [0; 9];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i * n + j] = (c[i * n + j] + aik * b[k * n + j]) % p;
                }
            }
        }
        c
    }

    /// Gauss-Jordan inverse over `F_p`.
    fn inv(&self, a: &Digits) -> Option<Digits> {
        let (n, p) = (self.n, self.p);
        let mut m = [[0u64; 3]; 3];
        let mut r = [[0u64; 3]; 3];
        for i in 0..n {
            m[i][..n].copy_from_slice(&a[i * n..(i + 1) * n]);
            r[i][i] = 1;
        }
        for k in 0..n {
            let piv = (k..n).find(|&i| m[i][k] != 0)?;
            m.swap(k, piv);
            r.swap(k, piv);
            let s = mod_pow(m[k][k], p - 2, p);
            for j in 0..n {
                m[k][j] = m[k][j] * s % p;
                r[k][j] = r[k][j] * s % p;
            }
            for i in 0..n {
                if i != k && m[i][k] != 0 {
                    let f = p - m[i][k];
                    for j in 0..n {
                        m[i][j] = (m[i][j] + f * m[k][j]) % p;
                        r[i][j] = (r[i][j] + f * r[k][j]) % p;
                    }
                }
            }
        }
        let mut out = [0; 9];
        for i in 0..n {
            out[i * n..(i + 1) * n].copy_from_slice(&r[i][..n]);
        }
        Some(out)
    }
}

impl fmt::Display for MatrixFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "F{}", self.p)
        } else {
            write!(f, "M{}(F{})", self.n, self.p)
        }
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// A product of at most two matrix rings over small prime fields, with
/// elements encoded as mixed-radix integers (first factor in the low digits).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    factors: Vec<MatrixFactor>,
}

impl FiniteRing {
    pub fn new(factors: Vec<MatrixFactor>) -> Result<Self> {
        if factors.is_empty() || factors.len() > 2 {
            return Err(Error::Unsupported(format!("{} factors (expected 1 or 2)", factors.len())));
        }
        let size = factors.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.size()));
        match size {
            Some(s) if s <= RING_SIZE_LIMIT => {}
            _ => return Err(Error::SizeBound(format!("ring has more than {RING_SIZE_LIMIT} elements"))),
        }
        let ring = Self { factors };
        ring.spot_check_axioms()?;
        Ok(ring)
    }

    pub fn matrix(n: usize, p: u64) -> Result<Self> {
        Self::new(vec![MatrixFactor::new(n, p)?])
    }

    pub fn product(a: MatrixFactor, b: MatrixFactor) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn factors(&self) -> &[MatrixFactor] {
        &self.factors
    }

    pub fn size(&self) -> u64 {
        self.factors.iter().map(MatrixFactor::size).product()
    }

    pub fn is_commutative(&self) -> bool {
        self.factors.iter().all(|f| f.n == 1)
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        let mut parts = [[0; 9]; 2];
        for (f, part) in self.factors.iter().zip(&mut parts) {
            for i in 0..f.n {
                part[i * f.n + i] = 1;
            }
        }
        self.join(&parts)
    }

    /// Entry digits of each factor (row-major).
    pub fn decode(&self, code: u64) -> Vec<Vec<u64>> {
        let parts = self.split(code);
        self.factors.iter().zip(parts).map(|(f, d)| d[..f.len()].to_vec()).collect()
    }

    pub fn encode(&self, parts: &[Vec<u64>]) -> u64 {
        let mut digits = [[0; 9]; 2];
        for ((f, part), d) in self.factors.iter().zip(parts).zip(&mut digits) {
            d[..f.len()].copy_from_slice(&part[..f.len()]);
        }
        self.join(&digits)
    }

    fn split(&self, mut code: u64) -> [Digits; 2] {
        let mut parts = [[0; 9]; 2];
        for (f, part) in self.factors.iter().zip(&mut parts) {
            for d in part.iter_mut().take(f.len()) {
                *d = code % f.p;
                code /= f.p;
            }
        }
        parts
    }

    fn join(&self, parts: &[Digits; 2]) -> u64 {
        let mut code = 0;
        let mut scale = 1;
        for (f, part) in self.factors.iter().zip(parts) {
            for &d in &part[..f.len()] {
                code += d * scale;
                scale *= f.p;
            }
        }
        code
    }

    fn zip_with(&self, a: u64, b: u64, op: impl Fn(&MatrixFactor, &Digits, &Digits) -> Digits) -> u64 {
        let (da, db) = (self.split(a), self.split(b));
        let mut out = [[0; 9]; 2];
        for (k, f) in self.factors.iter().enumerate() {
            out[k] = op(f, &da[k], &db[k]);
        }
        self.join(&out)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.zip_with(a, b, |f, x, y| std::array::from_fn(|k| (x[k] + y[k]) % f.p))
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.zip_with(a, 0, |f, x, _| std::array::from_fn(|k| (f.p - x[k]) % f.p))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.zip_with(a, b, |f, x, y| f.mul(x, y))
    }

    /// Two-sided inverse, if `a` is a unit.
    pub fn inverse(&self, a: u64) -> Option<u64> {
        let da = self.split(a);
        let mut out = [[0; 9]; 2];
        for (k, f) in self.factors.iter().enumerate() {
            out[k] = f.inv(&da[k])?;
        }
        Some(self.join(&out))
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = u64> {
        0..self.size()
    }

    /// Ring axioms on seeded random triples.
    fn spot_check_axioms(&self) -> Result<()> {
        let mut r = rng(0x7269_6e67);
        let one = self.one();
        for _ in 0..64 {
            let [a, b, c] = [0; 3].map(|_| r.gen_range(0..self.size()));
            let ok = self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                && self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
                && self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c))
                && self.add(a, b) == self.add(b, a)
                && self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                && self.mul(a, one) == a
                && self.mul(one, a) == a
                && self.add(a, self.neg(a)) == 0;
            if !ok {
                return Err(Error::Internal(format!("ring axioms fail in {self} on ({a}, {b}, {c})")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Short names: `F5`, `M2F2`, `M3F2`, products joined by `x` (`F2xF2`).
impl FromStr for FiniteRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = s.split(['x', 'X', '*']).map(parse_factor).collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }
}

fn parse_factor(s: &str) -> Result<MatrixFactor> {
    let bad = || Error::Unsupported(format!("ring name {s:?} (expected e.g. F5, M2F2)"));
    let t = s.trim().replace(['(', ')'], "");
    let (n, rest) = match t.strip_prefix(['M', 'm']) {
        Some(rest) => {
            let idx = rest.find(['F', 'f']).ok_or_else(bad)?;
            (rest[..idx].parse::<usize>().map_err(|_| bad())?, &rest[idx..])
        }
        None => (1, t.as_str()),
    };
    let p = rest.strip_prefix(['F', 'f']).ok_or_else(bad)?.parse::<u64>().map_err(|_| bad())?;
    MatrixFactor::new(n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("M2F2".parse::<FiniteRing>().unwrap().to_string(), "M2(F2)");
        assert_eq!("F2xF2".parse::<FiniteRing>().unwrap().to_string(), "F2 x F2");
        assert_eq!("M3(F2)".parse::<FiniteRing>().unwrap().size(), 512);
        assert!("M4F2".parse::<FiniteRing>().is_err());
        assert!("F7".parse::<FiniteRing>().is_err());
        assert!(matches!("M3F5".parse::<FiniteRing>(), Err(Error::SizeBound(_))));
    }

    #[test]
    fn encode_round_trip() {
        let a = FiniteRing::product(MatrixFactor::new(2, 3).unwrap(), MatrixFactor::new(1, 5).unwrap()).unwrap();
        for x in a.elements() {
            assert_eq!(a.encode(&a.decode(x)), x);
        }
        assert_eq!(a.decode(a.one()), vec![vec![1, 0, 0, 1], vec![1]]);
    }

    #[test]
    fn inverses() {
        let a = FiniteRing::matrix(2, 3).unwrap();
        let units = a.elements().filter(|&x| a.inverse(x).is_some()).count();
        assert_eq!(units, 48);
        for x in a.elements() {
            if let Some(y) = a.inverse(x) {
                assert_eq!(a.mul(x, y), a.one());
                assert_eq!(a.mul(y, x), a.one());
            }
        }
    }
}
