use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A coefficient field of characteristic other than 2: `F_p` for an odd
/// prime `p`, or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rational,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("{p} exceeds the supported prime range")));
        }
        Ok(Field::Prime(p))
    }

    pub fn rational() -> Self {
        Field::Rational
    }

    pub fn zero(self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, x: i64) -> FieldElem {
        match self {
            Field::Prime(p) => FieldElem::Mod { value: x.rem_euclid(p as i64) as u64, p },
            Field::Rational => FieldElem::Rat(BigRational::from_integer(x.into())),
        }
    }

    /// Exact rational `num/den`; over `F_p` the denominator is inverted.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<FieldElem> {
        let d = self.from_i64(den).inv()?;
        Ok(self.from_i64(num) * d)
    }

    /// All elements of a finite field in increasing representative order.
    pub fn elements(self) -> Option<Vec<FieldElem>> {
        match self {
            Field::Prime(p) => Some((0..p).map(|v| FieldElem::Mod { value: v, p }).collect()),
            Field::Rational => None,
        }
    }

    pub fn units(self) -> Option<Vec<FieldElem>> {
        self.elements().map(|e| e.into_iter().skip(1).collect())
    }

    pub fn size(self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(p),
            Field::Rational => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// `Q`, or a prime written as `5` or `F5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let digits = s.strip_prefix(['F', 'f']).unwrap_or(s);
        let p: u64 =
            digits.parse().map_err(|_| Error::InvalidField(format!("cannot parse field {s:?}")))?;
        Field::prime(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Mod { value: u64, p: u64 },
    Rat(BigRational),
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Mod { p, .. } => Field::Prime(*p),
            FieldElem::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Mod { value, .. } => *value == 0,
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Mod { value, .. } => *value == 1,
            FieldElem::Rat(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::NotAUnit("zero has no inverse".into()));
        }
        Ok(match self {
            FieldElem::Mod { value, p } => FieldElem::Mod { value: pow_mod(*value, p - 2, *p), p: *p },
            FieldElem::Rat(r) => FieldElem::Rat(r.recip()),
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Whether `self` prints with a leading minus sign.
    pub(crate) fn is_negative_literal(&self) -> bool {
        matches!(self, FieldElem::Rat(r) if r.is_negative())
    }

    fn check(&self, other: &FieldElem) {
        assert_eq!(self.field(), other.field(), "operands from different fields");
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Mod { value, .. } => write!(f, "{value}"),
            FieldElem::Rat(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            FieldElem::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        self.check(rhs);
        match (self, rhs) {
            (FieldElem::Mod { value: a, p }, FieldElem::Mod { value: b, .. }) => {
                FieldElem::Mod { value: (a + b) % p, p: *p }
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        self.check(rhs);
        match (self, rhs) {
            (FieldElem::Mod { value: a, p }, FieldElem::Mod { value: b, .. }) => {
                FieldElem::Mod { value: mul_mod(*a, *b, *p), p: *p }
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Mod { value, p } => FieldElem::Mod { value: (p - value) % p, p: *p },
            FieldElem::Rat(r) => FieldElem::Rat(-r),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl From<BigRational> for FieldElem {
    fn from(r: BigRational) -> Self {
        FieldElem::Rat(r)
    }
}

impl FieldElem {
    pub fn rational(num: i64, den: i64) -> FieldElem {
        FieldElem::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_characteristic_two_and_composites() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(7).is_ok());
        assert!("F2".parse::<Field>().is_err());
        assert_eq!("F5".parse::<Field>().unwrap(), Field::Prime(5));
        assert_eq!("5".parse::<Field>().unwrap(), Field::Prime(5));
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        assert_eq!(&three * &three.inv().unwrap(), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(three.pow(6), f.one());
        assert_eq!(f.from_ratio(1, 2).unwrap(), f.from_i64(4));
        assert!(f.zero().inv().is_err());
    }

    #[test]
    fn rational_arithmetic() {
        let f = Field::rational();
        let x = FieldElem::rational(2, 3);
        assert_eq!(&x * &x.inv().unwrap(), f.one());
        assert_eq!((&x - &x), f.zero());
        assert_eq!(x.to_string(), "2/3");
        assert_eq!(f.from_i64(-4).to_string(), "-4");
    }
}
