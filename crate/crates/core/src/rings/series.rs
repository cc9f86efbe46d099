use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, FieldElem};
use crate::error::{Error, Result};

/// Which exponents a truncated series may use, tracked by the three
/// classes `{0}`, `{1}` and `{2, 3, ...}`. That is enough to describe
/// `k[[T]]`, the cusp ring `k[[T^2, T^3]]` and its maximal ideal, and the
/// dual numbers with their maximal ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Support {
    pub constant: bool,
    pub linear: bool,
    pub higher: bool,
}

impl Support {
    /// All of `k[[T]]`.
    pub const FULL: Support = Support { constant: true, linear: true, higher: true };
    /// `k[[T^2, T^3]]`: no `T^1` term.
    pub const SEMIGROUP: Support = Support { constant: true, linear: false, higher: true };
    /// `(T^2, T^3)`: no `T^0` or `T^1` term.
    pub const IDEAL: Support = Support { constant: false, linear: false, higher: true };
    /// Series without constant term, e.g. the ideal `(X)` of the dual numbers.
    pub const MAXIMAL: Support = Support { constant: false, linear: true, higher: true };
    /// Constants only.
    pub const SCALAR: Support = Support { constant: true, linear: false, higher: false };

    pub fn allows(self, exponent: usize) -> bool {
        match exponent {
            0 => self.constant,
            1 => self.linear,
            _ => self.higher,
        }
    }

    fn is_empty(self) -> bool {
        !(self.constant || self.linear || self.higher)
    }

    /// Exponent classes reachable by adding one exponent from each side.
    pub fn sum(self, other: Support) -> Support {
        if self.is_empty() || other.is_empty() {
            return Support { constant: false, linear: false, higher: false };
        }
        Support {
            constant: self.constant && other.constant,
            linear: (self.constant && other.linear) || (self.linear && other.constant),
            higher: self.higher || other.higher || (self.linear && other.linear),
        }
    }

    pub fn union(self, other: Support) -> Support {
        Support {
            constant: self.constant || other.constant,
            linear: self.linear || other.linear,
            higher: self.higher || other.higher,
        }
    }

    pub fn contains(self, other: Support) -> bool {
        self.union(other) == self
    }

    pub fn name(self) -> &'static str {
        match self {
            Support::FULL => "full",
            Support::SEMIGROUP => "semigroup",
            Support::IDEAL => "ideal",
            Support::MAXIMAL => "maximal",
            Support::SCALAR => "scalar",
            _ => "custom",
        }
    }
}

/// Element of `k[[T]]/(T^N)` with a declared support constraint.
///
/// Equality compares field and coefficients only; the support is a
/// constraint on the value, not part of it.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    field: Field,
    support: Support,
    coeffs: Vec<FieldElem>,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for TruncatedSeries {}

impl std::hash::Hash for TruncatedSeries {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.coeffs.hash(state);
    }
}

impl TruncatedSeries {
    /// Coefficients past `precision` are dropped; missing ones are zero.
    pub fn new(
        field: Field,
        precision: usize,
        mut coeffs: Vec<FieldElem>,
        support: Support,
    ) -> Result<Self> {
        if precision < 2 {
            return Err(Error::InvalidPrecision(precision));
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        coeffs.truncate(precision);
        coeffs.resize(precision, field.zero());
        let s = Self { field, support, coeffs };
        s.check_support(support)?;
        Ok(s)
    }

    pub fn from_i64(field: Field, precision: usize, coeffs: &[i64], support: Support) -> Result<Self> {
        Self::new(field, precision, coeffs.iter().map(|&c| field.from_i64(c)).collect(), support)
    }

    pub fn zero(field: Field, precision: usize) -> Result<Self> {
        Self::new(field, precision, vec![], Support::FULL)
    }

    pub fn one(field: Field, precision: usize) -> Result<Self> {
        Self::constant(field.one(), precision)
    }

    pub fn constant(c: FieldElem, precision: usize) -> Result<Self> {
        Self::new(c.field(), precision, vec![c], Support::FULL)
    }

    /// `c * T^exponent`, zero when the exponent is past the precision.
    pub fn monomial(c: FieldElem, exponent: usize, precision: usize) -> Result<Self> {
        let field = c.field();
        let mut coeffs = vec![field.zero(); exponent.min(precision)];
        coeffs.push(c);
        Self::new(field, precision, coeffs, Support::FULL)
    }

    /// `a + bX` in the dual numbers `k[X]/(X^2)`.
    pub fn dual_number(a: FieldElem, b: FieldElem) -> Result<Self> {
        let field = a.field();
        Self::new(field, 2, vec![a, b], Support::FULL)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: usize) -> FieldElem {
        self.coeffs.get(exponent).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> &FieldElem {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(FieldElem::is_zero)
    }

    /// Units of a truncated local series ring are exactly the series with
    /// nonzero constant term.
    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    fn check_support(&self, support: Support) -> Result<()> {
        match self.coeffs.iter().enumerate().find(|(i, c)| !support.allows(*i) && !c.is_zero()) {
            Some((exponent, _)) => Err(Error::SupportViolation { exponent, support: support.name().into() }),
            None => Ok(()),
        }
    }

    /// Re-declares the support after checking the coefficients fit.
    pub fn with_support(mut self, support: Support) -> Result<Self> {
        self.check_support(support)?;
        self.support = support;
        Ok(self)
    }

    /// Drops every coefficient outside `support`. Used for quotients, e.g.
    /// multipliers on the dual-number ideal `(X)`, where `X` acts as zero.
    pub fn restrict(&self, support: Support) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if support.allows(i) { c.clone() } else { self.field.zero() })
            .collect();
        Self { field: self.field, support, coeffs }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.precision() != other.precision() {
            return Err(Error::PrecisionMismatch(self.precision(), other.precision()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { field: self.field, support: self.support.union(other.support), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Product truncated at the common precision; the support of the
    /// result is the sum of the operand supports.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.precision();
        let mut coeffs = vec![self.field.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(Self { field: self.field, support: self.support.sum(other.support), coeffs })
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self {
            field: self.field,
            support: self.support,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Two-sided inverse, defined exactly when the constant term is nonzero.
    pub fn inv(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0]
            .inv()
            .map_err(|_| Error::NotAUnit(format!("{self} has zero constant term")))?;
        let n = self.precision();
        let mut out: Vec<FieldElem> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = self.field.zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc = &acc + &(&self.coeffs[i] * &out[k - i]);
                }
            }
            out.push(-&(&acc * &c0_inv));
        }
        Ok(Self { field: self.field, support: self.support, coeffs: out })
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.field, self.precision()).expect("precision already valid");
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Renders with the given variable name, e.g. `2+3X` or `1-T^2`.
    pub fn display_with(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative_literal();
            let abs = if negative { -c } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("T"))
    }
}

/// Operator forms panic on incompatible operands; use the `checked_*`
/// methods where mismatches are a recoverable condition.
impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
        self.checked_add(rhs).expect("incompatible series operands")
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
        self.checked_sub(rhs).expect("incompatible series operands")
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
        self.checked_mul(rhs).expect("incompatible series operands")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            field: self.field,
            support: self.support,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.checked_mul(b)
}

pub fn series_inv(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.inv()
}

/// Membership in `k[[T^2, T^3]]`: the `T^1` coefficient vanishes.
pub fn cusp_ring_member(a: &TruncatedSeries) -> bool {
    a.coeff(1).is_zero()
}

/// `chi(h)`: multiplication by `h` on the cusp maximal ideal `(T^2, T^3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealEndomorphism {
    multiplier: TruncatedSeries,
}

pub fn chi(h: &TruncatedSeries) -> IdealEndomorphism {
    IdealEndomorphism { multiplier: h.clone().with_support(Support::FULL).expect("full support admits everything") }
}

impl IdealEndomorphism {
    pub fn multiplier(&self) -> &TruncatedSeries {
        &self.multiplier
    }

    pub fn apply(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        let x = x.clone().with_support(Support::IDEAL)?;
        self.multiplier.checked_mul(&x)?.with_support(Support::IDEAL)
    }

    pub fn is_automorphism(&self) -> bool {
        self.multiplier.is_unit()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self { multiplier: self.multiplier.checked_mul(&other.multiplier)? })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self { multiplier: self.multiplier.inv()? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn s(c: &[i64], n: usize) -> TruncatedSeries {
        TruncatedSeries::from_i64(f5(), n, c, Support::FULL).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&s(&[1, 1], 4) * &s(&[1, -1], 4), s(&[1, 0, -1], 4));
    }

    #[test]
    fn cusp_monomials_multiply_in_semigroup() {
        let t2 = TruncatedSeries::from_i64(f5(), 8, &[0, 0, 1], Support::IDEAL).unwrap();
        let t3 = TruncatedSeries::from_i64(f5(), 8, &[0, 0, 0, 1], Support::IDEAL).unwrap();
        let p = series_mul(&t2, &t3).unwrap();
        assert_eq!(p, s(&[0, 0, 0, 0, 0, 1], 8));
        assert_eq!(p.support(), Support::IDEAL);
        assert!(cusp_ring_member(&p));
    }

    #[test]
    fn mismatches_are_errors() {
        assert_eq!(s(&[1], 4).checked_mul(&s(&[1], 5)), Err(Error::PrecisionMismatch(4, 5)));
        let q = TruncatedSeries::one(Field::rational(), 4).unwrap();
        assert_eq!(s(&[1], 4).checked_add(&q), Err(Error::FieldMismatch));
        assert!(TruncatedSeries::zero(f5(), 1).is_err());
    }

    #[test]
    fn support_is_enforced() {
        let bad = TruncatedSeries::from_i64(f5(), 4, &[0, 1], Support::SEMIGROUP);
        assert!(matches!(bad, Err(Error::SupportViolation { exponent: 1, .. })));
        assert!(TruncatedSeries::from_i64(f5(), 4, &[1], Support::IDEAL).is_err());
    }

    #[test]
    fn support_sums() {
        assert_eq!(Support::FULL.sum(Support::IDEAL), Support::IDEAL);
        assert_eq!(Support::SEMIGROUP.sum(Support::SEMIGROUP), Support::SEMIGROUP);
        assert_eq!(Support::SEMIGROUP.sum(Support::IDEAL), Support::IDEAL);
        assert_eq!(Support::SCALAR.sum(Support::MAXIMAL), Support::MAXIMAL);
        assert_eq!(Support::FULL.sum(Support::SEMIGROUP), Support::FULL);
    }

    #[test]
    fn inverses() {
        let one = s(&[1], 6);
        assert_eq!(one.inv().unwrap(), one);
        let f = f5();
        let (a, b) = (f.from_i64(2), f.from_i64(3));
        let x = TruncatedSeries::dual_number(a.clone(), b.clone()).unwrap();
        let a_inv = a.inv().unwrap();
        let expected = TruncatedSeries::dual_number(a_inv.clone(), -&(&(&a_inv * &a_inv) * &b)).unwrap();
        assert_eq!(x.inv().unwrap(), expected);
        assert!(s(&[0, 1], 4).inv().is_err());
    }

    #[test]
    fn inverse_preserves_semigroup_support() {
        let x = TruncatedSeries::from_i64(f5(), 8, &[2, 0, 1, 3, 0, 4], Support::SEMIGROUP).unwrap();
        let y = x.inv().unwrap();
        assert!(cusp_ring_member(&y));
        assert!((&x * &y).is_one());
    }

    #[test]
    fn membership() {
        assert!(cusp_ring_member(&s(&[1, 0, 1], 4)));
        assert!(!cusp_ring_member(&s(&[0, 1], 4)));
        assert!(cusp_ring_member(&s(&[0, 0, 0, 1], 4)));
    }

    #[test]
    fn chi_acts_on_maximal_ideal() {
        let id = chi(&s(&[1], 8));
        let t2 = s(&[0, 0, 1], 8);
        assert_eq!(id.apply(&t2).unwrap(), t2);
        let by_t = chi(&s(&[0, 1], 8));
        assert_eq!(by_t.apply(&t2).unwrap(), s(&[0, 0, 0, 1], 8));
        assert!(!by_t.is_automorphism());
        assert!(chi(&s(&[3, 1], 8)).is_automorphism());
        assert!(by_t.apply(&s(&[1], 8)).is_err());
    }

    #[test]
    fn display() {
        let f = f5();
        assert_eq!(TruncatedSeries::dual_number(f.from_i64(2), f.from_i64(3)).unwrap().display_with("X"), "2+3X");
        assert_eq!(s(&[1, 0, 1], 4).to_string(), "1+T^2");
        assert_eq!(s(&[0, 1], 4).to_string(), "T");
        assert_eq!(s(&[], 4).to_string(), "0");
        let q = TruncatedSeries::new(
            Field::rational(),
            3,
            vec![FieldElem::rational(1, 2), FieldElem::rational(-3, 1)],
            Support::FULL,
        )
        .unwrap();
        assert_eq!(q.display_with("X"), "1/2-3X");
    }
}
