//! Number types used when braid-ring elements are specialized to matrices.
//!
//! [`Scalar`] is implemented for exact rationals ([`Rational`]), `f64` and
//! [`Complex64`]. Exact types compare residuals against zero; inexact ones
//! against a tolerance.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse number {0:?}")]
pub struct ParseScalarError(pub String);

pub trait Scalar: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// Whether arithmetic is exact, so that equality means `is_zero` of the
    /// difference rather than a tolerance test.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn recip(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    /// Absolute value as a float, used for residuals and pivoting.
    fn magnitude(&self) -> f64;
    fn to_text(&self) -> String;
    fn parse_text(s: &str) -> Result<Self, ParseScalarError>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    /// Integer power; `None` for a negative power of zero.
    fn powi(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.times(&sq);
            }
        }
        Some(acc)
    }
}

/// Parses `"p/q"`, integers and decimals (with optional exponent) exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let err = || ParseScalarError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| err())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().map_err(|_| err())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, scale.unsigned_abs() as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Text form `p/q` (or `p` for integers).
pub fn rational_to_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(num_traits::Inv::inv(self))
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_text(&self) -> String {
        rational_to_text(self)
    }
    fn parse_text(s: &str) -> Result<Self, ParseScalarError> {
        parse_rational(s)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_text(&self) -> String {
        // Display prints the shortest string that parses back to the same bits.
        format!("{self}")
    }
    fn parse_text(s: &str) -> Result<Self, ParseScalarError> {
        let t = s.trim();
        if t.contains('/') {
            return parse_rational(t).map(|r| Self::from_rational(&r));
        }
        t.parse().map_err(|_| ParseScalarError(s.to_string()))
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(f64::from_rational(r), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_text(&self) -> String {
        format!("{}", self)
    }
    fn parse_text(s: &str) -> Result<Self, ParseScalarError> {
        s.trim().parse().map_err(|_| ParseScalarError(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("3/4").unwrap(), r(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), r(-3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("-1.5e2").unwrap(), r(-150, 1));
        assert_eq!(parse_rational("2.5E-1").unwrap(), r(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        for bad in ["", "1/0", "abc", "1.2.3", "--1", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn text_round_trips() {
        for v in [r(1, 3), r(-7, 2), r(5, 1), r(0, 1)] {
            assert_eq!(Rational::parse_text(&v.to_text()).unwrap(), v);
        }
        for v in [0.1f64, -3.25, 1e-300, 2.0 / 3.0] {
            assert_eq!(f64::parse_text(&v.to_text()).unwrap().to_bits(), v.to_bits());
        }
        let c = Complex64::new(1.5, -2.0);
        assert_eq!(Complex64::parse_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn integer_powers() {
        assert_eq!(r(2, 1).powi(-3).unwrap(), r(1, 8));
        assert_eq!(r(-3, 2).powi(3).unwrap(), r(-27, 8));
        assert_eq!(r(5, 1).powi(0).unwrap(), r(1, 1));
        assert!(<Rational as Scalar>::zero().powi(-1).is_none());
        assert_eq!(Scalar::powi(&2.0f64, 10).unwrap(), 1024.0);
    }
}
