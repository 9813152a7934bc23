//! Exact Laurent polynomials over the rationals in `q`, with polynomial
//! dependence on the formal parameters `x`, `y`, `z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{rational_to_text, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("no value assigned to parameter {0}")]
    Unassigned(Param),
    #[error("singular specialization: {0} = 0 with a negative exponent")]
    Singular(Param),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Q,
    X,
    Y,
    Z,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::Q => "q",
            Param::X => "x",
            Param::Y => "y",
            Param::Z => "z",
        })
    }
}

/// Exponent vector `q^q x^x y^y z^z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub q: i32,
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, x: 0, y: 0, z: 0 };

    fn mul(self, o: Monomial) -> Monomial {
        Monomial {
            q: self.q + o.q,
            x: self.x + o.x,
            y: self.y + o.y,
            z: self.z + o.z,
        }
    }

    fn has_formal(&self) -> bool {
        self.x > 0 || self.y > 0 || self.z > 0
    }
}

/// A finitely supported map from monomials to nonzero rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(<Rational as One>::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPoly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        LaurentPoly::monomial(<Rational as One>::one(), Monomial { q: e, ..Monomial::ONE })
    }

    /// The parameter itself, as a degree-one monomial.
    pub fn param(p: Param) -> Self {
        let mut m = Monomial::ONE;
        match p {
            Param::Q => m.q = 1,
            Param::X => m.x = 1,
            Param::Y => m.y = 1,
            Param::Z => m.z = 1,
        }
        LaurentPoly::monomial(<Rational as One>::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether any of `x`, `y`, `z` occurs.
    pub fn has_formal_params(&self) -> bool {
        self.terms.keys().any(Monomial::has_formal)
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !Zero::is_zero(c) {
                    v.insert(c.clone());
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    pub fn plus(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn minus(&self, other: &LaurentPoly) -> LaurentPoly {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn times(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(*m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        (0..n).fold(LaurentPoly::one(), |acc, _| acc.times(self))
    }

    /// Substitutes numbers for the parameters occurring in `self`.
    pub fn eval<S: Scalar>(&self, assignment: &Assignment<S>) -> Result<S, CoeffError> {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut term = S::from_rational(c);
            for (param, e) in [
                (Param::Q, m.q),
                (Param::X, m.x as i32),
                (Param::Y, m.y as i32),
                (Param::Z, m.z as i32),
            ] {
                if e == 0 {
                    continue;
                }
                let v = assignment.get(param).ok_or(CoeffError::Unassigned(param))?;
                term = term.times(&v.powi(e).ok_or(CoeffError::Singular(param))?);
            }
            acc = acc.plus(&term);
        }
        Ok(acc)
    }
}

/// Values for the parameters of a [`LaurentPoly`].
#[derive(Clone, Debug)]
pub struct Assignment<S> {
    values: [Option<S>; 4],
}

impl<S: Scalar> Default for Assignment<S> {
    fn default() -> Self {
        Assignment {
            values: [None, None, None, None],
        }
    }
}

impl<S: Scalar> Assignment<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, v: S) -> Self {
        self.values[p as usize] = Some(v);
        self
    }

    pub fn get(&self, p: Param) -> Option<&S> {
        self.values[p as usize].as_ref()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    let mut factor = |f: &mut fmt::Formatter<'_>, name: &str, e: i64| -> fmt::Result {
        if e == 0 {
            return Ok(());
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)
        } else {
            write!(f, "{name}^{e}")
        }
    };
    factor(f, "x", m.x as i64)?;
    factor(f, "y", m.y as i64)?;
    factor(f, "z", m.z as i64)?;
    factor(f, "q", m.q as i64)
}

impl fmt::Display for LaurentPoly {
    /// Terms ordered by descending formal degree, then descending power of
    /// `q`, e.g. `1 - q^-2` or `x - q^-2*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse((m.x, m.y, m.z, m.q)));
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if *m == Monomial::ONE {
                f.write_str(&rational_to_text(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", rational_to_text(&abs))?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::from_int(c)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inherent:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inherent(self, rhs)
            }
        }
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inherent(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::negated(self)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::negated(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn q() -> LaurentPoly {
        LaurentPoly::param(Param::Q)
    }

    #[test]
    fn addition() {
        let a = LaurentPoly::one() - LaurentPoly::q_pow(-2);
        assert_eq!(&a + &LaurentPoly::q_pow(-2), LaurentPoly::one());
        let x = LaurentPoly::param(Param::X);
        assert_eq!(LaurentPoly::zero() + x.clone(), x);
        assert_eq!(q() + q(), LaurentPoly::from_int(2) * q());
        assert_eq!((q() + q()).to_string(), "2*q");
    }

    #[test]
    fn multiplication() {
        let a = LaurentPoly::one() - LaurentPoly::q_pow(-2);
        assert_eq!(a * LaurentPoly::q_pow(2), LaurentPoly::q_pow(2) - LaurentPoly::one());
        let xy = LaurentPoly::param(Param::X) * LaurentPoly::param(Param::Y);
        assert_eq!(xy.to_string(), "x*y");
        assert_eq!(LaurentPoly::q_pow(-1) * q(), LaurentPoly::one());
    }

    #[test]
    fn evaluation() {
        let a = LaurentPoly::one() - LaurentPoly::q_pow(-2);
        let at2 = Assignment::new().with(Param::Q, rat(2, 1));
        assert_eq!(a.eval(&at2).unwrap(), rat(3, 4));

        let at1 = Assignment::new().with(Param::Q, rat(1, 1));
        for a in 0..4 {
            for c in 0..4 {
                assert_eq!(LaurentPoly::q_pow(1 - a - c).eval(&at1).unwrap(), rat(1, 1));
            }
        }

        let x_minus_y = LaurentPoly::param(Param::X) - LaurentPoly::param(Param::Y);
        let at = Assignment::new()
            .with(Param::X, rat(1, 1))
            .with(Param::Y, rat(1, 9))
            .with(Param::Q, rat(3, 1));
        assert_eq!(x_minus_y.eval(&at).unwrap(), rat(8, 9));
    }

    #[test]
    fn evaluation_errors() {
        let p = LaurentPoly::q_pow(-1);
        let zero_q = Assignment::new().with(Param::Q, rat(0, 1));
        assert_eq!(p.eval(&zero_q), Err(CoeffError::Singular(Param::Q)));
        assert_eq!(q().eval(&zero_q).unwrap(), rat(0, 1));
        let x = LaurentPoly::param(Param::X);
        assert_eq!(x.eval(&zero_q), Err(CoeffError::Unassigned(Param::X)));
        assert_eq!(LaurentPoly::from_int(5).eval(&Assignment::<f64>::new()).unwrap(), 5.0);
    }

    #[test]
    fn display() {
        let a = LaurentPoly::one() - LaurentPoly::q_pow(-2);
        assert_eq!(a.to_string(), "1 - q^-2");
        let b = LaurentPoly::param(Param::X) - LaurentPoly::q_pow(-2) * LaurentPoly::param(Param::Y);
        assert_eq!(b.to_string(), "x - y*q^-2");
        assert_eq!(LaurentPoly::constant(rat(-1, 2)).to_string(), "-1/2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
