//! The ring of the positive braid monoid `B_∞^+` with [`LaurentPoly`]
//! coefficients.
//!
//! Elements are finitely supported maps from normal forms to nonzero
//! coefficients. No ambient strand count is stored; elements live in the
//! inductive limit and membership in `B_a` is only checked by [`RingElement::flip`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::LazyLock;

use crate::braid::{BraidError, NormalForm, PositiveWord};
use crate::coeff::LaurentPoly;
use crate::memo::Memo;

static BASIS_PRODUCTS: LazyLock<Memo<(NormalForm, NormalForm), NormalForm>> =
    LazyLock::new(Memo::new);

/// Product of two basis braids, memoized.
pub fn basis_product(a: &NormalForm, b: &NormalForm) -> NormalForm {
    if a.is_identity() {
        return b.clone();
    }
    if b.is_identity() {
        return a.clone();
    }
    BASIS_PRODUCTS.get_or_insert_with((a.clone(), b.clone()), || a.mul(b))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    terms: BTreeMap<NormalForm, LaurentPoly>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn one() -> Self {
        RingElement::scalar(LaurentPoly::one())
    }

    /// `c · 1`.
    pub fn scalar(c: LaurentPoly) -> Self {
        RingElement::term(NormalForm::identity(), c)
    }

    pub fn term(basis: NormalForm, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(basis, c);
        }
        RingElement { terms }
    }

    pub fn basis(basis: NormalForm) -> Self {
        RingElement::term(basis, LaurentPoly::one())
    }

    /// The braid named by `w`, with coefficient 1.
    pub fn word(w: &PositiveWord) -> Self {
        RingElement::basis(w.normal_form())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NormalForm, LaurentPoly)>) -> Self {
        let mut out = RingElement::zero();
        for (b, c) in terms {
            out.add_term(b, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalForm, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Number of basis braids in the support.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, basis: &NormalForm) -> LaurentPoly {
        self.terms.get(basis).cloned().unwrap_or_default()
    }

    /// Smallest `n` with every basis braid in `B_n`.
    pub fn strands(&self) -> u32 {
        self.terms.keys().map(NormalForm::strands).max().unwrap_or(0)
    }

    pub fn has_formal_params(&self) -> bool {
        self.terms.values().any(LaurentPoly::has_formal_params)
    }

    fn add_term(&mut self, basis: NormalForm, c: &LaurentPoly) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().plus(c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn plus(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c);
        }
        out
    }

    pub fn minus(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), &c.negated());
        }
        out
    }

    pub fn negated(&self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c.negated())).collect(),
        }
    }

    /// Bilinear extension of the monoid product.
    pub fn times(&self, other: &RingElement) -> RingElement {
        if self.is_zero() || other.is_zero() {
            return RingElement::zero();
        }
        let mut out = RingElement::zero();
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                out.add_term(basis_product(b1, b2), &c1.times(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> RingElement {
        if c.is_zero() {
            return RingElement::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(b, v)| (b.clone(), v.times(c))).collect(),
        }
    }

    /// The shift endomorphism `σ_i ↦ σ_{i+ℓ}`, extended linearly.
    pub fn shift(&self, ell: u32) -> RingElement {
        if ell == 0 {
            return self.clone();
        }
        RingElement {
            terms: self.terms.iter().map(|(b, c)| (b.shift(ell), c.clone())).collect(),
        }
    }

    /// The automorphism `σ_i ↦ σ_{a-i}` of `B_a`, applied to every basis
    /// word and re-normalized. Fails if some basis braid is not in `B_a`.
    pub fn flip(&self, a: u32) -> Result<RingElement, BraidError> {
        let mut out = RingElement::zero();
        for (b, c) in &self.terms {
            let flipped = b.word().flip(a)?;
            out.add_term(flipped.normal_form(), c);
        }
        Ok(out)
    }

    /// Report form: `(word, coefficient text)` pairs sorted by word.
    pub fn to_report(&self) -> Vec<(Vec<u32>, String)> {
        let mut rows: Vec<(Vec<u32>, String)> = self
            .terms
            .iter()
            .map(|(b, c)| (b.word().letters().to_vec(), c.to_string()))
            .collect();
        rows.sort();
        rows
    }
}

impl fmt::Display for RingElement {
    /// Basis braids print as `s1s2.s1` (factors separated by dots).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if b.is_identity() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "({c})*{b}")?;
            }
        }
        Ok(())
    }
}

impl From<LaurentPoly> for RingElement {
    fn from(c: LaurentPoly) -> Self {
        RingElement::scalar(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inherent:ident) => {
        impl $tr<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                RingElement::$inherent(self, rhs)
            }
        }
        impl $tr for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                RingElement::$inherent(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::negated(self)
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::negated(&self)
    }
}
