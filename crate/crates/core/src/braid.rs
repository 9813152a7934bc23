//! Positive braid words and their left-greedy (Garside) normal forms.
//!
//! A positive word is a product of Artin generators `σ_i`, `i ≥ 1`, with no
//! inverses. Two words name the same braid iff they are related by the braid
//! relation `σ_iσ_{i+1}σ_i = σ_{i+1}σ_iσ_{i+1}` and far commutativity
//! `σ_iσ_j = σ_jσ_i` for `|i - j| > 1`. Equality is decided by computing the
//! left-weighted factorization into simple elements (permutation braids).
//!
//! Simple elements are stored as permutations with trailing fixed points
//! trimmed, so a normal form does not depend on the ambient strand count: a
//! braid in `B_n` has the same normal form when viewed inside `B_{n+1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("generator index must be at least 1, got {0}")]
    InvalidGenerator(i64),
    #[error("letter σ_{letter} does not lie in B_{ambient}")]
    OutOfRange { letter: u32, ambient: u32 },
    #[error("not a permutation braid: {0:?}")]
    NotAPermutation(Vec<u8>),
    #[error("cannot parse braid word {0:?}")]
    Parse(String),
}

/// Index `i` of the Artin generator `σ_i`; always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorIndex(u32);

impl GeneratorIndex {
    pub fn new(i: u32) -> Result<Self, BraidError> {
        if i == 0 {
            return Err(BraidError::InvalidGenerator(0));
        }
        Ok(GeneratorIndex(i))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// A word in the positive braid monoid. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct PositiveWord {
    letters: Vec<u32>,
}

impl TryFrom<Vec<u32>> for PositiveWord {
    type Error = BraidError;

    fn try_from(letters: Vec<u32>) -> Result<Self, Self::Error> {
        PositiveWord::new(letters)
    }
}

impl From<PositiveWord> for Vec<u32> {
    fn from(w: PositiveWord) -> Self {
        w.letters
    }
}

impl PositiveWord {
    pub fn identity() -> Self {
        PositiveWord { letters: Vec::new() }
    }

    pub fn new(letters: Vec<u32>) -> Result<Self, BraidError> {
        if letters.contains(&0) {
            return Err(BraidError::InvalidGenerator(0));
        }
        Ok(PositiveWord { letters })
    }

    pub fn from_generators(gens: impl IntoIterator<Item = GeneratorIndex>) -> Self {
        PositiveWord {
            letters: gens.into_iter().map(GeneratorIndex::get).collect(),
        }
    }

    /// The single-letter word `σ_i`.
    pub fn generator(i: GeneratorIndex) -> Self {
        PositiveWord { letters: vec![i.get()] }
    }

    /// Callers guarantee that every letter is at least 1.
    pub(crate) fn from_raw(letters: Vec<u32>) -> Self {
        debug_assert!(!letters.contains(&0));
        PositiveWord { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Smallest `n` with the word in `B_n`: the largest letter plus one, or 0
    /// for the empty word.
    pub fn strands(&self) -> u32 {
        self.letters.iter().max().map_or(0, |m| m + 1)
    }

    /// Monoid product: the letters of `self` followed by those of `other`.
    pub fn compose(&self, other: &PositiveWord) -> PositiveWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        PositiveWord { letters }
    }

    /// The shift endomorphism `σ_i ↦ σ_{i+ℓ}`.
    pub fn shift(&self, ell: u32) -> PositiveWord {
        PositiveWord {
            letters: self.letters.iter().map(|&i| i + ell).collect(),
        }
    }

    /// The automorphism `σ_i ↦ σ_{a-i}` of `B_a`.
    pub fn flip(&self, a: u32) -> Result<PositiveWord, BraidError> {
        let letters = self
            .letters
            .iter()
            .map(|&i| {
                if i >= a {
                    Err(BraidError::OutOfRange { letter: i, ambient: a })
                } else {
                    Ok(a - i)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PositiveWord { letters })
    }

    pub fn normal_form(&self) -> NormalForm {
        let n = self.strands().max(1) as usize;
        let factors = self
            .letters
            .iter()
            .map(|&i| {
                let mut p = identity_perm(n);
                p.swap(i as usize - 1, i as usize);
                p
            })
            .collect();
        NormalForm::from_padded(factors)
    }
}

impl fmt::Display for PositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for PositiveWord {
    type Err = BraidError;

    /// Parses whitespace- or comma-separated generator indices, e.g. `"1 2 1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let v: i64 = t.parse().map_err(|_| BraidError::Parse(s.to_string()))?;
                if v < 1 || v > u32::MAX as i64 {
                    return Err(BraidError::InvalidGenerator(v));
                }
                Ok(v as u32)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PositiveWord { letters })
    }
}

fn identity_perm(n: usize) -> Vec<u8> {
    (0..n as u8).collect()
}

fn trim(mut p: Vec<u8>) -> Vec<u8> {
    while let Some(&last) = p.last() {
        if last as usize == p.len() - 1 {
            p.pop();
        } else {
            break;
        }
    }
    p
}

fn pad(p: &[u8], n: usize) -> Vec<u8> {
    let mut v = p.to_vec();
    v.extend(p.len() as u8..n as u8);
    v
}

/// A permutation braid: every pair of strands crosses at most once.
///
/// `perm[j]` is the image of position `j` under the permutation of the braid,
/// composed so that the word `σ_{i1}…σ_{ik}` maps to `s_{i1}∘…∘s_{ik}`.
/// Trailing fixed points are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleElement {
    perm: Vec<u8>,
}

impl SimpleElement {
    pub fn identity() -> Self {
        SimpleElement { perm: Vec::new() }
    }

    pub fn from_perm(perm: Vec<u8>) -> Result<Self, BraidError> {
        let mut seen = vec![false; perm.len()];
        for &v in &perm {
            match seen.get_mut(v as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(BraidError::NotAPermutation(perm)),
            }
        }
        Ok(SimpleElement { perm: trim(perm) })
    }

    /// The positive lift of the longest permutation of `S_n` (the Garside
    /// element `Δ_n`).
    pub fn longest(n: usize) -> Self {
        SimpleElement {
            perm: trim((0..n as u8).rev().collect()),
        }
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    /// Number of crossings, i.e. the length of any positive word for it.
    pub fn crossings(&self) -> usize {
        let p = &self.perm;
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Canonical reduced word, peeling off the smallest right descent first.
    pub fn word(&self) -> PositiveWord {
        let mut p = self.perm.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
            p.swap(i, i + 1);
            rev.push(i as u32 + 1);
        }
        rev.reverse();
        PositiveWord::from_raw(rev)
    }

    fn shifted(&self, ell: usize) -> SimpleElement {
        if self.is_identity() {
            return self.clone();
        }
        let mut perm = identity_perm(ell);
        perm.extend(self.perm.iter().map(|&v| v + ell as u8));
        SimpleElement { perm }
    }
}

/// Moves crossings from the front of `b` to the back of `a` until the pair
/// is left-weighted: every left descent of `b` is a right descent of `a`.
fn left_weight(a: &mut [u8], b: &mut [u8]) -> bool {
    let n = a.len();
    let mut changed = false;
    let mut b_inv = vec![0u8; n];
    loop {
        for (j, &v) in b.iter().enumerate() {
            b_inv[v as usize] = j as u8;
        }
        let Some(i) = (0..n - 1).find(|&i| b_inv[i] > b_inv[i + 1] && a[i] < a[i + 1]) else {
            break;
        };
        a.swap(i, i + 1);
        let (lo, hi) = (i as u8, i as u8 + 1);
        for v in b.iter_mut() {
            if *v == lo {
                *v = hi;
            } else if *v == hi {
                *v = lo;
            }
        }
        changed = true;
    }
    changed
}

fn is_identity_perm(p: &[u8]) -> bool {
    p.iter().enumerate().all(|(j, &v)| j == v as usize)
}

/// Canonical left-weighted factorization of a positive braid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    factors: Vec<SimpleElement>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm { factors: Vec::new() }
    }

    /// Normalizes a sequence of permutations that all act on the same number
    /// of strands.
    fn from_padded(mut factors: Vec<Vec<u8>>) -> Self {
        factors.retain(|p| !is_identity_perm(p));
        loop {
            let mut changed = false;
            for j in (0..factors.len().saturating_sub(1)).rev() {
                let (left, right) = factors.split_at_mut(j + 1);
                changed |= left_weight(&mut left[j], &mut right[0]);
            }
            let before = factors.len();
            factors.retain(|p| !is_identity_perm(p));
            if !changed && before == factors.len() {
                break;
            }
        }
        NormalForm {
            factors: factors
                .into_iter()
                .map(|p| SimpleElement { perm: trim(p) })
                .collect(),
        }
    }

    /// Normalizes an arbitrary product of simple elements.
    pub fn from_simples<'a>(simples: impl IntoIterator<Item = &'a SimpleElement>) -> Self {
        let simples: Vec<&SimpleElement> = simples.into_iter().collect();
        let n = simples.iter().map(|s| s.strands()).max().unwrap_or(0).max(1);
        NormalForm::from_padded(simples.iter().map(|s| pad(&s.perm, n)).collect())
    }

    pub fn factors(&self) -> &[SimpleElement] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Smallest `n` with the braid in `B_n` (0 for the identity).
    pub fn strands(&self) -> u32 {
        self.factors.iter().map(|s| s.strands()).max().unwrap_or(0) as u32
    }

    /// Total number of crossings.
    pub fn length(&self) -> usize {
        self.factors.iter().map(SimpleElement::crossings).sum()
    }

    /// Representative word: the canonical words of the factors in order.
    pub fn word(&self) -> PositiveWord {
        let mut letters = Vec::with_capacity(self.length());
        for f in &self.factors {
            letters.extend_from_slice(f.word().letters());
        }
        PositiveWord::from_raw(letters)
    }

    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        NormalForm::from_simples(self.factors.iter().chain(other.factors.iter()))
    }

    /// Shifting every strand index by `ℓ` maps left-weighted pairs to
    /// left-weighted pairs, so the factors are shifted individually.
    pub fn shift(&self, ell: u32) -> NormalForm {
        NormalForm {
            factors: self.factors.iter().map(|s| s.shifted(ell as usize)).collect(),
        }
    }

    /// Whether every adjacent pair satisfies the left-weighting condition and
    /// no factor is trivial.
    pub fn is_left_weighted(&self) -> bool {
        let n = self.strands().max(1) as usize;
        if self.factors.iter().any(SimpleElement::is_identity) {
            return false;
        }
        self.factors.windows(2).all(|w| {
            let mut a = pad(&w[0].perm, n);
            let mut b = pad(&w[1].perm, n);
            !left_weight(&mut a, &mut b)
        })
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|s| {
                let w = s.word();
                w.letters().iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("")
            })
            .collect();
        f.write_str(&parts.join("."))
    }
}
