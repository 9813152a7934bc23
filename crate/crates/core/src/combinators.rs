//! Named elements of the braid ring: the exchange braids `β_{k,l}`, the lifts
//! `ω_a` of longest permutations, braid shuffle elements `Ш_{m,n}`, braid
//! Pochhammer symbols `P_{k,n}(x, y)` and the blocks `A^{a,b}_c` of the
//! tensor-space braiding.
//!
//! Everything indexed purely by integers is memoized.

use std::sync::{Arc, LazyLock};

use serde::{Deserialize, Serialize};

use crate::braid::PositiveWord;
use crate::coeff::LaurentPoly;
use crate::memo::Memo;
use crate::ring::RingElement;

static BETA: LazyLock<Memo<(u32, u32), Arc<RingElement>>> = LazyLock::new(Memo::new);
static OMEGA: LazyLock<Memo<u32, Arc<RingElement>>> = LazyLock::new(Memo::new);
static SHUFFLE: LazyLock<Memo<(i64, i64), Arc<RingElement>>> = LazyLock::new(Memo::new);
static SHUFFLE_BY_COLUMNS: LazyLock<Memo<(i64, i64), Arc<RingElement>>> =
    LazyLock::new(Memo::new);
static SMALL_P: LazyLock<Memo<(u32, u32), Arc<RingElement>>> = LazyLock::new(Memo::new);
static BLOCK_A: LazyLock<Memo<(i64, i64, i64), Arc<RingElement>>> = LazyLock::new(Memo::new);

/// `(σ_k…σ_{k+l-1})(σ_{k-1}…σ_{k+l-2})…(σ_1…σ_l)`: the `y` strands move left
/// one at a time.
pub fn beta_word(k: u32, l: u32) -> PositiveWord {
    let mut letters = Vec::with_capacity((k * l) as usize);
    for start in (1..=k).rev() {
        letters.extend(start..start + l);
    }
    PositiveWord::from_raw(letters)
}

/// `(σ_k…σ_1)(σ_{k+1}…σ_2)…(σ_{k+l-1}…σ_l)`: the `x` strands move right one
/// at a time. Equal to [`beta_word`] as a braid.
pub fn beta_word_columns(k: u32, l: u32) -> PositiveWord {
    let mut letters = Vec::with_capacity((k * l) as usize);
    for t in 0..l {
        letters.extend((1 + t..=k + t).rev());
    }
    PositiveWord::from_raw(letters)
}

/// `β_{k,l}`, the braid exchanging a block of `k` strands with a block of `l`
/// strands to its right.
pub fn beta(k: u32, l: u32) -> Arc<RingElement> {
    BETA.get_or_insert_with((k, l), || Arc::new(RingElement::word(&beta_word(k, l))))
}

/// `ω_a`, built by `ω_a = β_{a-1,1} ω_{a-1}^{↑1}` from `ω_0 = ω_1 = 1`.
pub fn omega(a: u32) -> Arc<RingElement> {
    if a <= 1 {
        return Arc::new(RingElement::one());
    }
    OMEGA.get_or_insert_with(a, || {
        let prev = omega(a - 1).shift(1);
        Arc::new(&*beta(a - 1, 1) * &prev)
    })
}

/// Braid shuffle element `Ш_{m,n} ∈ 𝔨B_{m+n}` from the recursion
/// `Ш_{m,n} = Ш_{m-1,n} + Ш_{m,n-1} β_{m,1}^{↑n-1}` with `Ш_{0,0} = 1`.
/// Zero whenever `m < 0` or `n < 0`.
pub fn shuffle(m: i64, n: i64) -> Arc<RingElement> {
    if m < 0 || n < 0 {
        return Arc::new(RingElement::zero());
    }
    if m == 0 && n == 0 {
        return Arc::new(RingElement::one());
    }
    SHUFFLE.get_or_insert_with((m, n), || {
        let mut out = (*shuffle(m - 1, n)).clone();
        if n >= 1 {
            let tail = beta(m as u32, 1).shift((n - 1) as u32);
            out = out.plus(&shuffle(m, n - 1).times(&tail));
        }
        Arc::new(out)
    })
}

/// The same elements from the second recursion
/// `Ш_{m,n} = Ш_{m,n-1}^{↑1} + Ш_{m-1,n}^{↑1} β_{1,n}`. Used only to check
/// [`shuffle`].
pub fn shuffle_by_columns(m: i64, n: i64) -> Arc<RingElement> {
    if m < 0 || n < 0 {
        return Arc::new(RingElement::zero());
    }
    if m == 0 && n == 0 {
        return Arc::new(RingElement::one());
    }
    SHUFFLE_BY_COLUMNS.get_or_insert_with((m, n), || {
        let mut out = shuffle_by_columns(m, n - 1).shift(1);
        if m >= 1 {
            out = out.plus(&shuffle_by_columns(m - 1, n).shift(1).times(&beta(1, n as u32)));
        }
        Arc::new(out)
    })
}

/// `P_{k,n}(x, y) = (x - β_{k,1}y)(x - β_{k+1,1}y)…(x - β_{k+n-1,1}y)`.
pub fn pochhammer(k: u32, n: u32, x: &LaurentPoly, y: &LaurentPoly) -> RingElement {
    (0..n).fold(RingElement::one(), |acc, t| {
        let factor = RingElement::scalar(x.clone()).minus(&beta(k + t, 1).scale(y));
        acc.times(&factor)
    })
}

/// `p_{a,b} = P_{a,b}(1, q^{-2})`.
pub fn small_p(a: u32, b: u32) -> Arc<RingElement> {
    SMALL_P.get_or_insert_with((a, b), || {
        Arc::new(pochhammer(a, b, &LaurentPoly::one(), &LaurentPoly::q_pow(-2)))
    })
}

/// Grades of a block `A^{a,b}_c`: `a` strands of the left tensor, `b` of the
/// right one, `c` strands of the right tensor moved to the front.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockLabel {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BlockLabel {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BlockLabel { a, b, c }
    }

    /// Whether the block can be nonzero: `0 ≤ c ≤ b`.
    pub fn in_range(&self) -> bool {
        0 <= self.c && self.c <= self.b
    }

    pub fn element(&self) -> Arc<RingElement> {
        block_a(self.a, self.b, self.c)
    }
}

/// `A^{a,b}_c = q^{1-a-c} Ш_{b-c,c}^{↑a} β_{a,c} p_{a,b-c}^{↑c}`, an element of
/// `𝔨B_{a+b}`. Zero unless `0 ≤ c ≤ b`.
///
/// # Panics
/// If `a < 0` or `b < 0`.
pub fn block_a(a: i64, b: i64, c: i64) -> Arc<RingElement> {
    assert!(a >= 0 && b >= 0, "block A^{{{a},{b}}}_{c} needs a, b ≥ 0");
    if c < 0 || c > b {
        return Arc::new(RingElement::zero());
    }
    BLOCK_A.get_or_insert_with((a, b, c), || {
        let (ua, uc) = (a as u32, c as u32);
        let scale = LaurentPoly::q_pow(1 - (a + c) as i32);
        let e = shuffle(b - c, c)
            .shift(ua)
            .times(&beta(ua, uc))
            .times(&small_p(ua, (b - c) as u32).shift(uc))
            .scale(&scale);
        Arc::new(e)
    })
}
