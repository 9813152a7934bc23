//! Exact verification of braid-ring identities.
//!
//! Every verifier builds the two sides of an identity by separate code paths
//! and compares them as [`RingElement`]s; there is no tolerance. Sums whose
//! range is not written out are evaluated over the range where the shuffle
//! factors are nonzero ([`SumRange::Bounded`]); the same sums over a wide
//! integer window with the vanishing conventions ([`SumRange::Unbounded`]) must
//! give the same element.
//!
//! Products are evaluated left to right and stop at the first zero factor, so
//! factors whose indices only make sense when an earlier shuffle is nonzero
//! are never built.

use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{PositiveWord, SimpleElement};
use crate::coeff::{LaurentPoly, Param};
use crate::combinators::{
    beta, beta_word, beta_word_columns, block_a, omega, pochhammer, shuffle, shuffle_by_columns,
    small_p,
};
use crate::ring::RingElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("unknown Vandermonde variant {0:?} (expected 1, 1bis or 2)")]
    UnknownVariant(String),
    #[error("{identity} expects {expected} parameters, got {got}")]
    BadParams {
        identity: String,
        expected: usize,
        got: usize,
    },
    #[error("parameters must be non-negative: {0:?}")]
    NegativeParams(Vec<i64>),
}

/// Outcome of one identity at one parameter tuple.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub identity: String,
    pub params: Vec<i64>,
    pub holds: bool,
    /// `lhs - rhs`; zero exactly when the identity holds.
    pub difference: RingElement,
    pub elapsed: Duration,
}

/// One line of a sweep report file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub identity: String,
    pub params: Vec<i64>,
    pub holds: bool,
    /// Display form of the difference; `0` when the identity holds.
    pub difference: String,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    fn compare(
        identity: &str,
        params: Vec<i64>,
        lhs: &RingElement,
        rhs: &RingElement,
        start: Instant,
    ) -> Self {
        Self::compare_all(identity, params, &[(lhs.clone(), rhs.clone())], start)
    }

    /// Several equalities under one name; the reported difference is that of
    /// the first one that fails.
    fn compare_all(
        identity: &str,
        params: Vec<i64>,
        sides: &[(RingElement, RingElement)],
        start: Instant,
    ) -> Self {
        let difference = sides
            .iter()
            .map(|(l, r)| l - r)
            .find(|d| !d.is_zero())
            .unwrap_or_default();
        VerificationReport {
            identity: identity.to_string(),
            params,
            holds: difference.is_zero(),
            difference,
            elapsed: start.elapsed(),
        }
    }

    pub fn to_record(&self) -> ReportRecord {
        ReportRecord {
            identity: self.identity.clone(),
            params: self.params.clone(),
            holds: self.holds,
            difference: self.difference.to_string(),
            elapsed_ms: self.elapsed.as_secs_f64() * 1e3,
        }
    }
}

/// How to evaluate a sum whose range is implicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumRange {
    /// Only indices where every shuffle factor can be nonzero.
    Bounded,
    /// A window of integers wide enough to contain the support; vanishing
    /// conventions remove the extra terms.
    Unbounded,
}

fn idx(v: i64) -> u32 {
    u32::try_from(v).unwrap_or_else(|_| panic!("negative index {v} reached a factor that needs it"))
}

/// `Ш_{m,n}^{↑up}`; the shift is only applied to a nonzero shuffle.
fn sha(m: i64, n: i64, up: i64) -> RingElement {
    let s = shuffle(m, n);
    if s.is_zero() {
        RingElement::zero()
    } else {
        s.shift(idx(up))
    }
}

fn bet(k: i64, l: i64, up: i64) -> RingElement {
    beta(idx(k), idx(l)).shift(idx(up))
}

fn omg(a: i64, up: i64) -> RingElement {
    omega(idx(a)).shift(idx(up))
}

fn sp(a: i64, b: i64, up: i64) -> RingElement {
    small_p(idx(a), idx(b)).shift(idx(up))
}

/// `A^{a,b}_c` shifted by `up`; zero blocks are returned without shifting.
fn blk(a: i64, b: i64, c: i64, up: i64) -> RingElement {
    let e = block_a(a, b, c);
    if e.is_zero() {
        RingElement::zero()
    } else {
        e.shift(idx(up))
    }
}

fn qpow(e: i64) -> LaurentPoly {
    LaurentPoly::q_pow(e as i32)
}

fn sign(e: i64) -> LaurentPoly {
    LaurentPoly::from_int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn var(p: Param) -> LaurentPoly {
    LaurentPoly::param(p)
}

/// Left-to-right product that stops building factors once it is zero.
struct Chain(Option<RingElement>);

impl Chain {
    fn new() -> Self {
        Chain(Some(RingElement::one()))
    }

    fn scaled(c: LaurentPoly) -> Self {
        Chain(Some(RingElement::scalar(c)))
    }

    fn then(self, factor: impl FnOnce() -> RingElement) -> Self {
        match self.0 {
            None => self,
            Some(acc) => {
                let p = acc.times(&factor());
                Chain(if p.is_zero() { None } else { Some(p) })
            }
        }
    }

    fn done(self) -> RingElement {
        self.0.unwrap_or_default()
    }
}

fn sum_over(range: impl IntoIterator<Item = i64>, term: impl Fn(i64) -> RingElement) -> RingElement {
    range.into_iter().fold(RingElement::zero(), |acc, i| acc.plus(&term(i)))
}

fn window(bounded: std::ops::RangeInclusive<i64>, range: SumRange, width: i64) -> std::ops::RangeInclusive<i64> {
    match range {
        SumRange::Bounded => bounded,
        SumRange::Unbounded => -width..=width,
    }
}

fn check_non_negative(params: &[i64]) -> Result<(), VerifyError> {
    if params.iter().any(|&p| p < 0) {
        return Err(VerifyError::NegativeParams(params.to_vec()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// β and ω

/// The two words for `β_{k,l}` (moving `y`s left, moving `x`s right) are the
/// same braid.
pub fn verify_beta_forms(k: u32, l: u32) -> VerificationReport {
    let start = Instant::now();
    let lhs = RingElement::word(&beta_word(k, l));
    let rhs = RingElement::word(&beta_word_columns(k, l));
    VerificationReport::compare("beta_forms", vec![k as i64, l as i64], &lhs, &rhs, start)
}

/// Both block-composition laws of `β` at `(l, m, n)` and both mixed laws at
/// `(j, l, m, n)`:
///
/// * `β_{l+m,n} = β_{m,n}^{↑l} β_{l,n}`, `β_{l,m+n} = β_{l,m} β_{l,n}^{↑m}`
/// * `β_{m,j} β_{m+l,n}^{↑j} = β_{l,n}^{↑m+j} β_{m,j+n}`
/// * `β_{n,m+l}^{↑j} β_{j,m} = β_{j+n,m} β_{n,l}^{↑m+j}`
pub fn verify_beta_identities(j: u32, l: u32, m: u32, n: u32) -> VerificationReport {
    let start = Instant::now();
    let b = |k: u32, l: u32, up: u32| beta(k, l).shift(up);
    let sides = [
        (b(l + m, n, 0), b(m, n, l).times(&b(l, n, 0))),
        (b(l, m + n, 0), b(l, m, 0).times(&b(l, n, m))),
        (b(m, j, 0).times(&b(m + l, n, j)), b(l, n, m + j).times(&b(m, j + n, 0))),
        (b(n, m + l, j).times(&b(j, m, 0)), b(j + n, m, 0).times(&b(n, l, m + j))),
    ];
    let params = [j, l, m, n].iter().map(|&v| v as i64).collect();
    VerificationReport::compare_all("beta_identities", params, &sides, start)
}

fn rng_for(seed: u64, params: &[i64]) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &p in params {
        h = (h ^ p as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 31;
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// A random element of `𝔨B_strands`: up to five terms, words of length at most
/// five, coefficients `c·q^e` with small integers `c`, `e`.
pub fn random_element<R: Rng>(strands: u32, rng: &mut R) -> RingElement {
    let terms = rng.gen_range(1..=5);
    let mut out = RingElement::zero();
    for _ in 0..terms {
        let len = if strands >= 2 { rng.gen_range(0..=5) } else { 0 };
        let letters: Vec<u32> = (0..len).map(|_| rng.gen_range(1..strands)).collect();
        let word = PositiveWord::new(letters).expect("letters are positive");
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3..=3);
        }
        let coeff = LaurentPoly::from_int(c).times(&LaurentPoly::q_pow(rng.gen_range(-2..=2)));
        out = out.plus(&RingElement::word(&word).scale(&coeff));
    }
    out
}

/// `β_{k,l} φ ψ^{↑l} = ψ φ^{↑k} β_{k,l}` for given `φ ∈ 𝔨B_l`, `ψ ∈ 𝔨B_k`.
pub fn verify_exchange_with(k: u32, l: u32, phi: &RingElement, psi: &RingElement) -> VerificationReport {
    let start = Instant::now();
    let b = beta(k, l);
    let lhs = b.times(phi).times(&psi.shift(l));
    let rhs = psi.times(&phi.shift(k)).times(&b);
    VerificationReport::compare("beta_exchange", vec![k as i64, l as i64], &lhs, &rhs, start)
}

/// The exchange law for a random pair `φ ∈ 𝔨B_l`, `ψ ∈ 𝔨B_k` drawn from `seed`.
pub fn verify_exchange_commutation(k: u32, l: u32, seed: u64) -> VerificationReport {
    let mut rng = rng_for(seed, &[k as i64, l as i64]);
    let phi = random_element(l, &mut rng);
    let psi = random_element(k, &mut rng);
    let mut r = verify_exchange_with(k, l, &phi, &psi);
    r.params.push(seed as i64);
    r
}

/// `ω_a φ = φ' ω_a` for a given `φ ∈ 𝔨B_a`, where `'` is `σ_i ↦ σ_{a-i}`.
pub fn verify_omega_conjugation_with(a: u32, phi: &RingElement) -> Result<VerificationReport, crate::braid::BraidError> {
    let start = Instant::now();
    let w = omega(a);
    let lhs = w.times(phi);
    let rhs = phi.flip(a)?.times(&w);
    Ok(VerificationReport::compare("omega_conjugation", vec![a as i64], &lhs, &rhs, start))
}

/// `ω_a φ = φ' ω_a` for a random `φ ∈ 𝔨B_a` drawn from `seed`.
pub fn verify_omega_conjugation(a: u32, seed: u64) -> VerificationReport {
    let mut rng = rng_for(seed, &[a as i64]);
    let phi = random_element(a, &mut rng);
    let mut r = verify_omega_conjugation_with(a, &phi).expect("random element lies in B_a");
    r.params.push(seed as i64);
    r
}

/// `ω_{a+b} = β_{a,b} ω_a^{↑b} ω_b`.
pub fn verify_omega_recursion(a: u32, b: u32) -> VerificationReport {
    let start = Instant::now();
    let lhs = (*omega(a + b)).clone();
    let rhs = beta(a, b).times(&omega(a).shift(b)).times(&omega(b));
    VerificationReport::compare("omega_recursion", vec![a as i64, b as i64], &lhs, &rhs, start)
}

// ---------------------------------------------------------------------------
// Shuffles

/// The two Pascal-type recursions give the same `Ш_{m,n}`.
pub fn verify_shuffle_consistency(m: i64, n: i64) -> VerificationReport {
    let start = Instant::now();
    let lhs = (*shuffle(m, n)).clone();
    let rhs = (*shuffle_by_columns(m, n)).clone();
    VerificationReport::compare("shuffle_consistency", vec![m, n], &lhs, &rhs, start)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sum of the positive lifts of all permutations of `m + n` points that are
/// increasing on the first `n` positions and on the last `m` positions.
pub fn shuffle_lifts(m: u32, n: u32) -> RingElement {
    let total = (m + n) as usize;
    let mut out = RingElement::zero();
    for head in combinations(total, n as usize) {
        let mut perm: Vec<u8> = head.iter().map(|&v| v as u8).collect();
        perm.extend((0..total).filter(|v| !head.contains(v)).map(|v| v as u8));
        let simple = SimpleElement::from_perm(perm).expect("valid permutation");
        out = out.plus(&RingElement::basis(crate::braid::NormalForm::from_simples([&simple])));
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Ш_{m,n}` has exactly `C(m+n, n)` basis braids, each with coefficient 1,
/// and equals the sum of the lifts of the `(n, m)` shuffle permutations.
pub fn verify_shuffle_support(m: u32, n: u32) -> VerificationReport {
    let start = Instant::now();
    let sh = shuffle(m as i64, n as i64);
    let lifts = shuffle_lifts(m, n);
    let mut report =
        VerificationReport::compare("shuffle_support", vec![m as i64, n as i64], &sh, &lifts, start);
    let unit = sh.terms().all(|(_, c)| c.is_one());
    let count_ok = sh.len() as u64 == binomial((m + n) as u64, n as u64);
    report.holds = report.holds && unit && count_ok;
    report
}

/// `Ш_{n+k,m} Ш_{k,n}^{↑m} = Ш_{k,m+n} Ш_{n,m}`.
pub fn verify_shaiden(k: i64, m: i64, n: i64) -> VerificationReport {
    let start = Instant::now();
    let lhs = Chain::new().then(|| sha(n + k, m, 0)).then(|| sha(k, n, m)).done();
    let rhs = Chain::new().then(|| sha(k, m + n, 0)).then(|| sha(n, m, 0)).done();
    VerificationReport::compare("shaiden", vec![k, m, n], &lhs, &rhs, start)
}

// ---------------------------------------------------------------------------
// Pochhammer symbols

/// `P_{k,n}(x,y) = P_{k,a}(x,y) P_{k+a,n-a}(x,y)` with formal `x`, `y`.
pub fn verify_recpo(k: u32, n: u32, a: u32) -> VerificationReport {
    assert!(a <= n, "split point {a} beyond {n}");
    let start = Instant::now();
    let (x, y) = (var(Param::X), var(Param::Y));
    let lhs = pochhammer(k, n, &x, &y);
    let rhs = pochhammer(k, a, &x, &y).times(&pochhammer(k + a, n - a, &x, &y));
    VerificationReport::compare("recpo", vec![k as i64, n as i64, a as i64], &lhs, &rhs, start)
}

/// `Σ_a Ш_{n-a,a}^{↑k} β_{k,a} P_{0,a}(y,z) P_{k,n-a}(x,y)^{↑a}`.
pub fn robrbin_expansion(k: i64, n: i64, range: SumRange) -> RingElement {
    let (x, y, z) = (var(Param::X), var(Param::Y), var(Param::Z));
    sum_over(window(0..=n, range, n + k + 2), |a| {
        Chain::new()
            .then(|| sha(n - a, a, k))
            .then(|| bet(k, a, 0))
            .then(|| pochhammer(0, idx(a), &y, &z))
            .then(|| pochhammer(idx(k), idx(n - a), &x, &y).shift(idx(a)))
            .done()
    })
}

/// `P_{k,n}(x,z)` equals its expansion through an intermediate parameter `y`.
pub fn verify_lemma_robrbin(k: u32, n: u32) -> VerificationReport {
    let start = Instant::now();
    let lhs = pochhammer(k, n, &var(Param::X), &var(Param::Z));
    let rhs = robrbin_expansion(k as i64, n as i64, SumRange::Bounded);
    VerificationReport::compare("robrbin", vec![k as i64, n as i64], &lhs, &rhs, start)
}

/// `Σ_a (-1)^a Ш_{n-a,a}^{↑k} β_{k,a} ω_a z^a x^{n-a}`.
pub fn cobith_expansion(k: i64, n: i64, range: SumRange) -> RingElement {
    let (x, z) = (var(Param::X), var(Param::Z));
    sum_over(window(0..=n, range, n + k + 2), |a| {
        Chain::new()
            .then(|| sha(n - a, a, k))
            .then(|| bet(k, a, 0))
            .then(|| omg(a, 0))
            .then(|| {
                RingElement::scalar(sign(a).times(&z.pow(idx(a))).times(&x.pow(idx(n - a))))
            })
            .done()
    })
}

/// Binomial expansion of `P_{k,n}(x,z)` in powers of `z`.
pub fn verify_cobith(k: u32, n: u32) -> VerificationReport {
    let start = Instant::now();
    let lhs = pochhammer(k, n, &var(Param::X), &var(Param::Z));
    let rhs = cobith_expansion(k as i64, n as i64, SumRange::Bounded);
    VerificationReport::compare("cobith", vec![k as i64, n as i64], &lhs, &rhs, start)
}

// ---------------------------------------------------------------------------
// Vandermonde identities

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VandermondeVariant {
    /// `(a, m, n, k)`: `Ш_{m+n-a,a}^{↑k} β_{k,a} = Σ_{b+c=a} Ш_{m-b,b}^{↑k} Ш_{n-c,c}^{↑m+k} β_{k,b} β_{m+k-b,c}^{↑b}`.
    First,
    /// `(a, m, n)`: `Ш_{m+n-a,a} = Σ_{b+c=a} Ш_{m-b,b} Ш_{n-c,c}^{↑m} β_{m-b,c}^{↑b}`.
    FirstUnshifted,
    /// `(e, c, j)`: `ω_j Ш_{e,c}^{↑j} = Σ_a (-1)^a Ш_{j-a,a} ω_{j-a}^{↑a} Ш_{e-a,c+j}^{↑a} β_{a,c+j}`.
    Second,
}

impl FromStr for VandermondeVariant {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(VandermondeVariant::First),
            "1bis" => Ok(VandermondeVariant::FirstUnshifted),
            "2" => Ok(VandermondeVariant::Second),
            other => Err(VerifyError::UnknownVariant(other.to_string())),
        }
    }
}

impl VandermondeVariant {
    pub fn name(self) -> &'static str {
        match self {
            VandermondeVariant::First => "vandermonde1",
            VandermondeVariant::FirstUnshifted => "vandermonde1bis",
            VandermondeVariant::Second => "vandermonde2",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            VandermondeVariant::First => 4,
            _ => 3,
        }
    }
}

/// Right side of the shifted Vandermonde identity at `(a, m, n, k)`.
pub fn vandermonde1_rhs(a: i64, m: i64, n: i64, k: i64, range: SumRange) -> RingElement {
    let bounded = (a - n).max(0)..=a.min(m);
    sum_over(window(bounded, range, a + m + n + 2), |b| {
        let c = a - b;
        Chain::new()
            .then(|| sha(m - b, b, k))
            .then(|| sha(n - c, c, m + k))
            .then(|| bet(k, b, 0))
            .then(|| bet(m + k - b, c, b))
            .done()
    })
}

/// Right side of the unshifted Vandermonde identity at `(a, m, n)`.
pub fn vandermonde1bis_rhs(a: i64, m: i64, n: i64, range: SumRange) -> RingElement {
    let bounded = (a - n).max(0)..=a.min(m);
    sum_over(window(bounded, range, a + m + n + 2), |b| {
        let c = a - b;
        Chain::new()
            .then(|| sha(m - b, b, 0))
            .then(|| sha(n - c, c, m))
            .then(|| bet(m - b, c, b))
            .done()
    })
}

/// Right side of the second Vandermonde identity at `(e, c, j)`.
pub fn vandermonde2_rhs(e: i64, c: i64, j: i64, range: SumRange) -> RingElement {
    sum_over(window(0..=j.min(e), range, e + c + j + 2), |a| {
        Chain::scaled(sign(a))
            .then(|| sha(j - a, a, 0))
            .then(|| omg(j - a, a))
            .then(|| sha(e - a, c + j, a))
            .then(|| bet(a, c + j, 0))
            .done()
    })
}

pub fn verify_vandermonde(
    variant: VandermondeVariant,
    params: &[i64],
) -> Result<VerificationReport, VerifyError> {
    if params.len() != variant.arity() {
        return Err(VerifyError::BadParams {
            identity: variant.name().to_string(),
            expected: variant.arity(),
            got: params.len(),
        });
    }
    check_non_negative(params)?;
    let start = Instant::now();
    let (lhs, rhs) = match variant {
        VandermondeVariant::First => {
            let (a, m, n, k) = (params[0], params[1], params[2], params[3]);
            let lhs = Chain::new().then(|| sha(m + n - a, a, k)).then(|| bet(k, a, 0)).done();
            (lhs, vandermonde1_rhs(a, m, n, k, SumRange::Bounded))
        }
        VandermondeVariant::FirstUnshifted => {
            let (a, m, n) = (params[0], params[1], params[2]);
            (sha(m + n - a, a, 0), vandermonde1bis_rhs(a, m, n, SumRange::Bounded))
        }
        VandermondeVariant::Second => {
            let (e, c, j) = (params[0], params[1], params[2]);
            let lhs = Chain::new().then(|| omg(j, 0)).then(|| sha(e, c, j)).done();
            (lhs, vandermonde2_rhs(e, c, j, SumRange::Bounded))
        }
    };
    Ok(VerificationReport::compare(variant.name(), params.to_vec(), &lhs, &rhs, start))
}

/// Which specialization of the unshifted Vandermonde identity to compare
/// with a shuffle recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// `n = 1`: the right side is `Ш_{M-1,N} + Ш_{M,N-1} β_{M,1}^{↑N-1}`
    /// with `M = m + 1 - a`, `N = a`.
    RightBlockOfOne,
    /// `m = 1`: the right side is `Ш_{M,N-1}^{↑1} + Ш_{M-1,N}^{↑1} β_{1,N}`
    /// with `M = n + 1 - a`, `N = a`.
    LeftBlockOfOne,
}

/// The unshifted Vandermonde sum at `n = 1` (resp. `m = 1`) equals the right
/// side of the first (resp. second) shuffle recursion, term for term.
pub fn verify_vandermonde_reduction(which: Reduction, a: i64, other: i64) -> VerificationReport {
    let start = Instant::now();
    let (vandermonde, recursion, tag) = match which {
        Reduction::RightBlockOfOne => {
            let (big_m, big_n) = (other + 1 - a, a);
            let rec = sha(big_m - 1, big_n, 0).plus(
                &Chain::new()
                    .then(|| sha(big_m, big_n - 1, 0))
                    .then(|| bet(big_m, 1, big_n - 1))
                    .done(),
            );
            (vandermonde1bis_rhs(a, other, 1, SumRange::Bounded), rec, 0)
        }
        Reduction::LeftBlockOfOne => {
            let (big_m, big_n) = (other + 1 - a, a);
            let rec = sha(big_m, big_n - 1, 1).plus(
                &Chain::new()
                    .then(|| sha(big_m - 1, big_n, 1))
                    .then(|| bet(1, big_n, 0))
                    .done(),
            );
            (vandermonde1bis_rhs(a, 1, other, SumRange::Bounded), rec, 1)
        }
    };
    VerificationReport::compare(
        "vandermonde1bis_reduction",
        vec![tag, a, other],
        &vandermonde,
        &recursion,
        start,
    )
}

/// `𝒳_{a,b;c} = Ш_{a,b}^{↑c} β_{c,b}`.
pub fn x_element(a: i64, b: i64, c: i64) -> RingElement {
    Chain::new().then(|| sha(a, b, c)).then(|| bet(c, b, 0)).done()
}

/// `𝒳_{a+1,b;c} = 𝒳_{a,b;c} + 𝒳_{a+1,b-1;c} β_{a+c+1,1}^{↑b-1}`, `b ≥ 1`.
pub fn verify_x_recursion(a: i64, b: i64, c: i64) -> VerificationReport {
    assert!(b >= 1, "the 𝒳 recursion needs b ≥ 1");
    let start = Instant::now();
    let lhs = x_element(a + 1, b, c);
    let rhs = x_element(a, b, c).plus(
        &Chain::new()
            .then(|| x_element(a + 1, b - 1, c))
            .then(|| bet(a + c + 1, 1, b - 1))
            .done(),
    );
    VerificationReport::compare("x_recursion", vec![a, b, c], &lhs, &rhs, start)
}

// ---------------------------------------------------------------------------
// Yang–Baxter system for the blocks A^{a,b}_c

/// Left side `Σ_i A^{b,c}_i{}^{↑a} A^{a,i}_e A^{a+i-e,b+c-i}_f{}^{↑e}`:
/// exchange `y`/`z`, then `x`/`z`, then `x`/`y`.
pub fn sytso_lhs(a: i64, b: i64, c: i64, e: i64, f: i64, range: SumRange) -> RingElement {
    let bounded = e.max(0)..=c.min(b + c - f);
    sum_over(window(bounded, range, a + b + c + e + f + 2), |i| {
        Chain::new()
            .then(|| blk(b, c, i, a))
            .then(|| blk(a, i, e, 0))
            .then(|| blk(a + i - e, b + c - i, f, e))
            .done()
    })
}

/// Right side `Σ_j A^{a,b}_j A^{a+b-j,c}_{f+e-j}{}^{↑j} A^{j,f+e-j}_e`:
/// exchange `x`/`y`, then `x`/`z`, then `y`/`z`.
pub fn sytso_rhs(a: i64, b: i64, c: i64, e: i64, f: i64, range: SumRange) -> RingElement {
    let bounded = (f + e - c).max(0)..=f.min(b);
    sum_over(window(bounded, range, a + b + c + e + f + 2), |j| {
        Chain::new()
            .then(|| blk(a, b, j, 0))
            .then(|| blk(a + b - j, c, f + e - j, j))
            .then(|| blk(j, f + e - j, e, 0))
            .done()
    })
}

/// The Yang–Baxter system for the blocks at grades `(a, b, c)` and output
/// split `(e, f)`: `z` keeps `e` strands in front, `y` keeps `f`.
pub fn verify_sytso(a: i64, b: i64, c: i64, e: i64, f: i64) -> VerificationReport {
    let start = Instant::now();
    let lhs = sytso_lhs(a, b, c, e, f, SumRange::Bounded);
    let rhs = sytso_rhs(a, b, c, e, f, SumRange::Bounded);
    VerificationReport::compare("sytso", vec![a, b, c, e, f], &lhs, &rhs, start)
}

/// `Σ_i q^{-2i} Ш_{c-i,i-e}^{↑b} β_{b,i-e} p_{b,c-i}^{↑i-e} Ш_{b+c-f-i,f}^{↑i-e} β_{i-e,f}`.
pub fn sytso2_lhs(b: i64, c: i64, e: i64, f: i64, range: SumRange) -> RingElement {
    let bounded = e..=c.min(b + c - f);
    sum_over(window(bounded, range, b + c + e + f + 2), |i| {
        Chain::scaled(qpow(-2 * i))
            .then(|| sha(c - i, i - e, b))
            .then(|| bet(b, i - e, 0))
            .then(|| sp(b, c - i, i - e))
            .then(|| sha(b + c - f - i, f, i - e))
            .then(|| bet(i - e, f, 0))
            .done()
    })
}

/// `q^{-2e} Σ_j Ш_{b-j,j} Ш_{c-e-f+j,f-j}^{↑b} β_{b-j,f-j}^{↑j} p_{j,f-j}`.
pub fn sytso2_rhs(b: i64, c: i64, e: i64, f: i64, range: SumRange) -> RingElement {
    let bounded = (e + f - c).max(0)..=b.min(f);
    sum_over(window(bounded, range, b + c + e + f + 2), |j| {
        Chain::scaled(qpow(-2 * e))
            .then(|| sha(b - j, j, 0))
            .then(|| sha(c - e - f + j, f - j, b))
            .then(|| bet(b - j, f - j, j))
            .then(|| sp(j, f - j, 0))
            .done()
    })
}

/// The reduced form of the Yang–Baxter system, with `a` and the common outer
/// factors removed.
pub fn verify_sytso2(b: i64, c: i64, e: i64, f: i64) -> VerificationReport {
    let start = Instant::now();
    let lhs = sytso2_lhs(b, c, e, f, SumRange::Bounded);
    let rhs = sytso2_rhs(b, c, e, f, SumRange::Bounded);
    VerificationReport::compare("sytso2", vec![b, c, e, f], &lhs, &rhs, start)
}

// ---------------------------------------------------------------------------
// Sweeps

/// Every identity the sweep driver knows, by report name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    BetaForms,
    BetaIdentities,
    BetaExchange,
    OmegaConjugation,
    OmegaRecursion,
    ShuffleConsistency,
    ShuffleSupport,
    Shaiden,
    Recpo,
    Robrbin,
    Cobith,
    Vandermonde1,
    Vandermonde1Bis,
    Vandermonde1BisReduction,
    Vandermonde2,
    XRecursion,
    Sytso,
    Sytso2,
}

impl Identity {
    pub const ALL: [Identity; 18] = [
        Identity::BetaForms,
        Identity::BetaIdentities,
        Identity::BetaExchange,
        Identity::OmegaConjugation,
        Identity::OmegaRecursion,
        Identity::ShuffleConsistency,
        Identity::ShuffleSupport,
        Identity::Shaiden,
        Identity::Recpo,
        Identity::Robrbin,
        Identity::Cobith,
        Identity::Vandermonde1,
        Identity::Vandermonde1Bis,
        Identity::Vandermonde1BisReduction,
        Identity::Vandermonde2,
        Identity::XRecursion,
        Identity::Sytso,
        Identity::Sytso2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::BetaForms => "beta_forms",
            Identity::BetaIdentities => "beta_identities",
            Identity::BetaExchange => "beta_exchange",
            Identity::OmegaConjugation => "omega_conjugation",
            Identity::OmegaRecursion => "omega_recursion",
            Identity::ShuffleConsistency => "shuffle_consistency",
            Identity::ShuffleSupport => "shuffle_support",
            Identity::Shaiden => "shaiden",
            Identity::Recpo => "recpo",
            Identity::Robrbin => "robrbin",
            Identity::Cobith => "cobith",
            Identity::Vandermonde1 => "vandermonde1",
            Identity::Vandermonde1Bis => "vandermonde1bis",
            Identity::Vandermonde1BisReduction => "vandermonde1bis_reduction",
            Identity::Vandermonde2 => "vandermonde2",
            Identity::XRecursion => "x_recursion",
            Identity::Sytso => "sytso",
            Identity::Sytso2 => "sytso2",
        }
    }

    /// Bound used when none is given: 5 for the Yang–Baxter system, 6 or 7
    /// for the rest.
    pub fn default_bound(self) -> u32 {
        match self {
            Identity::Sytso | Identity::Sytso2 | Identity::Recpo | Identity::Robrbin => 5,
            Identity::BetaForms
            | Identity::BetaIdentities
            | Identity::OmegaRecursion
            | Identity::ShuffleConsistency
            | Identity::ShuffleSupport
            | Identity::Shaiden => 7,
            _ => 6,
        }
    }

    /// Parameter tuples of a sweep with the given bound. The bound limits the
    /// parameter sum, except for `recpo` (`k + n`, all split points `a`),
    /// `sytso` (`a + b + c`) and `sytso2` (`b + c`), where the output split
    /// `(e, f)` ranges over `e ≤ c`, `f ≤ b + c - e`. Randomized identities get
    /// `samples` draws per tuple, numbered in the last parameter.
    pub fn tuples(self, bound: u32, samples: u32) -> Vec<Vec<i64>> {
        let bound = bound as i64;
        let samples = samples as i64;
        let mut out = Vec::new();
        match self {
            Identity::BetaForms
            | Identity::OmegaRecursion
            | Identity::ShuffleConsistency
            | Identity::ShuffleSupport
            | Identity::Robrbin
            | Identity::Cobith => {
                for t in compositions(2, bound) {
                    out.push(t);
                }
            }
            Identity::BetaIdentities | Identity::Vandermonde1 => out = compositions(4, bound),
            Identity::Shaiden | Identity::Vandermonde1Bis | Identity::Vandermonde2 => {
                out = compositions(3, bound)
            }
            Identity::XRecursion => {
                out = compositions(3, bound).into_iter().filter(|t| t[1] >= 1).collect()
            }
            Identity::BetaExchange => {
                for t in compositions(2, bound) {
                    for s in 0..samples {
                        out.push(vec![t[0], t[1], s]);
                    }
                }
            }
            Identity::OmegaConjugation => {
                for a in 1..=bound.max(1) {
                    for s in 0..samples {
                        out.push(vec![a, s]);
                    }
                }
            }
            Identity::Recpo => {
                for t in compositions(2, bound) {
                    for a in 0..=t[1] {
                        out.push(vec![t[0], t[1], a]);
                    }
                }
            }
            Identity::Vandermonde1BisReduction => {
                for tag in 0..2 {
                    for t in compositions(2, bound) {
                        out.push(vec![tag, t[0], t[1]]);
                    }
                }
            }
            Identity::Sytso => {
                for t in compositions(3, bound) {
                    let (b, c) = (t[1], t[2]);
                    for e in 0..=c {
                        for f in 0..=b + c - e {
                            out.push(vec![t[0], b, c, e, f]);
                        }
                    }
                }
            }
            Identity::Sytso2 => {
                for t in compositions(2, bound) {
                    let (b, c) = (t[0], t[1]);
                    for e in 0..=c {
                        for f in 0..=b + c - e {
                            out.push(vec![b, c, e, f]);
                        }
                    }
                }
            }
        }
        out
    }

    /// Runs the identity at one tuple from [`Identity::tuples`].
    pub fn run(self, p: &[i64], seed: u64) -> VerificationReport {
        let u = |i: usize| p[i] as u32;
        match self {
            Identity::BetaForms => verify_beta_forms(u(0), u(1)),
            Identity::BetaIdentities => verify_beta_identities(u(0), u(1), u(2), u(3)),
            Identity::BetaExchange => {
                let mut r = verify_exchange_commutation(u(0), u(1), seed.wrapping_add(p[2] as u64));
                r.params = p.to_vec();
                r
            }
            Identity::OmegaConjugation => {
                let mut r = verify_omega_conjugation(u(0), seed.wrapping_add(p[1] as u64));
                r.params = p.to_vec();
                r
            }
            Identity::OmegaRecursion => verify_omega_recursion(u(0), u(1)),
            Identity::ShuffleConsistency => verify_shuffle_consistency(p[0], p[1]),
            Identity::ShuffleSupport => verify_shuffle_support(u(0), u(1)),
            Identity::Shaiden => verify_shaiden(p[0], p[1], p[2]),
            Identity::Recpo => verify_recpo(u(0), u(1), u(2)),
            Identity::Robrbin => verify_lemma_robrbin(u(0), u(1)),
            Identity::Cobith => verify_cobith(u(0), u(1)),
            Identity::Vandermonde1 => verify_vandermonde(VandermondeVariant::First, p).expect("arity"),
            Identity::Vandermonde1Bis => {
                verify_vandermonde(VandermondeVariant::FirstUnshifted, p).expect("arity")
            }
            Identity::Vandermonde1BisReduction => {
                let which = if p[0] == 0 {
                    Reduction::RightBlockOfOne
                } else {
                    Reduction::LeftBlockOfOne
                };
                verify_vandermonde_reduction(which, p[1], p[2])
            }
            Identity::Vandermonde2 => verify_vandermonde(VandermondeVariant::Second, p).expect("arity"),
            Identity::XRecursion => verify_x_recursion(p[0], p[1], p[2]),
            Identity::Sytso => verify_sytso(p[0], p[1], p[2], p[3], p[4]),
            Identity::Sytso2 => verify_sytso2(p[0], p[1], p[2], p[3]),
        }
    }
}

impl FromStr for Identity {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| VerifyError::UnknownIdentity(s.to_string()))
    }
}

/// All `len`-tuples of non-negative integers with sum at most `bound`, in
/// lexicographic order.
pub fn compositions(len: usize, bound: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            go(len, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if bound >= 0 {
        go(len, bound, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub seed: u64,
    /// Random draws per tuple for randomized identities.
    pub samples: u32,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { seed: 0, samples: 4 }
    }
}

/// Runs every tuple of `identity` up to `bound` in parallel. The output is
/// in tuple order regardless of scheduling; failures do not stop the sweep.
pub fn sweep_identity(identity: Identity, bound: u32, opts: &SweepOptions) -> Vec<VerificationReport> {
    identity
        .tuples(bound, opts.samples)
        .par_iter()
        .map(|p| identity.run(p, opts.seed))
        .collect()
}

/// [`sweep_identity`] by report name.
pub fn sweep(name: &str, bound: u32, opts: &SweepOptions) -> Result<Vec<VerificationReport>, VerifyError> {
    Ok(sweep_identity(name.parse()?, bound, opts))
}

/// Totals of a sweep, with the failing reports.
#[derive(Debug)]
pub struct SweepSummary<'a> {
    pub total: usize,
    pub failures: Vec<&'a VerificationReport>,
    pub elapsed: Duration,
}

pub fn summarize(reports: &[VerificationReport]) -> SweepSummary<'_> {
    SweepSummary {
        total: reports.len(),
        failures: reports.iter().filter(|r| !r.holds).collect(),
        elapsed: reports.iter().map(|r| r.elapsed).sum(),
    }
}
