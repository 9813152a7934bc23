//! The braiding `T(R̂)` on the tensor space truncated at total grade `g_max`.
//!
//! Block `(b, c, k)` is the image of `A^{b,c}_k` on `b + c` copies of `V`. It
//! sends `x^{[b]} ⊗ y^{[c]}` to the part of the exchange with `k` indices on
//! `y` (in front) and `b + c - k` on `x`. Every block conserves total grade,
//! so the Yang–Baxter equation splits exactly into finitely many matrix
//! identities per grade.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::combinators::{beta, block_a};
use crate::local_rep::{
    field, read_json, usize_field, value_to_scalar, LocalRep, RMatrix, RepError,
};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("grade {grade} exceeds the truncation g_max = {g_max}")]
    GradeOverflow { grade: u32, g_max: u32 },
    #[error("vector of length {found} does not have grade {grade} (expected {expected})")]
    VectorLength { grade: u32, expected: usize, found: usize },
    #[error("block ({b},{c},{k}) violates k ≤ c")]
    NotTriangular { b: u32, c: u32, k: u32 },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("intertwiner fails (f⊗f)R = R'(f⊗f): residual {residual:e}")]
    Precheck { residual: f64 },
}

/// `(b, c, k)`.
pub type BlockKey = (u32, u32, u32);

/// All block keys with `b + c ≤ g_max` and `k ≤ c`, in lexicographic order.
pub fn block_keys(g_max: u32) -> Vec<BlockKey> {
    let mut keys = Vec::new();
    for b in 0..=g_max {
        for c in 0..=g_max - b {
            for k in 0..=c {
                keys.push((b, c, k));
            }
        }
    }
    keys
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator<S> {
    dim: usize,
    q: S,
    g_max: u32,
    blocks: BTreeMap<BlockKey, DenseMatrix<S>>,
}

impl<S: Scalar> GradedOperator<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn g_max(&self) -> u32 {
        self.g_max
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&BlockKey, &DenseMatrix<S>)> {
        self.blocks.iter()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, b: u32, c: u32, k: u32) -> Option<&DenseMatrix<S>> {
        self.blocks.get(&(b, c, k))
    }

    fn block_i(&self, b: i64, c: i64, k: i64) -> Option<&DenseMatrix<S>> {
        if b < 0 || c < 0 || k < 0 {
            return None;
        }
        self.block(b as u32, c as u32, k as u32)
    }

    /// Replaces or adds a block without any triangularity check. Only meant
    /// for building deliberately broken operators.
    pub fn insert_block_unchecked(&mut self, b: u32, c: u32, k: u32, m: DenseMatrix<S>) {
        self.blocks.insert((b, c, k), m);
    }

    /// Whether every block has `k ≤ c` and the right size.
    pub fn is_triangular(&self) -> bool {
        self.blocks.iter().all(|(&(b, c, k), m)| {
            let side = self.dim.pow(b + c);
            k <= c && m.rows() == side && m.cols() == side
        })
    }

    /// `‖A‖₁‖A⁻¹‖₁` for every block, `None` where it is singular.
    pub fn condition_numbers(&self) -> BTreeMap<BlockKey, Option<f64>> {
        self.blocks.iter().map(|(&key, m)| (key, m.map(|v| v.magnitude()).cond_1())).collect()
    }

    /// Header `dim`, `q`, `g_max`, then one record per block with row-major
    /// entries as text.
    pub fn to_json(&self) -> String {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|(&(b, c, k), m)| {
                json!({
                    "b": b, "c": c, "k": k,
                    "entries": m.data().iter().map(S::to_text).collect::<Vec<_>>(),
                })
            })
            .collect();
        let doc = json!({
            "dim": self.dim,
            "q": self.q.to_text(),
            "g_max": self.g_max,
            "exact": S::EXACT,
            "blocks": blocks,
        });
        serde_json::to_string(&doc).expect("serializable")
    }

    /// Inverse of [`GradedOperator::to_json`]. Rejects blocks with `k > c` or
    /// beyond `g_max`.
    pub fn from_json(text: &str) -> Result<Self, TensorError> {
        let v: Value = serde_json::from_str(text).map_err(|e| RepError::Malformed(e.to_string()))?;
        Self::from_value(&v)
    }

    fn from_value(v: &Value) -> Result<Self, TensorError> {
        let dim = usize_field(v, "dim")?;
        let g_max = usize_field(v, "g_max")? as u32;
        let q: S = value_to_scalar(field(v, "q")?)?;
        if q.is_zero() {
            return Err(RepError::ZeroQ.into());
        }
        let list = field(v, "blocks")?
            .as_array()
            .ok_or_else(|| RepError::Malformed("blocks is not a list".into()))?;
        let mut blocks = BTreeMap::new();
        for rec in list {
            let b = usize_field(rec, "b")? as u32;
            let c = usize_field(rec, "c")? as u32;
            let k = usize_field(rec, "k")? as u32;
            if k > c {
                return Err(TensorError::NotTriangular { b, c, k });
            }
            if b + c > g_max {
                return Err(TensorError::GradeOverflow { grade: b + c, g_max });
            }
            let entries = field(rec, "entries")?
                .as_array()
                .ok_or_else(|| RepError::Malformed("entries is not a list".into()))?
                .iter()
                .map(value_to_scalar)
                .collect::<Result<Vec<S>, _>>()?;
            let side = dim.pow(b + c);
            let found = entries.len();
            let m = DenseMatrix::from_vec(side, side, entries).ok_or(RepError::Shape {
                dim,
                expected: side * side,
                found,
            })?;
            blocks.insert((b, c, k), m);
        }
        Ok(GradedOperator { dim, q, g_max, blocks })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TensorError> {
        Self::from_value(&read_json(path.as_ref())?)
    }
}

/// Builds every block `(b, c, k)` with `b + c ≤ g_max`, `k ≤ c` as the image of
/// `A^{b,c}_k` under `σ_i ↦ q R̂_i`. Blocks are built in parallel.
pub fn assemble<S: Scalar>(r: &RMatrix, q: S, g_max: u32) -> Result<GradedOperator<S>, TensorError> {
    let rep = LocalRep::new(r, q.clone())?;
    let blocks = block_keys(g_max)
        .into_par_iter()
        .map(|(b, c, k)| {
            let e = block_a(b as i64, c as i64, k as i64);
            rep.rep_elem_matrix(&e, b + c).map(|m| ((b, c, k), m))
        })
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    Ok(GradedOperator { dim: r.dim(), q, g_max, blocks })
}

/// Image of `β_{b,c}` on `b + c` copies: the single block of the diagonal
/// braiding.
pub fn diagonal_block<S: Scalar>(b: u32, c: u32, r: &RMatrix, q: S) -> Result<DenseMatrix<S>, TensorError> {
    let rep = LocalRep::new(r, q)?;
    Ok(rep.rep_elem_matrix(&beta(b, c), b + c)?)
}

/// Finitely many homogeneous components `grade ↦ vector of length N^grade`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedTensor<S> {
    pub dim: usize,
    pub components: BTreeMap<u32, Vec<S>>,
}

impl<S: Scalar> GradedTensor<S> {
    pub fn new(dim: usize) -> Self {
        GradedTensor { dim, components: BTreeMap::new() }
    }

    pub fn homogeneous(dim: usize, grade: u32, v: Vec<S>) -> Result<Self, TensorError> {
        check_len(dim, grade, &v)?;
        let mut t = Self::new(dim);
        t.components.insert(grade, v);
        Ok(t)
    }

    pub fn component(&self, grade: u32) -> Option<&[S]> {
        self.components.get(&grade).map(Vec::as_slice)
    }
}

fn check_len<S>(dim: usize, grade: u32, v: &[S]) -> Result<(), TensorError> {
    let expected = dim.pow(grade);
    if v.len() != expected {
        return Err(TensorError::VectorLength { grade, expected, found: v.len() });
    }
    Ok(())
}

fn kron_vec<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().flat_map(|a| y.iter().map(move |b| a.times(b))).collect()
}

/// One term of an exchange: `y` now carries `y_grade` indices, `x` carries
/// `x_grade`, and `vector` lives in `V^{⊗(y_grade + x_grade)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeTerm<S> {
    pub y_grade: u32,
    pub x_grade: u32,
    pub vector: Vec<S>,
}

/// Moves `y^{[c]}` past `x^{[b]}`: one term per present block `(b, c, k)`.
pub fn apply_exchange<S: Scalar>(
    t: &GradedOperator<S>,
    xb: &[S],
    b: u32,
    yc: &[S],
    c: u32,
) -> Result<Vec<ExchangeTerm<S>>, TensorError> {
    if b + c > t.g_max {
        return Err(TensorError::GradeOverflow { grade: b + c, g_max: t.g_max });
    }
    check_len(t.dim, b, xb)?;
    check_len(t.dim, c, yc)?;
    let xy = kron_vec(xb, yc);
    Ok((0..=c)
        .filter_map(|k| {
            t.block(b, c, k).map(|m| ExchangeTerm { y_grade: k, x_grade: b + c - k, vector: m.apply(&xy) })
        })
        .collect())
}

/// Residual of one output split of the graded Yang–Baxter equation.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitResidual {
    /// Input grades of `x`, `y`, `z`.
    pub abc: (u32, u32, u32),
    /// Output grades of `z` and `y`.
    pub ef: (u32, u32),
    pub residual: f64,
    pub exact_zero: bool,
}

/// Numeric counterpart of a [`crate::verify::VerificationReport`] for matrix
/// checks.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericReport {
    pub check: String,
    pub grade: u32,
    /// `max |L - R| / max(1, max |L|, max |R|)` over all splits.
    pub max_residual: f64,
    pub holds: bool,
    pub splits: Vec<SplitResidual>,
}

fn residual<S: Scalar>(l: &DenseMatrix<S>, r: &DenseMatrix<S>) -> (f64, bool) {
    let d = l.minus(r);
    let scale = l.max_abs().max(r.max_abs()).max(1.0);
    (d.max_abs() / scale, d.is_zero())
}

fn side_of(dim: usize, copies: u32) -> usize {
    dim.pow(copies)
}

/// `Σ_i (1_a ⊗ A^{b,c}_i)(A^{a,i}_e ⊗ 1)(1_e ⊗ A^{a+i-e,b+c-i}_f)` over the
/// blocks present in `t`.
pub fn ybe_lhs<S: Scalar>(t: &GradedOperator<S>, a: u32, b: u32, c: u32, e: u32, f: u32) -> DenseMatrix<S> {
    let g = a + b + c;
    let n = t.dim;
    let (a, b, c, e, f) = (a as i64, b as i64, c as i64, e as i64, f as i64);
    let mut acc = DenseMatrix::zeros(side_of(n, g), side_of(n, g));
    for i in 0..=(g as i64) {
        let (Some(m1), Some(m2), Some(m3)) = (
            t.block_i(b, c, i),
            t.block_i(a, i, e),
            t.block_i(a + i - e, b + c - i, f),
        ) else {
            continue;
        };
        let p1 = m1.padded(side_of(n, a as u32), 1);
        let p2 = m2.padded(1, side_of(n, (b + c - i) as u32));
        let p3 = m3.padded(side_of(n, e as u32), 1);
        acc = acc.plus(&p1.mul(&p2).mul(&p3));
    }
    acc
}

/// `Σ_j (A^{a,b}_j ⊗ 1_c)(1_j ⊗ A^{a+b-j,c}_{e+f-j})(A^{j,e+f-j}_e ⊗ 1)` over the
/// blocks present in `t`.
pub fn ybe_rhs<S: Scalar>(t: &GradedOperator<S>, a: u32, b: u32, c: u32, e: u32, f: u32) -> DenseMatrix<S> {
    let g = a + b + c;
    let n = t.dim;
    let (a, b, c, e, f) = (a as i64, b as i64, c as i64, e as i64, f as i64);
    let g_i = g as i64;
    let mut acc = DenseMatrix::zeros(side_of(n, g), side_of(n, g));
    for j in 0..=g_i {
        let (Some(m1), Some(m2), Some(m3)) = (
            t.block_i(a, b, j),
            t.block_i(a + b - j, c, e + f - j),
            t.block_i(j, e + f - j, e),
        ) else {
            continue;
        };
        if g_i - e - f < 0 {
            continue;
        }
        let p1 = m1.padded(1, side_of(n, c as u32));
        let p2 = m2.padded(side_of(n, j as u32), 1);
        let p3 = m3.padded(1, side_of(n, (g_i - e - f) as u32));
        acc = acc.plus(&p1.mul(&p2).mul(&p3));
    }
    acc
}

/// Checks both reorderings of `x•y•z•` into `z•y•x•` for every input split
/// `a + b + c = g` and every output split `(e, f)`. Exact scalars must agree
/// exactly; floating ones within `tol` relative to the largest entry.
pub fn check_ybe_graded<S: Scalar>(t: &GradedOperator<S>, g: u32, tol: f64) -> Result<NumericReport, TensorError> {
    if g > t.g_max {
        return Err(TensorError::GradeOverflow { grade: g, g_max: t.g_max });
    }
    let mut tasks = Vec::new();
    for a in 0..=g {
        for b in 0..=g - a {
            let c = g - a - b;
            for e in 0..=g {
                for f in 0..=g - e {
                    tasks.push((a, b, c, e, f));
                }
            }
        }
    }
    let splits: Vec<SplitResidual> = tasks
        .into_par_iter()
        .map(|(a, b, c, e, f)| {
            let l = ybe_lhs(t, a, b, c, e, f);
            let r = ybe_rhs(t, a, b, c, e, f);
            let (residual, exact_zero) = residual(&l, &r);
            SplitResidual { abc: (a, b, c), ef: (e, f), residual, exact_zero }
        })
        .collect();
    let max_residual = splits.iter().map(|s| s.residual).fold(0.0, f64::max);
    let holds = if S::EXACT {
        splits.iter().all(|s| s.exact_zero)
    } else {
        max_residual <= tol
    };
    Ok(NumericReport { check: "ybe".into(), grade: g, max_residual, holds, splits })
}

/// A map `f: V → V'`, stored as an `N' × N` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Intertwiner<S> {
    pub dim_in: usize,
    pub dim_out: usize,
    pub f: DenseMatrix<S>,
}

impl<S: Scalar> Intertwiner<S> {
    pub fn new(f: DenseMatrix<S>) -> Self {
        Intertwiner { dim_in: f.cols(), dim_out: f.rows(), f }
    }

    pub fn scalar(dim: usize, lambda: S) -> Self {
        Self::new(DenseMatrix::identity(dim).scale(&lambda))
    }

    pub fn diagonal(d: Vec<S>) -> Self {
        let mut m = DenseMatrix::zeros(d.len(), d.len());
        for (i, v) in d.into_iter().enumerate() {
            m.set(i, i, v);
        }
        Self::new(m)
    }

    /// `{"dim_in": N, "dim_out": N', "entries": [...]}`, row-major `N' × N`.
    pub fn from_json(text: &str) -> Result<Self, TensorError> {
        let v: Value = serde_json::from_str(text).map_err(|e| RepError::Malformed(e.to_string()))?;
        Self::from_value(&v)
    }

    fn from_value(v: &Value) -> Result<Self, TensorError> {
        let dim_in = usize_field(v, "dim_in")?;
        let dim_out = usize_field(v, "dim_out")?;
        let entries = field(v, "entries")?
            .as_array()
            .ok_or_else(|| RepError::Malformed("entries is not a list".into()))?
            .iter()
            .map(value_to_scalar)
            .collect::<Result<Vec<S>, _>>()?;
        let found = entries.len();
        let f = DenseMatrix::from_vec(dim_out, dim_in, entries).ok_or(RepError::Shape {
            dim: dim_in,
            expected: dim_in * dim_out,
            found,
        })?;
        Ok(Intertwiner { dim_in, dim_out, f })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TensorError> {
        Self::from_value(&read_json(path.as_ref())?)
    }

    /// `f^{⊗m}`.
    pub fn power(&self, m: u32) -> DenseMatrix<S> {
        (0..m).fold(DenseMatrix::identity(1), |acc, _| acc.kron(&self.f))
    }
}

/// `max |(f⊗f)R - R'(f⊗f)|`, relative to the largest entry.
pub fn intertwining_residual<S: Scalar>(
    r: &DenseMatrix<S>,
    r_prime: &DenseMatrix<S>,
    f: &Intertwiner<S>,
) -> Result<(f64, bool), TensorError> {
    let ff = f.power(2);
    if r.cols() != ff.cols() || r_prime.rows() != ff.rows() {
        return Err(TensorError::DimMismatch(format!(
            "f is {}x{}, R is {}x{}, R' is {}x{}",
            f.dim_out, f.dim_in, r.rows(), r.cols(), r_prime.rows(), r_prime.cols()
        )));
    }
    Ok(residual(&ff.mul(r), &r_prime.mul(&ff)))
}

/// Checks `f^{⊗(b+c)} A^{b,c}_k = A'^{b,c}_k f^{⊗(b+c)}` for all blocks with
/// `b + c ≤ g`, after checking that `f` intertwines `R̂` and `R̂'` themselves
/// (read off blocks `(1,1,1)`, so both operators need `g_max ≥ 2`).
pub fn check_functoriality<S: Scalar>(
    t: &GradedOperator<S>,
    t_prime: &GradedOperator<S>,
    f: &Intertwiner<S>,
    g: u32,
    tol: f64,
) -> Result<NumericReport, TensorError> {
    if f.dim_in != t.dim || f.dim_out != t_prime.dim {
        return Err(TensorError::DimMismatch(format!(
            "f maps dimension {} to {}, operators have {} and {}",
            f.dim_in, f.dim_out, t.dim, t_prime.dim
        )));
    }
    if t.q != t_prime.q {
        return Err(TensorError::DimMismatch("operators assembled at different q".into()));
    }
    for op in [t, t_prime] {
        if g > op.g_max || op.g_max < 2 {
            return Err(TensorError::GradeOverflow { grade: g.max(2), g_max: op.g_max });
        }
    }
    let (pre, pre_exact) = intertwining_residual(
        t.block(1, 1, 1).expect("assembled"),
        t_prime.block(1, 1, 1).expect("assembled"),
        f,
    )?;
    let pre_ok = if S::EXACT { pre_exact } else { pre <= tol };
    if !pre_ok {
        return Err(TensorError::Precheck { residual: pre });
    }
    let mut splits = Vec::new();
    for (&(b, c, k), m) in t.blocks.iter().filter(|(&(b, c, _), _)| b + c <= g) {
        let m_prime = t_prime.block(b, c, k).ok_or_else(|| {
            TensorError::DimMismatch(format!("block ({b},{c},{k}) missing from the target"))
        })?;
        let fp = f.power(b + c);
        let (res, exact_zero) = residual(&fp.mul(m), &m_prime.mul(&fp));
        splits.push(SplitResidual { abc: (0, b, c), ef: (k, b + c - k), residual: res, exact_zero });
    }
    let max_residual = splits.iter().map(|s| s.residual).fold(0.0, f64::max);
    let holds = if S::EXACT { splits.iter().all(|s| s.exact_zero) } else { max_residual <= tol };
    Ok(NumericReport { check: "functoriality".into(), grade: g, max_residual, holds, splits })
}
