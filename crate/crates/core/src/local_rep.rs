//! The local representation `σ_i ↦ q R̂_i` of the positive braid monoid on
//! `V^{⊗n}`, extended linearly to [`RingElement`]s.
//!
//! Tensor index `(i_1, …, i_n)` flattens to `i_1 N^{n-1} + … + i_n`: the first
//! copy is the most significant digit.

use std::collections::HashMap;
use std::path::Path;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::braid::{NormalForm, PositiveWord};
use crate::coeff::{Assignment, CoeffError, Param};
use crate::matrix::DenseMatrix;
use crate::ring::RingElement;
use crate::scalar::{parse_rational, rational_to_text, Rational, Scalar};

#[derive(Debug, Error)]
pub enum RepError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("expected {expected} entries for dim {dim}, found {found}")]
    Shape { dim: usize, expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("letter σ_{letter} does not act on {n} copies")]
    LetterOutOfRange { letter: u32, n: u32 },
    #[error("coefficient needs a value for {0}; only q may appear")]
    FormalParameter(Param),
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl From<CoeffError> for RepError {
    fn from(e: CoeffError) -> Self {
        match e {
            CoeffError::Unassigned(p) => RepError::FormalParameter(p),
            CoeffError::Singular(_) => RepError::ZeroQ,
        }
    }
}

pub(crate) fn read_json(path: &Path) -> Result<Value, RepError> {
    let text = std::fs::read_to_string(path).map_err(|e| RepError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| RepError::Malformed(e.to_string()))
}

/// Reads a JSON number or string as an exact rational. Numbers are read from
/// their decimal text, so `0.1` means `1/10`.
pub(crate) fn value_to_rational(v: &Value) -> Result<Rational, RepError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(RepError::Malformed(format!("entry {other} is not a number"))),
    };
    parse_rational(&text).map_err(|e| RepError::Malformed(e.to_string()))
}

pub(crate) fn value_to_scalar<S: Scalar>(v: &Value) -> Result<S, RepError> {
    match v {
        Value::String(s) => S::parse_text(s).map_err(|e| RepError::Malformed(e.to_string())),
        other => value_to_rational(other).map(|r| S::from_rational(&r)),
    }
}

pub(crate) fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value, RepError> {
    obj.get(name).ok_or_else(|| RepError::Malformed(format!("missing field {name:?}")))
}

pub(crate) fn usize_field(obj: &Value, name: &str) -> Result<usize, RepError> {
    field(obj, name)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| RepError::Malformed(format!("field {name:?} is not a non-negative integer")))
}

/// An `N² × N²` matrix on `V ⊗ V` with exact entries.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    dim: usize,
    entries: DenseMatrix<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RMatrixFile {
    dim: usize,
    entries: Vec<String>,
}

/// Outcome of [`RMatrix::check`].
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrixCheck {
    /// Largest entry of `R₁R₂R₁ - R₂R₁R₂` on `V^{⊗3}`.
    pub ybe_residual: f64,
    pub invertible: bool,
    pub condition_number: Option<f64>,
    pub holds: bool,
}

impl RMatrix {
    pub fn new(dim: usize, entries: Vec<Rational>) -> Result<Self, RepError> {
        let side = dim * dim;
        let found = entries.len();
        DenseMatrix::from_vec(side, side, entries)
            .map(|entries| RMatrix { dim, entries })
            .ok_or(RepError::Shape { dim, expected: side * side, found })
    }

    pub fn identity(dim: usize) -> Self {
        RMatrix { dim, entries: DenseMatrix::identity(dim * dim) }
    }

    /// `u ⊗ v ↦ v ⊗ u`.
    pub fn flip(dim: usize) -> Self {
        let side = dim * dim;
        let mut m = DenseMatrix::zeros(side, side);
        for i in 0..dim {
            for j in 0..dim {
                m.set(j * dim + i, i * dim + j, Rational::from_i64(1));
            }
        }
        RMatrix { dim, entries: m }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &DenseMatrix<Rational> {
        &self.entries
    }

    pub fn to_matrix<S: Scalar>(&self) -> DenseMatrix<S> {
        self.entries.map(S::from_rational)
    }

    /// Parses `{"dim": N, "entries": [...]}` with `N⁴` row-major entries, each
    /// a JSON number or a string such as `"-3/4"` or `"0.25"`.
    pub fn from_json(text: &str) -> Result<Self, RepError> {
        let v: Value = serde_json::from_str(text).map_err(|e| RepError::Malformed(e.to_string()))?;
        Self::from_value(&v)
    }

    fn from_value(v: &Value) -> Result<Self, RepError> {
        let dim = usize_field(v, "dim")?;
        if dim == 0 {
            return Err(RepError::Malformed("dim must be positive".into()));
        }
        let list = field(v, "entries")?
            .as_array()
            .ok_or_else(|| RepError::Malformed("entries is not a list".into()))?;
        let entries = list.iter().map(value_to_rational).collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, entries)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, RepError> {
        Self::from_value(&read_json(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        let file = RMatrixFile {
            dim: self.dim,
            entries: self.entries.data().iter().map(rational_to_text).collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    fn braid_sides<S: Scalar>(&self) -> (DenseMatrix<S>, DenseMatrix<S>) {
        let r = self.to_matrix::<S>();
        let r1 = r.padded(1, self.dim);
        let r2 = r.padded(self.dim, 1);
        (r1.mul(&r2).mul(&r1), r2.mul(&r1).mul(&r2))
    }

    /// Braid relation on `V^{⊗3}` in double precision, and invertibility.
    pub fn check(&self, tol: f64) -> RMatrixCheck {
        let (l, r) = self.braid_sides::<f64>();
        let ybe_residual = l.max_abs_diff(&r);
        let invertible = self.entries.inverse().is_some();
        let condition_number = self.to_matrix::<f64>().cond_1();
        RMatrixCheck {
            ybe_residual,
            invertible,
            condition_number,
            holds: ybe_residual <= tol && invertible && condition_number.is_some(),
        }
    }

    /// Braid relation and invertibility in exact arithmetic.
    pub fn check_exact(&self) -> bool {
        let (l, r) = self.braid_sides::<Rational>();
        l == r && self.entries.inverse().is_some()
    }
}

/// Matrix of an element acting on `n` tensor copies.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<S> {
    pub n: u32,
    pub dim: usize,
    pub matrix: DenseMatrix<S>,
}

#[derive(Serialize, Deserialize)]
struct OperatorFile {
    dim: usize,
    n: u32,
    entries: Vec<String>,
}

impl<S: Scalar> DenseOperator<S> {
    /// Same layout as an R-matrix file, with the number of copies `n`.
    pub fn to_json(&self) -> String {
        let file = OperatorFile {
            dim: self.dim,
            n: self.n,
            entries: self.matrix.data().iter().map(S::to_text).collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, RepError> {
        let v: Value = serde_json::from_str(text).map_err(|e| RepError::Malformed(e.to_string()))?;
        let dim = usize_field(&v, "dim")?;
        let n = usize_field(&v, "n")? as u32;
        let list = field(&v, "entries")?
            .as_array()
            .ok_or_else(|| RepError::Malformed("entries is not a list".into()))?;
        let entries = list.iter().map(value_to_scalar).collect::<Result<Vec<S>, _>>()?;
        let side = dim.pow(n);
        let found = entries.len();
        let matrix = DenseMatrix::from_vec(side, side, entries).ok_or(RepError::Shape {
            dim,
            expected: side * side,
            found,
        })?;
        Ok(DenseOperator { n, dim, matrix })
    }
}

/// `ρ_{qR̂}` at a fixed numeric `q`. Images of basis braids are cached.
pub struct LocalRep<S: Scalar> {
    dim: usize,
    q: S,
    r: DenseMatrix<S>,
    cache: RwLock<HashMap<(NormalForm, u32), DenseMatrix<S>>>,
}

impl<S: Scalar> LocalRep<S> {
    pub fn new(r: &RMatrix, q: S) -> Result<Self, RepError> {
        if q.is_zero() {
            return Err(RepError::ZeroQ);
        }
        Ok(LocalRep { dim: r.dim, r: r.to_matrix(), q, cache: RwLock::new(HashMap::new()) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    /// `R̂` itself, without the factor `q`.
    pub fn r_matrix(&self) -> &DenseMatrix<S> {
        &self.r
    }

    fn check_letters(letters: &[u32], n: u32) -> Result<(), RepError> {
        match letters.iter().find(|&&l| l + 1 > n) {
            Some(&letter) => Err(RepError::LetterOutOfRange { letter, n }),
            None => Ok(()),
        }
    }

    /// Ordered product of `q R̂_i` over the letters.
    pub fn word_matrix(&self, letters: &[u32], n: u32) -> Result<DenseMatrix<S>, RepError> {
        Self::check_letters(letters, n)?;
        let mut m = DenseMatrix::identity(self.dim.pow(n));
        for &l in letters.iter().rev() {
            m.left_apply_local(&self.r, self.dim, l - 1, n);
        }
        let scale = self.q.powi(letters.len() as i32).expect("q is nonzero");
        Ok(m.scale(&scale))
    }

    pub fn rep_word(&self, w: &PositiveWord, n: u32) -> Result<DenseOperator<S>, RepError> {
        Ok(DenseOperator { n, dim: self.dim, matrix: self.word_matrix(w.letters(), n)? })
    }

    fn basis_matrix(&self, b: &NormalForm, n: u32) -> Result<DenseMatrix<S>, RepError> {
        let key = (b.clone(), n);
        if let Some(m) = self.cache.read().expect("cache lock poisoned").get(&key) {
            return Ok(m.clone());
        }
        let m = self.word_matrix(b.word().letters(), n)?;
        self.cache.write().expect("cache lock poisoned").insert(key, m.clone());
        Ok(m)
    }

    /// `Σ_w c_w(q) ρ(w)` on `n` copies.
    pub fn rep_elem_matrix(&self, e: &RingElement, n: u32) -> Result<DenseMatrix<S>, RepError> {
        let assignment = Assignment::new().with(Param::Q, self.q.clone());
        let side = self.dim.pow(n);
        let mut out = DenseMatrix::zeros(side, side);
        for (b, c) in e.terms() {
            let c = c.eval(&assignment)?;
            out = out.plus(&self.basis_matrix(b, n)?.scale(&c));
        }
        Ok(out)
    }

    pub fn rep_elem(&self, e: &RingElement, n: u32) -> Result<DenseOperator<S>, RepError> {
        Ok(DenseOperator { n, dim: self.dim, matrix: self.rep_elem_matrix(e, n)? })
    }
}

/// One-shot [`LocalRep::rep_word`].
pub fn rep_word<S: Scalar>(w: &PositiveWord, n: u32, q: S, r: &RMatrix) -> Result<DenseOperator<S>, RepError> {
    LocalRep::new(r, q)?.rep_word(w, n)
}

/// One-shot [`LocalRep::rep_elem`].
pub fn rep_elem<S: Scalar>(e: &RingElement, n: u32, q: S, r: &RMatrix) -> Result<DenseOperator<S>, RepError> {
    LocalRep::new(r, q)?.rep_elem(e, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinators::{shuffle, small_p};
    use crate::coeff::LaurentPoly;

    fn word(s: &str) -> PositiveWord {
        s.parse().unwrap()
    }

    #[test]
    fn loads_and_validates_shape() {
        let r = RMatrix::from_json(r#"{"dim":1,"entries":["2/3"]}"#).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(RMatrix::from_json(r#"{"dim":2,"entries":[1,0,0]}"#).is_err());
        assert!(RMatrix::from_json(r#"{"entries":[1]}"#).is_err());
        assert!(RMatrix::from_json(r#"{"dim":1,"entries":["x"]}"#).is_err());
        let f = RMatrix::flip(3);
        assert_eq!(RMatrix::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn fixtures_are_braidings() {
        for n in 2..4 {
            assert!(RMatrix::identity(n).check(1e-12).holds);
            assert!(RMatrix::flip(n).check(1e-12).holds);
            assert!(RMatrix::flip(n).check_exact());
        }
        let mut e: Vec<Rational> = (1..=16).map(Rational::from_i64).collect();
        e[5] = Rational::from_i64(-7);
        let bad = RMatrix::new(2, e).unwrap();
        assert!(!bad.check(1e-9).holds);
        assert!(!bad.check_exact());
    }

    #[test]
    fn word_images() {
        let r = RMatrix::flip(2);
        let rep = LocalRep::new(&r, 2.0f64).unwrap();
        let s1 = rep.rep_word(&word("1"), 2).unwrap();
        assert_eq!(s1.matrix, r.to_matrix::<f64>().scale(&2.0));
        let e = rep.rep_word(&PositiveWord::identity(), 3).unwrap();
        assert_eq!(e.matrix, DenseMatrix::identity(8));
        let a = rep.rep_word(&word("1 2 1"), 3).unwrap();
        let b = rep.rep_word(&word("2 1 2"), 3).unwrap();
        assert!(a.matrix.max_abs_diff(&b.matrix) < 1e-12);
        assert!(matches!(
            rep.rep_word(&word("2"), 2),
            Err(RepError::LetterOutOfRange { letter: 2, n: 2 })
        ));
        assert!(matches!(LocalRep::new(&r, 0.0f64), Err(RepError::ZeroQ)));
    }

    #[test]
    fn element_images() {
        let r = RMatrix::flip(2);
        let q = Rational::from_i64(3);
        let rep = LocalRep::new(&r, q.clone()).unwrap();
        let sh = rep.rep_elem(&shuffle(1, 1), 2).unwrap();
        let expected = DenseMatrix::identity(4).plus(&r.to_matrix::<Rational>().scale(&q));
        assert_eq!(sh.matrix, expected);
        assert!(rep.rep_elem(&RingElement::zero(), 2).unwrap().matrix.is_zero());

        let at_one = LocalRep::new(&r, Rational::from_i64(1)).unwrap();
        let p = at_one.rep_elem(&small_p(1, 1), 2).unwrap();
        assert_eq!(p.matrix, DenseMatrix::identity(4).minus(&r.to_matrix()));

        let formal = RingElement::scalar(LaurentPoly::param(Param::X));
        assert!(matches!(rep.rep_elem(&formal, 1), Err(RepError::FormalParameter(Param::X))));
    }

    #[test]
    fn operator_json_round_trip() {
        let rep = LocalRep::new(&RMatrix::flip(2), 0.1f64).unwrap();
        let op = rep.rep_elem(&shuffle(2, 1), 3).unwrap();
        let back = DenseOperator::<f64>::from_json(&op.to_json()).unwrap();
        assert_eq!(back, op);
    }
}
