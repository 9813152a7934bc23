//! Small dense row-major matrices over a [`Scalar`].

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for DenseMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.data.chunks(self.cols.max(1)) {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    /// `None` if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Option<Self> {
        (data.len() == rows * cols).then_some(DenseMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn mul(&self, other: &DenseMatrix<S>) -> DenseMatrix<S> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *d = d.plus(&a.times(b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect()
    }

    fn zip_with(&self, other: &DenseMatrix<S>, f: impl Fn(&S, &S) -> S) -> DenseMatrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn plus(&self, other: &DenseMatrix<S>) -> DenseMatrix<S> {
        self.zip_with(other, S::plus)
    }

    pub fn minus(&self, other: &DenseMatrix<S>) -> DenseMatrix<S> {
        self.zip_with(other, S::minus)
    }

    pub fn scale(&self, c: &S) -> DenseMatrix<S> {
        self.map(|v| v.times(c))
    }

    /// Kronecker product; the first factor is the most significant index.
    pub fn kron(&self, other: &DenseMatrix<S>) -> DenseMatrix<S> {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * c + j * other.cols + l] = a.times(other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// `I_left ⊗ self ⊗ I_right`.
    pub fn padded(&self, left: usize, right: usize) -> DenseMatrix<S> {
        let mut m = self.clone();
        if right > 1 {
            m = m.kron(&Self::identity(right));
        }
        if left > 1 {
            m = Self::identity(left).kron(&m);
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(S::magnitude).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix<S>) -> f64 {
        self.minus(other).max_abs()
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c).magnitude()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Gauss–Jordan with pivots of largest magnitude; `None` if singular.
    pub fn inverse(&self) -> Option<DenseMatrix<S>> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .max_by(|&x, &y| a.get(x, col).magnitude().total_cmp(&a.get(y, col).magnitude()))?;
            if !S::EXACT && a.get(pivot, col).magnitude() < f64::EPSILON * a.max_abs().max(1.0) {
                return None;
            }
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a.get(col, col).recip()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Some(inv)
    }

    /// `‖M‖₁ ‖M⁻¹‖₁`, or `None` if singular.
    pub fn cond_1(&self) -> Option<f64> {
        self.inverse().map(|inv| self.norm_1() * inv.norm_1())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, k: &S) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.data[i] = self.data[i].times(k);
        }
    }

    /// `row[dst] -= k * row[src]`.
    fn sub_row_multiple(&mut self, dst: usize, src: usize, k: &S) {
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let v = self.data[dst * self.cols + c].minus(&k.times(s));
                self.data[dst * self.cols + c] = v;
            }
        }
    }

    /// Replaces `self` by `(I_{N^i} ⊗ local ⊗ I) · self`, where `local` acts on
    /// tensor copies `i` and `i+1` (zero-based) of `V^{⊗n}`, `dim V = n_dim`.
    pub fn left_apply_local(&mut self, local: &DenseMatrix<S>, n_dim: usize, i: u32, n: u32) {
        let pair = n_dim * n_dim;
        assert_eq!(local.rows, pair);
        assert!(i + 2 <= n, "copies {i}, {} out of range for {n}", i + 1);
        let head = n_dim.pow(i);
        let tail = n_dim.pow(n - i - 2);
        assert_eq!(self.rows, head * pair * tail);
        let mut buf = vec![S::zero(); pair];
        for h in 0..head {
            for t in 0..tail {
                let row = |p: usize| (h * pair + p) * tail + t;
                for col in 0..self.cols {
                    for (p, b) in buf.iter_mut().enumerate() {
                        *b = self.data[row(p) * self.cols + col].clone();
                    }
                    if buf.iter().all(S::is_zero) {
                        continue;
                    }
                    let out = local.apply(&buf);
                    for (p, v) in out.into_iter().enumerate() {
                        self.data[row(p) * self.cols + col] = v;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn m(rows: usize, cols: usize, v: &[i64]) -> DenseMatrix<Rational> {
        DenseMatrix::from_vec(rows, cols, v.iter().map(|&x| Rational::from_i64(x)).collect()).unwrap()
    }

    #[test]
    fn product_and_kron() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 2, &[0, 1, 1, 0]);
        assert_eq!(a.mul(&b), m(2, 2, &[2, 1, 4, 3]));
        let k = DenseMatrix::identity(2).kron(&b);
        assert_eq!(k.get(0, 1), &Rational::from_i64(1));
        assert_eq!(k.get(2, 3), &Rational::from_i64(1));
        assert!(k.get(0, 3).is_zero());
        assert_eq!(a.kron(&DenseMatrix::identity(1)), a);
        assert!(DenseMatrix::<Rational>::from_vec(2, 2, vec![]).is_none());
    }

    #[test]
    fn inverse_exact_and_float() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), DenseMatrix::identity(2));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let f = a.map(f64::from_rational);
        let fi = f.inverse().unwrap();
        assert!(f.mul(&fi).max_abs_diff(&DenseMatrix::identity(2)) < 1e-12);
        assert!(f.cond_1().unwrap() > 1.0);
    }

    #[test]
    fn local_kernel_matches_padding() {
        let r = m(4, 4, &[1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1]);
        let x = m(8, 8, &(0..64).collect::<Vec<_>>());
        for i in 0..2u32 {
            let mut y = x.clone();
            y.left_apply_local(&r, 2, i, 3);
            let full = r.padded(1 << i, 1 << (1 - i));
            assert_eq!(y, full.mul(&x));
        }
    }
}
