//! Dense complex linear algebra for small dimensions (≤ 16).
//!
//! Row-major storage, no sparsity. The eigensolver is a cyclic Jacobi
//! iteration on the Hermitian input, which at these sizes is both robust and
//! dependency-free.

use crate::error::Error;
use crate::{Result, TOL_HERMITIAN, TOL_JACOBI_OFFDIAG, TOL_PSD_REJECT};

/// Complex scalar with f64 components.
pub type Complex64 = num_complex::Complex<f64>;

/// Shorthand for a real complex scalar.
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Ordered tensor-factor dimensions annotating a vector or square matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemDims {
    dims: Vec<usize>,
}

impl SubsystemDims {
    /// Build from explicit factor dimensions. All factors must be ≥ 1.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidValue(
                "subsystem dimensions must be positive".into(),
            ));
        }
        Ok(Self { dims })
    }

    /// `n` qubit factors.
    pub fn qubits(n: usize) -> Self {
        Self { dims: vec![2; n] }
    }

    /// A single factor of dimension `d`.
    pub fn single(d: usize) -> Self {
        Self { dims: vec![d] }
    }

    pub fn factors(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Total Hilbert-space dimension (product of factors).
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major strides of the factor indices.
    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, cx(1.0, 0.0));
        }
        m
    }

    /// Build from real entries (imaginary parts zero).
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&r| cx(r, 0.0)).collect())
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Outer product `col * row†` of two coefficient slices.
    pub fn outer(col: &[Complex64], row: &[Complex64]) -> Self {
        let mut m = Self::zeros(col.len(), row.len());
        for (i, &a) in col.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, a * b.conj());
            }
        }
        m
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

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.rows, self.cols, entries)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::default() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Apply the matrix to a coefficient vector.
    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Complex64::default(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::default();
            for (j, &vj) in v.iter().enumerate() {
                acc += self.get(i, j) * vj;
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise deviation from another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from conjugate symmetry.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..=i {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol
    }

    /// Average with the adjoint, removing rounding-level asymmetry.
    pub fn hermitized(&self) -> Self {
        self.add(&self.adjoint())
            .expect("square matrix")
            .scale(cx(0.5, 0.0))
    }

    /// Kronecker product; dimensions multiply.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == Complex64::default() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Trace out every factor not listed in `keep`; the kept factors retain
    /// their original relative order. Preserves the trace.
    pub fn partial_trace(&self, dims: &SubsystemDims, keep: &[usize]) -> Result<Self> {
        self.check_dims(dims)?;
        for &k in keep {
            if k >= dims.len() {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    count: dims.len(),
                });
            }
        }
        let factors = dims.factors();
        let strides = dims.strides();
        let kept: Vec<usize> = (0..factors.len()).filter(|i| keep.contains(i)).collect();
        let traced: Vec<usize> = (0..factors.len()).filter(|i| !keep.contains(i)).collect();
        let kept_dim: usize = kept.iter().map(|&i| factors[i]).product();
        let traced_dim: usize = traced.iter().map(|&i| factors[i]).product();

        // Map a flat index over a factor subset to the composite index offset.
        let offset = |subset: &[usize], mut flat: usize| -> usize {
            let mut off = 0;
            for &fi in subset.iter().rev() {
                off += (flat % factors[fi]) * strides[fi];
                flat /= factors[fi];
            }
            off
        };

        let mut out = Self::zeros(kept_dim, kept_dim);
        for r in 0..kept_dim {
            let ro = offset(&kept, r);
            for c in 0..kept_dim {
                let co = offset(&kept, c);
                let mut acc = Complex64::default();
                for t in 0..traced_dim {
                    let to = offset(&traced, t);
                    acc += self.get(ro + to, co + to);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Transpose the indices of a single tensor factor.
    pub fn partial_transpose(&self, dims: &SubsystemDims, factor: usize) -> Result<Self> {
        self.check_dims(dims)?;
        if factor >= dims.len() {
            return Err(Error::IndexOutOfRange {
                index: factor,
                count: dims.len(),
            });
        }
        let d = dims.factors()[factor];
        let stride = dims.strides()[factor];
        let n = dims.total();
        let mut out = Self::zeros(n, n);
        for row in 0..n {
            let ri = (row / stride) % d;
            for col in 0..n {
                let ci = (col / stride) % d;
                // swap the chosen factor's row/col indices
                let new_row = row - ri * stride + ci * stride;
                let new_col = col - ci * stride + ri * stride;
                out.set(new_row, new_col, self.get(row, col));
            }
        }
        Ok(out)
    }

    /// Ascending real eigenvalues of a Hermitian matrix.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.hermitian_eig()?.values)
    }

    /// Full eigendecomposition of a Hermitian matrix via cyclic Jacobi
    /// rotations. Eigenvalues ascend; `vectors` holds eigenvectors as columns.
    pub fn hermitian_eig(&self) -> Result<Eigen> {
        // NaN entries would slide through the tolerance comparison below
        if self
            .entries
            .iter()
            .any(|e| !e.re.is_finite() || !e.im.is_finite())
        {
            return Err(Error::InvalidValue("non-finite matrix entry".into()));
        }
        let dev = if self.is_square() {
            self.hermiticity_deviation()
        } else {
            f64::INFINITY
        };
        if dev > TOL_HERMITIAN {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let n = self.rows;
        let mut a = self.hermitized();
        let mut vecs = Self::identity(n);

        for _sweep in 0..100 {
            if offdiag_frobenius(&a) < TOL_JACOBI_OFFDIAG {
                break;
            }
            for p in 0..n.saturating_sub(1) {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut vecs, p, q);
                }
            }
        }

        let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a.get(i, i).re, i)).collect();
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap().then(x.1.cmp(&y.1)));

        let values: Vec<f64> = pairs.iter().map(|&(v, _)| v).collect();
        let mut vectors = Self::zeros(n, n);
        for (new_col, &(_, old_col)) in pairs.iter().enumerate() {
            for row in 0..n {
                vectors.set(row, new_col, vecs.get(row, old_col));
            }
        }
        Ok(Eigen { values, vectors })
    }

    /// Hermitian PSD square root. Eigenvalues slightly below zero are clamped;
    /// anything under the rejection floor is an error.
    pub fn matrix_sqrt_psd(&self) -> Result<Self> {
        let eig = self.hermitian_eig()?;
        if let Some(&min) = eig.values.first().filter(|&&v| v < TOL_PSD_REJECT) {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
        let roots: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0).sqrt()).collect();
        let mut scaled = eig.vectors.clone();
        for (col, &r) in roots.iter().enumerate() {
            for row in 0..self.rows {
                let v = scaled.get(row, col) * r;
                scaled.set(row, col, v);
            }
        }
        Ok(scaled.mul(&eig.vectors.adjoint())?.hermitized())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn check_dims(&self, dims: &SubsystemDims) -> Result<()> {
        if !self.is_square() || self.rows != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, factors give {}",
                self.rows,
                self.cols,
                dims.total()
            )));
        }
        Ok(())
    }
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, ordered to match `values`.
    pub vectors: ComplexMatrix,
}

fn offdiag_frobenius(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation zeroing the (p, q) entry of a Hermitian matrix.
///
/// The pivot `a_pq = r e^{iφ}` is first made real by the diagonal phase
/// W = diag(1, e^{-iφ}) on the (p, q) plane, then a real rotation with
/// tan 2θ = 2r / (a_qq − a_pp) kills it. Both are accumulated into `vecs`.
fn jacobi_rotate(a: &mut ComplexMatrix, vecs: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq / r; // e^{iφ}
    let tau = (a.get(q, q).re - a.get(p, p).re) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Plane rotation V = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on columns (p, q).
    let vpp = cx(c, 0.0);
    let vpq = cx(s, 0.0);
    let vqp = -phase.conj() * s;
    let vqq = phase.conj() * c;

    let n = a.rows();
    // A <- A V on columns p, q
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * vpp + akq * vqp);
        a.set(k, q, akp * vpq + akq * vqq);
    }
    // A <- V† A on rows p, q
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, vpp.conj() * apk + vqp.conj() * aqk);
        a.set(q, k, vpq.conj() * apk + vqq.conj() * aqk);
    }
    // clean the pivot and keep the diagonal exactly real
    a.set(p, q, Complex64::default());
    a.set(q, p, Complex64::default());
    let dp = a.get(p, p);
    let dq = a.get(q, q);
    a.set(p, p, cx(dp.re, 0.0));
    a.set(q, q, cx(dq.re, 0.0));

    // accumulate eigenvectors: E <- E V
    for k in 0..n {
        let ekp = vecs.get(k, p);
        let ekq = vecs.get(k, q);
        vecs.set(k, p, ekp * vpp + ekq * vqp);
        vecs.set(k, q, ekp * vpq + ekq * vqq);
    }
}

/// Pauli x.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)],
    )
    .unwrap()
}

/// Pauli y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![cx(0.0, 0.0), cx(0.0, -1.0), cx(0.0, 1.0), cx(0.0, 0.0)],
    )
    .unwrap()
}

/// Pauli z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(-1.0, 0.0)],
    )
    .unwrap()
}
