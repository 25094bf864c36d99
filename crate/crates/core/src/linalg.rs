//! Dense complex linear algebra: matrices, state vectors, bipartite states.
//!
//! Matrices are row-major over `Complex64`. Sizes are desk scale by design;
//! constructors enforce the caps in [`crate::tolerances`] so a misconfigured
//! experiment fails fast instead of allocating gigabytes.

use crate::error::{Error, Result};
use crate::tolerances::{MAX_BIPARTITE_AMPLITUDES, MAX_DENSE_ENTRIES, NORM_TOL};
use crate::C64;

fn ensure_finite(data: &[C64]) -> Result<()> {
    for (i, z) in data.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite(i));
        }
    }
    Ok(())
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    fn check_shape(rows: usize, cols: usize) -> Result<usize> {
        if rows == 0 || cols == 0 {
            return Err(Error::dim("matrix dimensions must be positive"));
        }
        let entries = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::dim("matrix entry count overflows"))?;
        if entries > MAX_DENSE_ENTRIES {
            return Err(Error::dim(format!(
                "{rows}x{cols} exceeds the dense entry cap {MAX_DENSE_ENTRIES}"
            )));
        }
        Ok(entries)
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        let entries = Self::check_shape(rows, cols)?;
        Ok(Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); entries],
        })
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Builds a matrix from nested row vectors.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::check_shape(r, c)?;
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::dim("ragged rows"));
            }
            data.extend_from_slice(row);
        }
        ensure_finite(&data)?;
        Ok(Self { rows: r, cols: c, data })
    }

    /// Builds a matrix entry by entry from a closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        Self::check_shape(rows, cols)?;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ensure_finite(&data)?;
        Ok(Self { rows, cols, data })
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

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.cols + c] = v;
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols)?;
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let src = k * other.cols;
                let dst = r * other.cols;
                for c in 0..other.cols {
                    out.data[dst + c] += a * other.data[src + c];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::dim(format!(
                "matvec: {}x{} against vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let base = r * self.cols;
            *slot = self.data[base..base + self.cols]
                .iter()
                .zip(v)
                .map(|(m, x)| m * x)
                .sum();
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self {
            rows: self.cols,
            cols: self.rows,
            data: vec![C64::new(0.0, 0.0); self.data.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        out
    }

    /// Entrywise scaling.
    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= s;
        }
        out
    }

    pub fn trace(&self) -> Result<C64> {
        self.require_square()?;
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference against another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim("shape mismatch in max_abs_diff"));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// True when `self` equals its conjugate transpose within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        self.require_square()?;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                if d > tol {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True when `self† self = I` within `tol` (largest entry deviation).
    ///
    /// Errors on non-square input.
    pub fn check_unitary(&self, tol: f64) -> Result<bool> {
        self.require_square()?;
        let gram = self.adjoint().mul(self)?;
        let eye = Self::identity(self.rows)?;
        Ok(gram.max_abs_diff(&eye)? <= tol)
    }

    /// True when `self` is Hermitian, has unit trace, and is positive
    /// semidefinite, each within `tol`.
    ///
    /// Errors on non-square input.
    pub fn check_density_matrix(&self, tol: f64) -> Result<bool> {
        self.require_square()?;
        if !self.is_hermitian(tol)? {
            return Ok(false);
        }
        let tr = self.trace()?;
        if (tr - C64::new(1.0, 0.0)).norm() > tol {
            return Ok(false);
        }
        let eigs = self.hermitian_eigenvalues()?;
        Ok(eigs.first().is_some_and(|&min| min >= -tol))
    }

    /// Real eigenvalues of a (near-)Hermitian matrix, ascending.
    ///
    /// The matrix is symmetrized as `(M + M†)/2` before decomposition, so
    /// callers should gate on [`ComplexMatrix::is_hermitian`] when exact
    /// Hermiticity matters.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        self.require_square()?;
        let n = self.rows;
        let sym = nalgebra::DMatrix::from_fn(n, n, |r, c| {
            (self.get(r, c) + self.get(c, r).conj()) * 0.5
        });
        let eig = nalgebra::linalg::SymmetricEigen::new(sym);
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.total_cmp(b));
        Ok(vals)
    }
}

/// Kronecker product: `out[(ra*rb + rb_row), (ca*cb + cb_col)] = a[ra,ca] * b[rb,cb]`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a
        .rows
        .checked_mul(b.rows)
        .ok_or_else(|| Error::dim("tensor product rows overflow"))?;
    let cols = a
        .cols
        .checked_mul(b.cols)
        .ok_or_else(|| Error::dim("tensor product cols overflow"))?;
    let mut out = ComplexMatrix::zeros(rows, cols)?;
    for ra in 0..a.rows {
        for ca in 0..a.cols {
            let f = a.get(ra, ca);
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for rb in 0..b.rows {
                let dst = (ra * b.rows + rb) * cols + ca * b.cols;
                let src = rb * b.cols;
                for cb in 0..b.cols {
                    out.data[dst + cb] = f * b.data[src + cb];
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of two amplitude vectors.
pub fn tensor_product_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Sum of `|rho[x,y]|` over an explicit list of index pairs.
///
/// Pairs are taken as given: callers that want both orientations of an
/// unordered pair must list both (see [`full_offdiag_pairs`]).
pub fn restricted_offdiag_sum(rho: &ComplexMatrix, pairs: &[(usize, usize)]) -> Result<f64> {
    rho.require_square()?;
    let n = rho.rows();
    let mut sum = 0.0;
    for &(x, y) in pairs {
        if x >= n || y >= n {
            return Err(Error::arg(format!(
                "pair ({x}, {y}) out of range for {n}x{n} matrix"
            )));
        }
        sum += rho.get(x, y).norm();
    }
    Ok(sum)
}

/// All ordered pairs `(x, y)` with `x != y`, both orientations.
pub fn full_offdiag_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n.saturating_mul(n.saturating_sub(1)));
    for x in 0..n {
        for y in 0..n {
            if x != y {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

/// Normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Basis state `|index>` in the given dimension.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::dim("state dimension must be positive"));
        }
        if index >= dim {
            return Err(Error::dim(format!("basis index {index} out of range {dim}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    /// Wraps an amplitude vector; entries must be finite.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::dim("state dimension must be positive"));
        }
        ensure_finite(&amps)?;
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::dim("inner product dimension mismatch"));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Squared overlap `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Literal `sum |u_i - v_i|^2`.
    pub fn distance_sq(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::dim("distance dimension mismatch"));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum())
    }
}

/// Joint state of an algorithm register and an input register, stored as one
/// algorithm-space column per input. Column `x` is the (unnormalized)
/// algorithm state entangled with input label `x`; the squared norms of the
/// columns sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    dim_a: usize,
    columns: Vec<Vec<C64>>,
}

impl BipartiteState {
    /// Validates column dimensions, finiteness, the amplitude cap, and total
    /// normalization.
    pub fn new(dim_a: usize, columns: Vec<Vec<C64>>) -> Result<Self> {
        let state = Self::new_unnormalized(dim_a, columns)?;
        let total = state.total_norm_sq();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::dim(format!(
                "bipartite state has total squared norm {total}, expected 1"
            )));
        }
        Ok(state)
    }

    pub(crate) fn new_unnormalized(dim_a: usize, columns: Vec<Vec<C64>>) -> Result<Self> {
        if dim_a == 0 || columns.is_empty() {
            return Err(Error::dim("bipartite state needs positive dimensions"));
        }
        let total = dim_a
            .checked_mul(columns.len())
            .ok_or_else(|| Error::dim("bipartite amplitude count overflows"))?;
        if total > MAX_BIPARTITE_AMPLITUDES {
            return Err(Error::dim(format!(
                "bipartite state of {total} amplitudes exceeds cap {MAX_BIPARTITE_AMPLITUDES}"
            )));
        }
        for col in &columns {
            if col.len() != dim_a {
                return Err(Error::dim("bipartite column length mismatch"));
            }
            ensure_finite(col)?;
        }
        Ok(Self { dim_a, columns })
    }

    /// Product state: algorithm state `psi` against input amplitudes `alpha`,
    /// column `x` equal to `alpha[x] * psi`.
    pub fn product(psi: &StateVector, alpha: &[C64]) -> Result<Self> {
        let columns = alpha
            .iter()
            .map(|&a| psi.amplitudes().iter().map(|&z| a * z).collect())
            .collect();
        Self::new(psi.dim(), columns)
    }

    pub fn dim_algorithm(&self) -> usize {
        self.dim_a
    }

    pub fn num_inputs(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<C64>] {
        &self.columns
    }

    pub fn column(&self, x: usize) -> &[C64] {
        &self.columns[x]
    }

    pub fn total_norm_sq(&self) -> f64 {
        self.columns
            .iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum()
    }

    /// Partial trace over the algorithm register: the Gram matrix
    /// `rho[x,y] = <column_x | column_y>`. The result is Hermitian by
    /// construction (upper triangle computed, lower mirrored).
    pub fn trace_out_algorithm(&self) -> ComplexMatrix {
        let m = self.columns.len();
        let mut rho = ComplexMatrix::zeros(m, m).expect("input count already capped");
        for x in 0..m {
            for y in x..m {
                let v: C64 = self.columns[x]
                    .iter()
                    .zip(&self.columns[y])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                rho.set(x, y, v);
                rho.set(y, x, v.conj());
            }
        }
        rho
    }

    /// Applies a dense matrix to the algorithm register of every column.
    pub fn apply_matrix_to_algorithm(&self, m: &ComplexMatrix) -> Result<Self> {
        if m.rows() != self.dim_a || m.cols() != self.dim_a {
            return Err(Error::dim("matrix does not match algorithm dimension"));
        }
        let columns = self
            .columns
            .iter()
            .map(|c| m.matvec(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new_unnormalized(self.dim_a, columns)
    }
}
