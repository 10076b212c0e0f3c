//! Dense complex matrices and the small eigenkernel the rest of the crate
//! stands on.
//!
//! Everything here targets "desk scale" problems (dimensions in the tens to
//! low hundreds), so the implementations favor accuracy and predictability
//! over asymptotic speed: matrix products are straightforward triple loops
//! and the Hermitian eigensolver is a cyclic Jacobi iteration, which is
//! slower than Householder tridiagonalization but converges to essentially
//! full working precision and is easy to audit.
//!
//! Conventions used throughout the crate:
//!
//! * matrices are row-major, entries are [`num_complex::Complex64`];
//! * the inner product [`inner_product`] is linear in its **first** argument
//!   and conjugate-linear in the second;
//! * eigenvalues and singular values are returned in descending order.
//!
//! # Example
//!
//! ```
//! use framekit_core::linalg::ComplexMatrix;
//! use num_complex::Complex64;
//!
//! let a = ComplexMatrix::new(2, 2, vec![
//!     Complex64::new(2.0, 0.0), Complex64::new(1.0, 1.0),
//!     Complex64::new(1.0, -1.0), Complex64::new(3.0, 0.0),
//! ]).unwrap();
//! let eig = a.hermitian_eig().unwrap();
//! assert!((eig.eigenvalues[0] - 4.0).abs() < 1e-12);
//! assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-12);
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum number of full Jacobi sweeps before the eigensolver gives up.
const MAX_JACOBI_SWEEPS: usize = 100;

/// The eigensolver stops once the off-diagonal Frobenius norm drops below
/// this factor times the Frobenius norm of the input.
const JACOBI_OFF_DIAG_FACTOR: f64 = 1e-14;

/// Relative entrywise deviation from `A = A*` tolerated by Hermitian
/// operations before they refuse the input.
const HERMITIAN_CHECK_FACTOR: f64 = 1e-8;

/// A matrix is treated as rank deficient when its smallest singular value is
/// below this factor times its largest.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// Inner product `<x, y> = sum_i x_i * conj(y_i)`, linear in the first
/// argument.
///
/// # Panics
///
/// Panics if the slices have different lengths; mismatched operands are a
/// programming error, not a data error.
pub fn inner_product(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len(), "inner product of vectors with different lengths");
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// Euclidean norm of a complex vector.
pub fn vector_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Matrix from row-major data; every entry must be finite.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "{rows}x{cols} matrix needs {} entries, got {}",
                    rows * cols,
                    data.len()
                ),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                context: format!("matrix entry at row {}, column {}", pos / cols.max(1), pos % cols.max(1)),
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix with entry `(i, j)` given by `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix::new(rows, cols, data)
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row `i` as a contiguous slice.
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j`, copied out of the row-major storage.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "cannot multiply {}x{} by {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                context: format!("cannot apply {}x{} to a vector of length {}", self.rows, self.cols, v.len()),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }

    /// Entrywise sum.
    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "cannot combine {}x{} with {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Matrix scaled by a complex factor.
    pub fn scaled(&self, factor: Complex64) -> ComplexMatrix {
        let data = self.data.iter().map(|&z| z * factor).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation between the matrix and its adjoint
    /// (zero for square Hermitian matrices, meaningless otherwise).
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols.min(self.rows) {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// `true` when square and entrywise Hermitian within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols && self.hermitian_deviation() <= tol
    }

    /// `true` when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in descending order together with a unitary matrix
    /// whose columns are the matching eigenvectors, so
    /// `A = W diag(eigenvalues) W*`.  The input must be square and Hermitian
    /// to a relative entrywise tolerance of `1e-8`; it is symmetrized before
    /// iterating so the tolerated asymmetry cannot leak into the result.
    ///
    /// Iteration stops when the off-diagonal Frobenius norm falls below
    /// `1e-14 * ||A||_F`, and fails with [`Error::EigDidNotConverge`] if that
    /// has not happened after 100 sweeps (in practice well under 15 sweeps
    /// suffice at these sizes).
    pub fn hermitian_eig(&self) -> Result<HermitianEigen> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let fro = self.frobenius_norm();
        let allowed = HERMITIAN_CHECK_FACTOR * fro.max(1.0);
        let deviation = self.hermitian_deviation();
        if deviation > allowed {
            return Err(Error::NotHermitian { deviation, allowed });
        }

        // Work on the symmetrized copy (A + A*)/2: exactly Hermitian, equal
        // to A up to the tolerated deviation.
        let mut a = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = 0.5 * (self[(i, j)] + self[(j, i)].conj());
            }
            a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        }
        let mut w = ComplexMatrix::identity(n);

        if n <= 1 || fro == 0.0 {
            let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok(HermitianEigen { eigenvalues, vectors: w });
        }

        let stop = JACOBI_OFF_DIAG_FACTOR * fro;
        // Entries already below this cannot matter for convergence: even if
        // every pair sat at the threshold, the off-diagonal norm would be
        // below `stop`.
        let skip = stop / (n * n) as f64;
        let mut converged = false;
        let mut off = off_diagonal_norm(&a);
        for _sweep in 0..MAX_JACOBI_SWEEPS {
            if off <= stop {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    let g = apq.norm();
                    if g <= skip {
                        continue;
                    }
                    // Unitary plane rotation J (identity except in rows and
                    // columns p, q):
                    //
                    //   J[p][p] = c          J[p][q] = s * u
                    //   J[q][p] = -s * u*    J[q][q] = c
                    //
                    // with u = a_pq / |a_pq|.  Taking the phase from the
                    // entry itself (rather than via arg/exp) keeps u exactly
                    // +-1 for real input, so real matrices stay exactly real
                    // through the whole iteration.  c and s come from the
                    // classical stable real-Jacobi formulas applied to
                    // |a_pq|, and J* A J annihilates the (p, q) entry.
                    let u = apq / g;
                    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let su = s * u;
                    let su_conj = s * u.conj();

                    // Column update: B = A J touches columns p and q.
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * c - akq * su_conj;
                        a[(k, q)] = akp * su + akq * c;
                    }
                    // Row update: A' = J* B touches rows p and q.
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = apk * c - aqk * su;
                        a[(q, k)] = apk * su_conj + aqk * c;
                    }
                    // The rotation zeroes (p, q) analytically; enforce it
                    // (and the real diagonal) so round-off cannot accumulate.
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                    // Accumulate the eigenvector matrix: W = W J.
                    for k in 0..n {
                        let wkp = w[(k, p)];
                        let wkq = w[(k, q)];
                        w[(k, p)] = wkp * c - wkq * su_conj;
                        w[(k, q)] = wkp * su + wkq * c;
                    }
                }
            }
            off = off_diagonal_norm(&a);
        }
        if !converged && off > stop {
            return Err(Error::EigDidNotConverge { sweeps: MAX_JACOBI_SWEEPS, off_norm: off });
        }

        // Sort eigenpairs by descending eigenvalue; the stable sort makes
        // tie order (and therefore the eigenvector matrix) deterministic.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).expect("finite eigenvalues"));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
        let mut vectors = ComplexMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                vectors[(r, new_col)] = w[(r, old_col)];
            }
        }
        Ok(HermitianEigen { eigenvalues, vectors })
    }

    /// Singular values in descending order, computed as the square roots of
    /// the eigenvalues of `A* A` (clamped at zero against round-off).
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let gram = self.adjoint().mul(self)?;
        let eig = gram.hermitian_eig()?;
        Ok(eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect())
    }

    /// Largest singular value (the operator 2-norm); zero for empty matrices.
    pub fn spectral_norm(&self) -> Result<f64> {
        Ok(self.singular_values()?.first().copied().unwrap_or(0.0))
    }

    /// Ratio of largest to smallest singular value.
    ///
    /// Fails with [`Error::RankDeficient`] when the smallest singular value
    /// is below [`RANK_TOLERANCE`] times the largest, i.e. when the matrix
    /// has no trustworthy condition number.
    pub fn condition_number(&self) -> Result<f64> {
        let sv = self.singular_values()?;
        let (Some(&largest), Some(&smallest)) = (sv.first(), sv.last()) else {
            return Err(Error::DimensionMismatch { context: "condition number of an empty matrix".into() });
        };
        if smallest <= RANK_TOLERANCE * largest {
            return Err(Error::RankDeficient { sigma_min: smallest, sigma_max: largest });
        }
        Ok(largest / smallest)
    }

    /// Inverse square root `A^(-1/2)` of a Hermitian positive definite
    /// matrix, via the spectral decomposition.
    ///
    /// Fails with [`Error::NotPositiveDefinite`] when any eigenvalue is below
    /// [`RANK_TOLERANCE`] times the largest (or the matrix is zero).
    pub fn inv_sqrt(&self) -> Result<ComplexMatrix> {
        let eig = self.hermitian_eig()?;
        let largest = eig.eigenvalues.first().copied().unwrap_or(0.0);
        let smallest = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if largest <= 0.0 || smallest <= RANK_TOLERANCE * largest {
            return Err(Error::NotPositiveDefinite { eigenvalue: smallest });
        }
        Ok(eig.map_eigenvalues(|l| 1.0 / l.sqrt()))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds for {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds for {}x{}", self.rows, self.cols);
        &mut self.data[i * self.cols + j]
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Result of [`ComplexMatrix::hermitian_eig`]: `A = W diag(eigenvalues) W*`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Real eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose `k`-th column is the eigenvector for
    /// `eigenvalues[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `W f(diag) W*` — applies a scalar function to the spectrum.
    ///
    /// This is how the crate builds matrix functions such as inverses and
    /// inverse square roots; guarding against unsafe eigenvalues (zeros,
    /// negatives) is the caller's job.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.vectors[(i, k)] * mapped[k] * self.vectors[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `W diag W*`, which must reproduce the decomposed matrix.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(|l| l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Random Hermitian matrix with entries of modulus O(1).
    fn random_hermitian(n: usize, rng: &mut SplitMix64) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = c(2.0 * rng.next_f64() - 1.0, 0.0);
            for j in i + 1..n {
                let z = c(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0);
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
            }
        }
        a
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = ComplexMatrix::new(1, 2, vec![c(1.0, 0.0), c(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn rejects_wrong_entry_count() {
        let err = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn inner_product_is_linear_in_first_argument() {
        let x = vec![c(1.0, 2.0), c(0.0, -1.0)];
        let y = vec![c(3.0, -1.0), c(2.0, 2.0)];
        // <x, y> = (1+2i)(3+i) + (-i)(2-2i) = (1 + 7i) + (-2 - 2i)
        let got = inner_product(&x, &y);
        assert_relative_eq!(got.re, -1.0, max_relative = 1e-15);
        assert_relative_eq!(got.im, 5.0, max_relative = 1e-15);
        // Conjugate symmetry.
        let flipped = inner_product(&y, &x);
        assert_relative_eq!(flipped.re, got.re, max_relative = 1e-15);
        assert_relative_eq!(flipped.im, -got.im, max_relative = 1e-15);
    }

    #[test]
    fn adjoint_transposes_and_conjugates() {
        let a = ComplexMatrix::new(1, 2, vec![c(1.0, 2.0), c(3.0, -4.0)]).unwrap();
        let at = a.adjoint();
        assert_eq!(at.rows(), 2);
        assert_eq!(at.cols(), 1);
        assert_eq!(at[(0, 0)], c(1.0, -2.0));
        assert_eq!(at[(1, 0)], c(3.0, 4.0));
    }

    #[test]
    fn eig_of_known_2x2_hermitian() {
        // [[2, 1+i], [1-i, 3]] has characteristic polynomial l^2 - 5l + 4,
        // so eigenvalues 4 and 1.
        let a = ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(1.0, 1.0), c(1.0, -1.0), c(3.0, 0.0)]).unwrap();
        let eig = a.hermitian_eig().unwrap();
        assert_relative_eq!(eig.eigenvalues[0], 4.0, max_relative = 1e-13);
        assert_relative_eq!(eig.eigenvalues[1], 1.0, max_relative = 1e-13);
        let resid = eig.reconstruct().sub(&a).unwrap().frobenius_norm();
        assert!(resid <= 1e-13 * a.frobenius_norm());
    }

    #[test]
    fn eig_of_simplex_gram() {
        // [[1, -1/2, -1/2], [-1/2, 1, -1/2], [-1/2, -1/2, 1]] has spectrum
        // {3/2, 3/2, 0}.
        let h = -0.5;
        let a = ComplexMatrix::new(
            3,
            3,
            vec![
                c(1.0, 0.0), c(h, 0.0), c(h, 0.0),
                c(h, 0.0), c(1.0, 0.0), c(h, 0.0),
                c(h, 0.0), c(h, 0.0), c(1.0, 0.0),
            ],
        )
        .unwrap();
        let eig = a.hermitian_eig().unwrap();
        assert_relative_eq!(eig.eigenvalues[0], 1.5, max_relative = 1e-13);
        assert_relative_eq!(eig.eigenvalues[1], 1.5, max_relative = 1e-13);
        assert!(eig.eigenvalues[2].abs() < 1e-13);
    }

    #[test]
    fn eig_of_diagonal_is_immediate() {
        let a = ComplexMatrix::new(3, 3, vec![
            c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
            c(0.0, 0.0), c(5.0, 0.0), c(0.0, 0.0),
            c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0),
        ]).unwrap();
        let eig = a.hermitian_eig().unwrap();
        assert_eq!(eig.eigenvalues, vec![5.0, 2.0, -1.0]);
    }

    #[test]
    fn eig_keeps_real_input_exactly_real() {
        // The rotation phase is taken directly from the matrix entries, so a
        // real symmetric input must never grow imaginary parts.
        let mut rng = SplitMix64::new(5);
        let mut a = ComplexMatrix::zeros(6, 6);
        for i in 0..6 {
            a[(i, i)] = c(2.0 * rng.next_f64() - 1.0, 0.0);
            for j in i + 1..6 {
                let v = c(2.0 * rng.next_f64() - 1.0, 0.0);
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
        }
        let eig = a.hermitian_eig().unwrap();
        assert!(eig.vectors.is_real());
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(a.hermitian_eig().unwrap_err(), Error::NotHermitian { .. }));
    }

    #[test]
    fn eig_rejects_rectangular() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.hermitian_eig().unwrap_err(), Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn eig_of_zero_and_1x1() {
        let z = ComplexMatrix::zeros(4, 4);
        let eig = z.hermitian_eig().unwrap();
        assert_eq!(eig.eigenvalues, vec![0.0; 4]);

        let one = ComplexMatrix::new(1, 1, vec![c(-7.5, 0.0)]).unwrap();
        assert_eq!(one.hermitian_eig().unwrap().eigenvalues, vec![-7.5]);
    }

    #[test]
    fn randomized_eig_reconstructs_and_is_orthonormal() {
        // Spread of sizes up to 64; residual and orthonormality at working
        // precision for every draw.
        let mut size_rng = SplitMix64::new(99);
        for trial in 0..1000u64 {
            let n = 1 + (size_rng.next_u64() % 64) as usize;
            let mut entry_rng = SplitMix64::stream(1000, trial);
            let a = random_hermitian(n, &mut entry_rng);
            let eig = a.hermitian_eig().unwrap();

            let resid = eig.reconstruct().sub(&a).unwrap().frobenius_norm();
            assert!(
                resid <= 1e-10 * a.frobenius_norm().max(1.0),
                "trial {trial}: reconstruction residual {resid:.3e} at n = {n}"
            );

            let wtw = eig.vectors.adjoint().mul(&eig.vectors).unwrap();
            let ortho = wtw.sub(&ComplexMatrix::identity(n)).unwrap().max_abs_entry();
            assert!(ortho <= 1e-12, "trial {trial}: orthonormality defect {ortho:.3e} at n = {n}");

            for pair in eig.eigenvalues.windows(2) {
                assert!(pair[0] >= pair[1], "trial {trial}: eigenvalues out of order");
            }
        }
    }

    #[test]
    fn singular_values_of_tall_diagonal() {
        let a = ComplexMatrix::new(3, 2, vec![
            c(3.0, 0.0), c(0.0, 0.0),
            c(0.0, 0.0), c(4.0, 0.0),
            c(0.0, 0.0), c(0.0, 0.0),
        ]).unwrap();
        let sv = a.singular_values().unwrap();
        assert_relative_eq!(sv[0], 4.0, max_relative = 1e-12);
        assert_relative_eq!(sv[1], 3.0, max_relative = 1e-12);
    }

    #[test]
    fn singular_values_are_unitarily_invariant() {
        // Singular values of A and of U A agree for unitary U; here U is a
        // phase rotation.
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.5), c(3.0, 0.0)]).unwrap();
        let phase = Complex64::from_polar(1.0, 0.7);
        let rotated = a.scaled(phase);
        let sv = a.singular_values().unwrap();
        let sv_rot = rotated.singular_values().unwrap();
        for (x, y) in sv.iter().zip(&sv_rot) {
            assert_relative_eq!(x, y, max_relative = 1e-12);
        }
    }

    #[test]
    fn condition_number_of_well_conditioned_matrix() {
        let a = ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert_relative_eq!(a.condition_number().unwrap(), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn condition_number_rejects_rank_deficiency() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!(matches!(a.condition_number().unwrap_err(), Error::RankDeficient { .. }));
    }

    #[test]
    fn inv_sqrt_of_diagonal() {
        let a = ComplexMatrix::new(2, 2, vec![c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(9.0, 0.0)]).unwrap();
        let b = a.inv_sqrt().unwrap();
        assert_relative_eq!(b[(0, 0)].re, 0.5, max_relative = 1e-12);
        assert_relative_eq!(b[(1, 1)].re, 1.0 / 3.0, max_relative = 1e-12);
        assert!(b[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn inv_sqrt_squares_to_inverse() {
        let mut rng = SplitMix64::new(31);
        // S = B B* + I is comfortably positive definite.
        let b = ComplexMatrix::from_fn(4, 4, |_, _| c(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0)).unwrap();
        let s = b.mul(&b.adjoint()).unwrap().add(&ComplexMatrix::identity(4)).unwrap();
        let r = s.inv_sqrt().unwrap();
        // R S R should be the identity.
        let should_be_identity = r.mul(&s).unwrap().mul(&r).unwrap();
        let defect = should_be_identity.sub(&ComplexMatrix::identity(4)).unwrap().max_abs_entry();
        assert!(defect < 1e-12, "defect {defect:.3e}");
    }

    #[test]
    fn inv_sqrt_rejects_indefinite() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(matches!(a.inv_sqrt().unwrap_err(), Error::NotPositiveDefinite { .. }));
    }
}
