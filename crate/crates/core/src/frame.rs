//! Finite unit-norm frames and their first-order diagnostics.
//!
//! A frame here is a collection of `count` unit vectors spanning an
//! `dim`-dimensional real or complex space, stored as the columns of an
//! `dim x count` matrix.  The module provides the standard operators built
//! from a frame — Gram matrix, analysis/synthesis maps, frame operator — and
//! the quality measures used everywhere else in the crate: frame bounds,
//! tightness, equiangularity, maximal cross-correlation, and the Welch lower
//! bound on that correlation.
//!
//! Real frames are a first-class citizen: a [`Frame`] tagged [`Field::Real`]
//! is guaranteed to have exactly zero imaginary parts, and every operation
//! in the crate preserves that property, while all arithmetic runs through
//! the same complex code path.
//!
//! # Example
//!
//! ```
//! use framekit_core::frame::{welch_bound, Field, Frame};
//! use num_complex::Complex64;
//!
//! // The standard basis of R^2 is a tight frame with bounds A = B = 1.
//! let e0 = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
//! let e1 = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
//! let onb = Frame::new(2, Field::Real, vec![e0, e1]).unwrap();
//! let metrics = onb.metrics().unwrap();
//! assert!(metrics.tight);
//! assert_eq!(metrics.max_correlation, 0.0);
//! assert_eq!(welch_bound(2, 2).unwrap(), 0.0);
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{inner_product, vector_norm, ComplexMatrix, RANK_TOLERANCE};

/// Default tolerance for the predicate-style diagnostics (tightness,
/// equiangularity, Welch attainment): relative, with an absolute floor of
/// the same magnitude for quantities near zero.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Allowed deviation of a frame column's norm from 1.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-10;

/// Scalar field a frame lives over.
///
/// The tag is metadata: storage and arithmetic are complex either way, but a
/// [`Field::Real`] frame has exactly zero imaginary parts and constructions
/// and optimizers keep it that way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    /// Real scalars; imaginary parts are exactly zero.
    Real,
    /// Complex scalars.
    Complex,
}

impl Field {
    /// Single-letter tag used by the frame file format.
    pub fn tag(self) -> char {
        match self {
            Field::Real => 'R',
            Field::Complex => 'C',
        }
    }

    /// Parse the single-letter tag.
    pub fn from_tag(tag: &str) -> Option<Field> {
        match tag {
            "R" => Some(Field::Real),
            "C" => Some(Field::Complex),
            _ => None,
        }
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// A spanning collection of unit vectors in `C^dim` (or `R^dim`), stored
/// column-major.
#[derive(Clone, Debug)]
pub struct Frame {
    dim: usize,
    count: usize,
    field: Field,
    /// Column-major storage: column `k` is `data[k*dim..(k+1)*dim]`.
    data: Vec<Complex64>,
}

impl Frame {
    /// Frame from its column vectors.
    ///
    /// Validates that there are at least `dim` columns of length `dim`, that
    /// every entry is finite, that each column has unit norm within
    /// [`UNIT_NORM_TOLERANCE`], that a [`Field::Real`] frame has exactly zero
    /// imaginary parts, and that the columns span the space.
    pub fn new(dim: usize, field: Field, columns: Vec<Vec<Complex64>>) -> Result<Frame> {
        Self::build(dim, field, columns, true)
    }

    /// Same as [`Frame::new`] but without the unit-norm check.
    ///
    /// Canonical tightening must not renormalize its output (that would
    /// destroy tightness), so it needs a way to carry slightly — or, for
    /// frames far from any group structure, substantially — non-uniform
    /// columns.  All other validation still applies.
    pub(crate) fn new_unnormalized(dim: usize, field: Field, columns: Vec<Vec<Complex64>>) -> Result<Frame> {
        Self::build(dim, field, columns, false)
    }

    fn build(dim: usize, field: Field, columns: Vec<Vec<Complex64>>, check_unit: bool) -> Result<Frame> {
        if dim == 0 {
            return Err(Error::BadArguments { context: "frame dimension must be at least 1".into() });
        }
        let count = columns.len();
        if count < dim {
            return Err(Error::TooFewVectors { dim, count });
        }
        let mut data = Vec::with_capacity(dim * count);
        for (k, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: format!("column {k} has length {}, expected {dim}", col.len()),
                });
            }
            if col.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite { context: format!("frame column {k}") });
            }
            if field == Field::Real && col.iter().any(|z| z.im != 0.0) {
                return Err(Error::RealFieldViolation { index: k });
            }
            if check_unit {
                let norm = vector_norm(col);
                if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
                    return Err(Error::NonUnitColumn { index: k, norm, allowed: UNIT_NORM_TOLERANCE });
                }
            }
            data.extend_from_slice(col);
        }
        let frame = Frame { dim, count, field, data };
        let eig = frame.frame_operator().hermitian_eig()?;
        let largest = eig.eigenvalues.first().copied().unwrap_or(0.0);
        let smallest = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if smallest <= RANK_TOLERANCE * largest.max(1.0) {
            return Err(Error::DoesNotSpan { count, dim, eigenvalue: smallest });
        }
        Ok(frame)
    }

    /// Frame from an `dim x count` matrix whose columns are the vectors.
    pub fn from_matrix(field: Field, matrix: &ComplexMatrix) -> Result<Frame> {
        let columns = (0..matrix.cols()).map(|j| matrix.column(j)).collect();
        Frame::new(matrix.rows(), field, columns)
    }

    /// Ambient dimension `m`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of frame vectors `N`.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Scalar field tag.
    pub fn field(&self) -> Field {
        self.field
    }

    /// The `k`-th frame vector.
    pub fn column(&self, k: usize) -> &[Complex64] {
        &self.data[k * self.dim..(k + 1) * self.dim]
    }

    /// Iterator over the frame vectors in order.
    pub fn columns(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks_exact(self.dim)
    }

    /// The frame as an `dim x count` matrix (synthesis operator).
    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, self.count, |i, k| self.column(k)[i])
            .expect("frame data is finite by construction")
    }

    /// Gram matrix `G[k][l] = <f_k, f_l>` (`count x count`, Hermitian, unit
    /// diagonal for unit-norm frames).
    pub fn gram(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.count, self.count, |k, l| inner_product(self.column(k), self.column(l)))
            .expect("inner products of finite vectors are finite")
    }

    /// Frame operator `S = sum_k f_k f_k*` (`dim x dim`, Hermitian positive
    /// definite for spanning frames).
    pub fn frame_operator(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.dim, self.dim);
        for col in self.columns() {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    s[(i, j)] += col[i] * col[j].conj();
                }
            }
        }
        s
    }

    /// Analysis map: the coefficient sequence `(<v, f_k>)_k`.
    pub fn analysis(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: format!("analysis input has length {}, expected {}", v.len(), self.dim),
            });
        }
        Ok(self.columns().map(|col| inner_product(v, col)).collect())
    }

    /// Synthesis map: the superposition `sum_k c_k f_k`.
    ///
    /// Synthesis is the adjoint of [`Frame::analysis`]:
    /// `<analysis(v), c> = <v, synthesis(c)>` for all `v`, `c`.
    pub fn synthesis(&self, coefficients: &[Complex64]) -> Result<Vec<Complex64>> {
        if coefficients.len() != self.count {
            return Err(Error::DimensionMismatch {
                context: format!("synthesis input has length {}, expected {}", coefficients.len(), self.count),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (c, col) in coefficients.iter().zip(self.columns()) {
            for (o, &x) in out.iter_mut().zip(col) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// The analysis operator as a `count x dim` matrix (row `k` is the
    /// conjugate of `f_k`), so `analysis(v) = T v` and the frame operator is
    /// `T* T`.
    pub fn analysis_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.count, self.dim, |k, i| self.column(k)[i].conj())
            .expect("frame data is finite by construction")
    }

    /// Largest cross-correlation `max_{k != l} |<f_k, f_l>|`.
    pub fn max_correlation(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..self.count {
            for l in k + 1..self.count {
                worst = worst.max(inner_product(self.column(k), self.column(l)).norm());
            }
        }
        worst
    }

    /// Optimal frame bounds `(A, B)`: the extreme eigenvalues of the frame
    /// operator.
    pub fn frame_bounds(&self) -> Result<(f64, f64)> {
        let eig = self.frame_operator().hermitian_eig()?;
        let upper = eig.eigenvalues.first().copied().unwrap_or(0.0);
        let lower = eig.eigenvalues.last().copied().unwrap_or(0.0);
        Ok((lower, upper))
    }

    /// Frobenius distance of the frame operator from `(count/dim) I`,
    /// relative to `count/dim`.  Zero exactly for tight unit-norm frames.
    pub fn tightness_residual(&self) -> f64 {
        let rho = self.count as f64 / self.dim as f64;
        let mut sum = 0.0;
        let s = self.frame_operator();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expected = if i == j { rho } else { 0.0 };
                sum += (s[(i, j)] - Complex64::new(expected, 0.0)).norm_sqr();
            }
        }
        sum.sqrt() / rho
    }

    /// Redundancy via the frame-operator trace formula
    /// `count / sum_k <f_k, S^{-1} f_k>`, which equals `count/dim` for
    /// unit-norm frames.
    pub fn redundancy(&self) -> Result<f64> {
        let eig = self.frame_operator().hermitian_eig()?;
        let largest = eig.eigenvalues.first().copied().unwrap_or(0.0);
        let smallest = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if smallest <= RANK_TOLERANCE * largest.max(1.0) {
            return Err(Error::DoesNotSpan { count: self.count, dim: self.dim, eigenvalue: smallest });
        }
        let s_inv = eig.map_eigenvalues(|l| 1.0 / l);
        let mut total = 0.0;
        for col in self.columns() {
            let image = s_inv.mul_vec(col)?;
            total += inner_product(col, &image).re;
        }
        Ok(self.count as f64 / total)
    }

    /// Full diagnostic report at the default tolerance.
    pub fn metrics(&self) -> Result<FrameMetrics> {
        self.metrics_with_tolerance(DEFAULT_TOLERANCE)
    }

    /// Full diagnostic report.
    ///
    /// `tol` is interpreted relative to the magnitude of the quantity under
    /// test, with a floor of 1 so that comparisons against zero stay
    /// meaningful.
    pub fn metrics_with_tolerance(&self, tol: f64) -> Result<FrameMetrics> {
        let (lower, upper) = self.frame_bounds()?;
        let tight = (upper - lower) <= tol * upper;

        let mut moduli = Vec::with_capacity(self.count * (self.count - 1) / 2);
        for k in 0..self.count {
            for l in k + 1..self.count {
                moduli.push(inner_product(self.column(k), self.column(l)).norm());
            }
        }
        let max_correlation = moduli.iter().copied().fold(0.0, f64::max);
        let (equiangular, correlation_level) = if moduli.is_empty() {
            (true, 0.0)
        } else {
            let mean = moduli.iter().sum::<f64>() / moduli.len() as f64;
            let spread_ok = moduli.iter().all(|&x| (x - mean).abs() <= tol * mean.max(1.0));
            (spread_ok, mean)
        };

        let welch = welch_bound(self.dim, self.count)?;
        Ok(FrameMetrics {
            dim: self.dim,
            count: self.count,
            field: self.field,
            lower_bound: lower,
            upper_bound: upper,
            tight,
            equiangular,
            correlation_level,
            max_correlation,
            welch_bound: welch,
            welch_gap: max_correlation - welch,
            achieves_welch: max_correlation - welch <= tol * welch.max(1.0),
            redundancy: self.count as f64 / self.dim as f64,
        })
    }
}

/// Diagnostic summary of a frame; see [`Frame::metrics`].
#[derive(Clone, Debug)]
pub struct FrameMetrics {
    /// Ambient dimension `m`.
    pub dim: usize,
    /// Number of vectors `N`.
    pub count: usize,
    /// Scalar field tag.
    pub field: Field,
    /// Optimal lower frame bound `A`.
    pub lower_bound: f64,
    /// Optimal upper frame bound `B`.
    pub upper_bound: f64,
    /// Whether `A = B` within tolerance.
    pub tight: bool,
    /// Whether all cross-correlation moduli agree within tolerance.
    pub equiangular: bool,
    /// Mean cross-correlation modulus (the common value when equiangular).
    pub correlation_level: f64,
    /// Largest cross-correlation modulus.
    pub max_correlation: f64,
    /// Welch lower bound for these `(dim, count)`.
    pub welch_bound: f64,
    /// `max_correlation - welch_bound` (always `>= -eps`).
    pub welch_gap: f64,
    /// Whether the Welch bound is attained within tolerance.
    pub achieves_welch: bool,
    /// `count / dim`.
    pub redundancy: f64,
}

/// Welch lower bound `sqrt((count - dim) / (dim (count - 1)))` on the
/// largest cross-correlation of `count` unit vectors in dimension `dim`.
///
/// Zero when `count == dim` (an orthonormal basis attains it).  Fails when
/// `dim == 0` or `count < dim`.
pub fn welch_bound(dim: usize, count: usize) -> Result<f64> {
    if dim == 0 || count < dim {
        return Err(Error::BadArguments {
            context: format!("Welch bound needs count >= dim >= 1, got dim {dim}, count {count}"),
        });
    }
    if count == dim {
        return Ok(0.0);
    }
    let m = dim as f64;
    let n = count as f64;
    Ok(((n - m) / (m * (n - 1.0))).sqrt())
}

/// Whether an equiangular tight frame of this size can exist at all:
/// `count <= dim (dim + 1) / 2` over the reals,
/// `count <= dim^2` over the complex numbers.
pub fn etf_feasible(dim: usize, count: usize, field: Field) -> bool {
    match field {
        Field::Real => count <= dim * (dim + 1) / 2,
        Field::Complex => count <= dim * dim,
    }
}
