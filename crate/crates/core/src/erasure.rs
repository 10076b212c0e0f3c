//! Erasure-channel simulation: which frames survive lost coefficients?
//!
//! Transmitting the analysis coefficients of a frame over a lossy channel
//! models packet loss: some coefficients are erased, the rest arrive with
//! additive noise. Reconstruction quality is governed by the surviving
//! analysis matrix `T_R` — the rows of the analysis operator indexed by the
//! coefficients that got through. This module provides:
//!
//! * erasure patterns and their diagonal keep/kill matrices;
//! * the matched-filter receiver `(m/N) T* y` and the regularized
//!   least-squares (MMSE) receiver `(T_R* T_R + sigma^2 I)^{-1} T_R* y`;
//! * exhaustive condition-number sweeps over every erasure pattern of a
//!   given size;
//! * a Monte-Carlo check of the matched-filter error bound together with
//!   the operator-norm identities it rests on;
//! * a seeded AWGN channel so experiments are reproducible bit for bit.
//!
//! # Which condition number?
//!
//! Throughout, the condition number of an erasure pattern is
//! `sigma_max / sigma_min` of the surviving analysis matrix `T_R`
//! (equivalently the square root of the condition number of `T_R* T_R`).
//! For a uniform tight frame of `N` vectors in dimension `m`, deleting one
//! coefficient changes `T* T = (N/m) I` into `(N/m) I - f_k f_k*`, whose
//! eigenvalues are `N/m` (with multiplicity `m - 1`) and `N/m - 1`. Every
//! single erasure therefore has condition number
//! `sqrt((N/m) / (N/m - 1))` — for 7 vectors in dimension 3 that is
//! `sqrt(7)/2 ≈ 1.3229`, independent of which coefficient is lost and of
//! which uniform tight frame is used.
//!
//! # Examples
//!
//! ```
//! use framekit_core::constructions::difference_set_frame;
//! use framekit_core::erasure::condition_sweep;
//!
//! let frame = difference_set_frame(7, &[1, 2, 4]).unwrap();
//! let report = condition_sweep(&frame, 1).unwrap();
//! assert_eq!(report.pattern_count, 7);
//! assert!((report.max_cond - 7f64.sqrt() / 2.0).abs() < 1e-10);
//! ```

use itertools::Itertools;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::linalg::{vector_norm, ComplexMatrix, RANK_TOLERANCE};
use crate::rng::SplitMix64;

/// A subset of coefficient indices lost in transmission, together with its
/// complement (the coefficients that survive).
///
/// Duplicate indices in the input are collapsed; the stored sets are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasurePattern {
    total: usize,
    erased: Vec<usize>,
    surviving: Vec<usize>,
}

impl ErasurePattern {
    /// Builds a pattern over `total` coefficients erasing the given indices.
    ///
    /// # Examples
    ///
    /// ```
    /// use framekit_core::erasure::ErasurePattern;
    ///
    /// let pattern = ErasurePattern::new(7, &[5, 2]).unwrap();
    /// assert_eq!(pattern.erased(), &[2, 5]);
    /// assert_eq!(pattern.surviving(), &[0, 1, 3, 4, 6]);
    /// ```
    pub fn new(total: usize, erased: &[usize]) -> Result<Self> {
        for &index in erased {
            if index >= total {
                return Err(Error::BadErasureIndex {
                    index,
                    count: total,
                });
            }
        }
        let mut erased: Vec<usize> = erased.to_vec();
        erased.sort_unstable();
        erased.dedup();
        let surviving = (0..total).filter(|k| !erased.contains(k)).collect();
        Ok(Self {
            total,
            erased,
            surviving,
        })
    }

    /// Total number of coefficients.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Sorted erased indices.
    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    /// Sorted surviving indices.
    pub fn surviving(&self) -> &[usize] {
        &self.surviving
    }

    /// Whether coefficient `k` is erased.
    pub fn is_erased(&self, k: usize) -> bool {
        self.erased.binary_search(&k).is_ok()
    }
}

/// The diagonal keep matrix `Q` (ones at surviving indices) and kill matrix
/// `P = I - Q` (ones at erased indices) of a pattern. Both are idempotent
/// and sum to the identity.
pub fn erasure_matrices(pattern: &ErasurePattern) -> (ComplexMatrix, ComplexMatrix) {
    let n = pattern.total();
    let mut keep = ComplexMatrix::zeros(n, n);
    let mut kill = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        if pattern.is_erased(k) {
            kill[(k, k)] = Complex64::new(1.0, 0.0);
        } else {
            keep[(k, k)] = Complex64::new(1.0, 0.0);
        }
    }
    (keep, kill)
}

fn require_matching_count(frame: &Frame, pattern: &ErasurePattern) -> Result<()> {
    if pattern.total() != frame.count() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "erasure pattern covers {} coefficients but the frame has {}",
                pattern.total(),
                frame.count()
            ),
        });
    }
    Ok(())
}

/// Analysis matrix restricted to a set of surviving rows: for each kept
/// index `k` a row holding the conjugate of frame vector `k`.
fn analysis_rows(frame: &Frame, keep: &[usize]) -> ComplexMatrix {
    let m = frame.dim();
    let mut data = Vec::with_capacity(keep.len() * m);
    for &k in keep {
        data.extend(frame.column(k).iter().map(|z| z.conj()));
    }
    ComplexMatrix::new(keep.len(), m, data).expect("row block has consistent shape")
}

/// The surviving analysis matrix `T_R`: one row per surviving coefficient.
pub fn surviving_analysis(frame: &Frame, pattern: &ErasurePattern) -> Result<ComplexMatrix> {
    require_matching_count(frame, pattern)?;
    Ok(analysis_rows(frame, pattern.surviving()))
}

/// Matched-filter receiver: `(m/N) T* y` for a full coefficient vector `y`.
///
/// On a tight frame with no erasures and no noise this recovers the input
/// exactly, because `T* T = (N/m) I`.
pub fn matched_filter(frame: &Frame, ytilde: &[Complex64]) -> Result<Vec<Complex64>> {
    let scale = frame.dim() as f64 / frame.count() as f64;
    let mut out = frame.synthesis(ytilde)?;
    for v in &mut out {
        *v *= scale;
    }
    Ok(out)
}

/// Regularized least-squares receiver from surviving coefficients:
/// `(T_R* T_R + sigma^2 I)^{-1} T_R* y`.
///
/// With `sigma = 0` this is plain least squares and recovers the input
/// exactly whenever the surviving vectors still span; in that case a
/// rank-deficient `T_R` is reported as an error rather than inverted.
pub fn mmse_receiver(
    frame: &Frame,
    pattern: &ErasurePattern,
    ytilde_surviving: &[Complex64],
    sigma: f64,
) -> Result<Vec<Complex64>> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::BadArguments {
            context: format!("noise level must be finite and nonnegative, got {sigma}"),
        });
    }
    let rows = surviving_analysis(frame, pattern)?;
    if ytilde_surviving.len() != rows.rows() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "{} surviving coefficients supplied but the pattern keeps {}",
                ytilde_surviving.len(),
                rows.rows()
            ),
        });
    }
    let adjoint = rows.adjoint();
    let normal = adjoint.mul(&rows)?;
    let eig = normal.hermitian_eig()?;
    let sigma_max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0).sqrt();
    let sigma_min = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    if sigma == 0.0 && sigma_min <= RANK_TOLERANCE * sigma_max.max(1.0) {
        return Err(Error::RankDeficient {
            sigma_min,
            sigma_max,
        });
    }
    let rhs = adjoint.mul_vec(ytilde_surviving)?;
    let inverse = eig.map_eigenvalues(|lambda| 1.0 / (lambda.max(0.0) + sigma * sigma));
    inverse.mul_vec(&rhs)
}

/// Aggregate condition numbers over every erasure pattern of a fixed size.
#[derive(Debug, Clone, PartialEq)]
pub struct ErasureReport {
    /// Number of erased coefficients per pattern.
    pub erasure_count: usize,
    /// Number of patterns enumerated, `C(N, e)`.
    pub pattern_count: usize,
    /// Arithmetic mean of the condition numbers over non-failing patterns
    /// (`NaN` if every pattern failed).
    pub mean_cond: f64,
    /// Largest condition number over non-failing patterns (`NaN` if every
    /// pattern failed).
    pub max_cond: f64,
    /// Patterns whose surviving vectors no longer span (excluded from the
    /// mean and max).
    pub failures: usize,
}

/// Enumerates all `C(N, e)` erasure patterns of size `e` and aggregates the
/// condition number `sigma_max / sigma_min` of each surviving analysis
/// matrix.
///
/// Patterns whose surviving vectors fail to span (smallest singular value
/// at the relative rank tolerance) are counted as failures and excluded
/// from the mean and maximum. The enumeration is parallel; results are
/// aggregated in a fixed order so the report is deterministic.
pub fn condition_sweep(frame: &Frame, e: usize) -> Result<ErasureReport> {
    let n = frame.count();
    if e >= n {
        return Err(Error::BadArguments {
            context: format!("cannot erase {e} of {n} coefficients"),
        });
    }
    let patterns: Vec<Vec<usize>> = (0..n).combinations(e).collect();
    let conds: Vec<Option<f64>> = patterns
        .par_iter()
        .map(|erased| {
            let keep: Vec<usize> = (0..n).filter(|k| !erased.contains(k)).collect();
            let rows = analysis_rows(frame, &keep);
            let singulars = rows.singular_values().ok()?;
            let hi = singulars.first().copied().unwrap_or(0.0);
            let lo = singulars.last().copied().unwrap_or(0.0);
            if lo <= RANK_TOLERANCE * hi.max(1.0) {
                None
            } else {
                Some(hi / lo)
            }
        })
        .collect();
    let pattern_count = conds.len();
    let mut sum = 0.0;
    let mut max_cond = f64::NEG_INFINITY;
    let mut successes = 0usize;
    for cond in conds.into_iter().flatten() {
        sum += cond;
        successes += 1;
        max_cond = max_cond.max(cond);
    }
    let (mean_cond, max_cond) = if successes > 0 {
        (sum / successes as f64, max_cond)
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(ErasureReport {
        erasure_count: e,
        pattern_count,
        mean_cond,
        max_cond,
        failures: pattern_count - successes,
    })
}

/// The three operator norms controlling the matched-filter error:
/// `‖T* P T‖`, `‖P T T* P‖`, and the largest absolute row sum of the
/// erased-by-erased block of the Gram matrix.
///
/// The first two are equal for any frame (they are `‖P T‖² ` seen from both
/// sides), and the third dominates them by Gershgorin's bound.
pub fn erased_operator_norms(frame: &Frame, pattern: &ErasurePattern) -> Result<(f64, f64, f64)> {
    require_matching_count(frame, pattern)?;
    let erased = pattern.erased();
    if erased.is_empty() {
        return Ok((0.0, 0.0, 0.0));
    }
    let m = frame.dim();
    // T* P T = sum over erased k of f_k f_k*.
    let mut outer_sum = ComplexMatrix::zeros(m, m);
    for &k in erased {
        let column = frame.column(k);
        for i in 0..m {
            for j in 0..m {
                outer_sum[(i, j)] += column[i] * column[j].conj();
            }
        }
    }
    let analysis_norm = outer_sum.spectral_norm()?;
    // P T T* P is the erased-by-erased block of the coefficient cross
    // correlations; its norm equals that of the matching Gram block.
    let gram = frame.gram();
    let block = ComplexMatrix::from_fn(erased.len(), erased.len(), |i, j| {
        gram[(erased[i], erased[j])]
    })?;
    let coefficient_norm = block.spectral_norm()?;
    let row_sum = erased
        .iter()
        .map(|&k| erased.iter().map(|&l| gram[(k, l)].norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    Ok((analysis_norm, coefficient_norm, row_sum))
}

/// Result of the Monte-Carlo matched-filter error-bound check.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Number of random unit inputs tested.
    pub trials: usize,
    /// `‖T* P T‖₂` — the operator that the reconstruction error passes
    /// through.
    pub erased_operator_norm: f64,
    /// `‖P T T* P‖₂` — the same quantity seen on the coefficient side.
    pub coefficient_operator_norm: f64,
    /// Gershgorin-style bound: largest absolute row sum of the erased Gram
    /// block.
    pub row_sum_bound: f64,
    /// Largest reconstruction error observed.
    pub worst_error: f64,
    /// Smallest slack `bound - error` observed (nonnegative when the bound
    /// holds).
    pub worst_slack: f64,
}

/// Verifies the matched-filter error bound
/// `‖f - (m/N) T* Q T f‖ ≤ (m/N) ‖T* P T‖₂ ‖f‖`
/// on random unit inputs for a tight frame, together with the operator-norm
/// identities backing it.
///
/// Requires a tight frame: the bound rests on `T* T = (N/m) I`. Inputs are
/// drawn from per-trial streams of the seeded generator, so concurrent or
/// repeated runs see identical data.
///
/// # Panics
///
/// Panics if the mathematically guaranteed relations fail (bound violated
/// beyond 1e-12, norm identity beyond 1e-10): that would indicate a defect
/// in the linear algebra, not bad input.
pub fn matched_error_bound_check(
    frame: &Frame,
    pattern: &ErasurePattern,
    trials: usize,
    seed: u64,
) -> Result<BoundReport> {
    require_matching_count(frame, pattern)?;
    let tightness = frame.tightness_residual();
    if tightness > 1e-8 {
        return Err(Error::BadArguments {
            context: format!(
                "matched-filter bound requires a tight frame (tightness residual {tightness:.3e})"
            ),
        });
    }
    let (analysis_norm, coefficient_norm, row_sum) = erased_operator_norms(frame, pattern)?;
    assert!(
        (analysis_norm - coefficient_norm).abs() <= 1e-10,
        "operator norm identity violated: {analysis_norm} vs {coefficient_norm}"
    );
    assert!(
        coefficient_norm <= row_sum + 1e-10,
        "row-sum bound violated: {coefficient_norm} vs {row_sum}"
    );
    let m = frame.dim();
    let scale = m as f64 / frame.count() as f64;
    let bound = scale * analysis_norm;
    let mut worst_error = 0.0f64;
    let mut worst_slack = f64::INFINITY;
    for trial in 0..trials {
        let mut rng = SplitMix64::stream(seed, trial as u64);
        let mut f: Vec<Complex64> = (0..m)
            .map(|_| Complex64::new(rng.next_gaussian(), rng.next_gaussian()))
            .collect();
        let norm = vector_norm(&f);
        for v in &mut f {
            *v /= norm;
        }
        let mut coefficients = frame.analysis(&f)?;
        for &k in pattern.erased() {
            coefficients[k] = Complex64::new(0.0, 0.0);
        }
        let recovered = matched_filter(frame, &coefficients)?;
        let error = f
            .iter()
            .zip(&recovered)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(
            error <= bound + 1e-12,
            "matched-filter bound violated: error {error} vs bound {bound}"
        );
        worst_error = worst_error.max(error);
        worst_slack = worst_slack.min(bound - error);
    }
    if trials == 0 {
        worst_slack = bound;
    }
    Ok(BoundReport {
        trials,
        erased_operator_norm: analysis_norm,
        coefficient_operator_norm: coefficient_norm,
        row_sum_bound: row_sum,
        worst_error,
        worst_slack,
    })
}

/// Noise and seed for the simulated channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    /// Standard deviation of the complex noise per coefficient
    /// (`E|ε_k|² = sigma²`).
    pub sigma: f64,
    /// Seed for the noise generator.
    pub seed: u64,
}

/// Sends `f` through the erasure channel: analysis coefficients are
/// computed, erased entries are zeroed, then circular complex Gaussian
/// noise of per-component variance `sigma²` is added to every coefficient
/// (erased slots carry pure noise).
///
/// The same seed always produces the identical output vector.
pub fn awgn_transmit(
    frame: &Frame,
    f: &[Complex64],
    pattern: &ErasurePattern,
    cfg: ChannelConfig,
) -> Result<Vec<Complex64>> {
    if !(cfg.sigma.is_finite() && cfg.sigma >= 0.0) {
        return Err(Error::BadArguments {
            context: format!(
                "noise level must be finite and nonnegative, got {}",
                cfg.sigma
            ),
        });
    }
    require_matching_count(frame, pattern)?;
    let mut coefficients = frame.analysis(f)?;
    for &k in pattern.erased() {
        coefficients[k] = Complex64::new(0.0, 0.0);
    }
    if cfg.sigma > 0.0 {
        let mut rng = SplitMix64::new(cfg.seed);
        let component = cfg.sigma / 2f64.sqrt();
        for value in &mut coefficients {
            let noise = Complex64::new(rng.next_gaussian(), rng.next_gaussian());
            *value += component * noise;
        }
    }
    Ok(coefficients)
}
