//! Numerical search for frames with the smallest possible worst-case
//! correlation.
//!
//! The worst-case correlation `max_{k<l} |<f_k, f_l>|` is not smooth, so
//! the search minimizes the smoothed proxy
//!
//! ```text
//! phi_p = ( sum_{k<l} |<f_k, f_l>|^(2p) )^(1/(2p))
//! ```
//!
//! for an increasing schedule of exponents `p`: small `p` spreads vectors
//! globally, large `p` approaches the true maximum. Each stage runs
//! projected gradient descent on the product of unit spheres — Euclidean
//! gradient, projection onto the sphere's tangent space, backtracking line
//! search, renormalization — and the exponent is then doubled.
//!
//! Multiple restarts run in parallel from independent seeded starting
//! points; one restart is seeded from the catalogue of analytic
//! constructions whenever one exists for the requested shape, so the
//! search never reports worse than the closed-form designs. The reported
//! value is always the *true* maximal correlation of the final frame,
//! never the smoothed objective, and the winner across restarts is chosen
//! deterministically (smallest value, ties by restart index).
//!
//! # Examples
//!
//! ```
//! use framekit_core::frame::Field;
//! use framekit_core::optimizer::{minimize_max_correlation, OptimizerConfig};
//!
//! // Four vectors in R^3: the regular simplex attains the lower bound 1/3.
//! let cfg = OptimizerConfig {
//!     restarts: 2,
//!     ..OptimizerConfig::default()
//! };
//! let result = minimize_max_correlation(3, 4, Field::Real, &cfg).unwrap();
//! assert!(result.achieved <= 1.0 / 3.0 + 1e-4);
//! ```

use num_complex::Complex64;
use rayon::prelude::*;

use crate::constructions::{
    alltop_frame, difference_set_frame, is_prime, paley_frame, simplex_frame, skew_frame,
};
use crate::error::{Error, Result};
use crate::frame::{welch_bound, Field, Frame};
use crate::linalg::{inner_product, vector_norm};
use crate::rng::SplitMix64;

/// Armijo sufficient-decrease constant for the backtracking line search.
const ARMIJO_SLOPE: f64 = 1e-4;
/// Step growth factor after an accepted iterate.
const STEP_GROWTH: f64 = 1.5;
/// Largest trial step allowed.
const STEP_CAP: f64 = 32.0;
/// Below this trial step the stage is considered stalled.
const STEP_FLOOR: f64 = 1e-16;
/// Finite-difference step for [`gradient_check`].
const FD_STEP: f64 = 1e-6;

/// Knobs for the correlation minimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Independent random starting points (one is replaced by a catalogue
    /// construction when available).
    pub restarts: usize,
    /// Strictly increasing smoothing exponents.
    pub p_schedule: Vec<u32>,
    /// Iteration cap per smoothing stage.
    pub max_iters_per_stage: usize,
    /// Stage stops early once the tangent gradient norm of the smoothed
    /// objective falls below this.
    pub gradient_tolerance: f64,
    /// Seed for all random starting points.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            p_schedule: vec![2, 4, 8, 16, 32, 64],
            max_iters_per_stage: 2000,
            gradient_tolerance: 1e-10,
            seed: 7,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::BadArguments {
                context: "optimizer needs at least one restart".into(),
            });
        }
        if self.max_iters_per_stage == 0 {
            return Err(Error::BadArguments {
                context: "optimizer needs at least one iteration per stage".into(),
            });
        }
        if self.p_schedule.is_empty() {
            return Err(Error::BadArguments {
                context: "smoothing schedule must not be empty".into(),
            });
        }
        if self.p_schedule[0] < 1 {
            return Err(Error::BadArguments {
                context: "smoothing exponents must be at least 1".into(),
            });
        }
        if self.p_schedule.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::BadArguments {
                context: "smoothing schedule must be strictly increasing".into(),
            });
        }
        if !(self.gradient_tolerance.is_finite() && self.gradient_tolerance > 0.0) {
            return Err(Error::BadArguments {
                context: format!(
                    "gradient tolerance must be positive and finite, got {}",
                    self.gradient_tolerance
                ),
            });
        }
        Ok(())
    }
}

/// Outcome of the search.
#[derive(Debug, Clone)]
pub struct OptimizerResult {
    /// Best frame found.
    pub frame: Frame,
    /// True maximal correlation of [`OptimizerResult::frame`].
    pub achieved: f64,
    /// The lower bound for the shape, for reference.
    pub welch: f64,
    /// `achieved - welch` (zero only when the bound is attained).
    pub gap: f64,
    /// Whether the winning restart's final stage reached a stationary
    /// point before its iteration cap.
    pub converged: bool,
    /// Restarts executed (0 when the orthonormal shortcut applies).
    pub restarts_used: usize,
    /// Index of the winning restart.
    pub best_restart: usize,
}

/// All pairwise correlations `c[k][l] = <f_k, f_l>` of a column set.
fn correlation_table(columns: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = columns.len();
    let mut table = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for k in 0..n {
        for l in 0..n {
            if k != l {
                table[k][l] = inner_product(&columns[k], &columns[l]);
            }
        }
    }
    table
}

fn true_max_correlation(columns: &[Vec<Complex64>]) -> f64 {
    let n = columns.len();
    let mut max = 0.0f64;
    for k in 0..n {
        for l in (k + 1)..n {
            max = max.max(inner_product(&columns[k], &columns[l]).norm());
        }
    }
    max
}

/// The smoothed objective `phi_p`, evaluated in a scale-stable way:
/// with `M` the largest correlation modulus,
/// `phi_p = M * (sum (|c|/M)^(2p))^(1/(2p))`, so no `|c|^(2p)` underflows.
fn phi(columns: &[Vec<Complex64>], p: u32) -> f64 {
    let n = columns.len();
    let mut moduli = Vec::with_capacity(n * (n - 1) / 2);
    let mut peak = 0.0f64;
    for k in 0..n {
        for l in (k + 1)..n {
            let r = inner_product(&columns[k], &columns[l]).norm();
            peak = peak.max(r);
            moduli.push(r);
        }
    }
    if peak == 0.0 {
        return 0.0;
    }
    let sum: f64 = moduli
        .iter()
        .map(|&r| (r / peak).powi(2 * p as i32))
        .sum();
    peak * sum.powf(1.0 / (2.0 * p as f64))
}

/// Euclidean gradient of `phi_p` with respect to the real coordinates of
/// every column, computed in the same scale-stable normalization as
/// [`phi`]: the gradient for column `j` is
/// `sum_{l != j} (|c_jl|/M)^(2p-2) c_jl f_l / (M * S^(1 - 1/(2p)))`.
fn phi_gradient(columns: &[Vec<Complex64>], p: u32) -> Vec<Vec<Complex64>> {
    let n = columns.len();
    let m = columns[0].len();
    let table = correlation_table(columns);
    let mut peak = 0.0f64;
    for k in 0..n {
        for l in (k + 1)..n {
            peak = peak.max(table[k][l].norm());
        }
    }
    if peak == 0.0 {
        return vec![vec![Complex64::new(0.0, 0.0); m]; n];
    }
    let mut scaled_sum = 0.0f64;
    for k in 0..n {
        for l in (k + 1)..n {
            scaled_sum += (table[k][l].norm() / peak).powi(2 * p as i32);
        }
    }
    let denominator = peak * scaled_sum.powf(1.0 - 1.0 / (2.0 * p as f64));
    let mut gradient = vec![vec![Complex64::new(0.0, 0.0); m]; n];
    for j in 0..n {
        for l in 0..n {
            if l == j {
                continue;
            }
            let c = table[j][l];
            let weight = (c.norm() / peak).powi(2 * (p as i32 - 1)) / denominator;
            let factor = c * weight;
            for i in 0..m {
                gradient[j][i] += factor * columns[l][i];
            }
        }
    }
    gradient
}

/// Projects `v` onto the tangent space of the unit sphere at `f`
/// (removing the radial component that would change the norm).
fn tangent_project(v: &[Complex64], f: &[Complex64]) -> Vec<Complex64> {
    let radial = inner_product(v, f).re;
    v.iter().zip(f).map(|(a, b)| a - radial * b).collect()
}

fn normalize(v: &mut [Complex64]) {
    let norm = vector_norm(v);
    for z in v.iter_mut() {
        *z /= norm;
    }
}

/// Result of one smoothing stage.
pub(crate) struct StageOutcome {
    /// Objective value after every accepted iterate (starts with the
    /// initial value). Consumed by the monotonicity tests.
    #[allow(dead_code)]
    pub phi_history: Vec<f64>,
    /// True when the stage exited at a stationary point (tangent gradient
    /// below tolerance, or no step could make progress) rather than at the
    /// iteration cap.
    pub stationary: bool,
}

/// Runs projected gradient descent on `phi_p` until the tangent gradient
/// falls below `grad_tol`, no backtracked step makes progress, or
/// `max_iters` iterates were accepted. Columns are renormalized after
/// every step.
pub(crate) fn descend_stage(
    columns: &mut Vec<Vec<Complex64>>,
    p: u32,
    max_iters: usize,
    grad_tol: f64,
) -> StageOutcome {
    let mut value = phi(columns, p);
    let mut history = vec![value];
    let mut step = 1.0f64;
    if value == 0.0 {
        // Orthogonal system: nothing to improve.
        return StageOutcome {
            phi_history: history,
            stationary: true,
        };
    }
    for _ in 0..max_iters {
        let gradient = phi_gradient(columns, p);
        let tangent: Vec<Vec<Complex64>> = gradient
            .iter()
            .zip(columns.iter())
            .map(|(g, f)| tangent_project(g, f))
            .collect();
        let slope: f64 = tangent
            .iter()
            .map(|t| t.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum();
        if slope.sqrt() <= grad_tol {
            return StageOutcome {
                phi_history: history,
                stationary: true,
            };
        }
        let mut accepted = false;
        while step >= STEP_FLOOR {
            let mut trial: Vec<Vec<Complex64>> = columns
                .iter()
                .zip(&tangent)
                .map(|(f, t)| {
                    f.iter()
                        .zip(t)
                        .map(|(a, b)| a - step * b)
                        .collect::<Vec<_>>()
                })
                .collect();
            for column in &mut trial {
                normalize(column);
            }
            let trial_value = phi(&trial, p);
            if trial_value <= value - ARMIJO_SLOPE * step * slope {
                *columns = trial;
                value = trial_value;
                history.push(value);
                step = (step * STEP_GROWTH).min(STEP_CAP);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // No distinguishable descent direction left at this exponent.
            return StageOutcome {
                phi_history: history,
                stationary: true,
            };
        }
    }
    StageOutcome {
        phi_history: history,
        stationary: false,
    }
}

/// Random unit columns for one restart, drawn from its own stream.
fn random_columns(dim: usize, count: usize, field: Field, rng: &mut SplitMix64) -> Vec<Vec<Complex64>> {
    (0..count)
        .map(|_| loop {
            let mut column: Vec<Complex64> = (0..dim)
                .map(|_| match field {
                    Field::Real => Complex64::new(rng.next_gaussian(), 0.0),
                    Field::Complex => Complex64::new(rng.next_gaussian(), rng.next_gaussian()),
                })
                .collect();
            let norm = vector_norm(&column);
            if norm > 1e-8 {
                for z in &mut column {
                    *z /= norm;
                }
                return column;
            }
        })
        .collect()
}

/// Column data of the best analytic construction for the shape, if the
/// catalogue has one. Real constructions also serve complex requests;
/// complex constructions never serve real ones.
fn catalogue_seed(dim: usize, count: usize, field: Field) -> Option<Vec<Vec<Complex64>>> {
    let mut candidates: Vec<Frame> = Vec::new();
    if count == dim + 1 {
        candidates.extend(simplex_frame(dim).ok());
    }
    if count == 2 * dim {
        candidates.extend(paley_frame(count).ok());
        if field == Field::Complex {
            candidates.extend(skew_frame(count).ok());
        }
    }
    if field == Field::Complex {
        // Quadratic-residue difference sets give equiangular harmonic
        // frames for prime counts congruent to 3 mod 4.
        if is_prime(count) && count % 4 == 3 && dim == (count - 1) / 2 {
            let mut residues: Vec<usize> = (1..count).map(|k| (k * k) % count).collect();
            residues.sort_unstable();
            residues.dedup();
            candidates.extend(difference_set_frame(count, &residues).ok());
        }
        if count == dim * dim {
            candidates.extend(alltop_frame(dim, false).ok());
        }
        if count == dim * dim + dim {
            candidates.extend(alltop_frame(dim, true).ok());
        }
    }
    candidates.retain(|f| f.field() == field || field == Field::Complex);
    candidates
        .into_iter()
        .min_by(|a, b| {
            a.max_correlation()
                .partial_cmp(&b.max_correlation())
                .expect("correlations are finite")
        })
        .map(|frame| frame.columns().map(|c| c.to_vec()).collect())
}

struct RestartOutcome {
    achieved: f64,
    index: usize,
    columns: Vec<Vec<Complex64>>,
    converged: bool,
}

fn run_restart(
    dim: usize,
    count: usize,
    field: Field,
    cfg: &OptimizerConfig,
    index: usize,
) -> RestartOutcome {
    let mut columns = if index == 0 {
        catalogue_seed(dim, count, field).unwrap_or_else(|| {
            let mut rng = SplitMix64::stream(cfg.seed, index as u64);
            random_columns(dim, count, field, &mut rng)
        })
    } else {
        let mut rng = SplitMix64::stream(cfg.seed, index as u64);
        random_columns(dim, count, field, &mut rng)
    };
    let mut converged = true;
    for &p in &cfg.p_schedule {
        let outcome = descend_stage(&mut columns, p, cfg.max_iters_per_stage, cfg.gradient_tolerance);
        converged = outcome.stationary;
    }
    RestartOutcome {
        achieved: true_max_correlation(&columns),
        index,
        columns,
        converged,
    }
}

/// Searches for `count` unit vectors in dimension `dim` (over the given
/// field) whose largest pairwise correlation is as small as possible.
///
/// Runs `cfg.restarts` independent searches in parallel and returns the
/// best frame by true maximal correlation (ties broken by restart index,
/// so results are reproducible). When `count == dim` the orthonormal
/// basis is returned immediately.
pub fn minimize_max_correlation(
    dim: usize,
    count: usize,
    field: Field,
    cfg: &OptimizerConfig,
) -> Result<OptimizerResult> {
    cfg.validate()?;
    if dim == 0 || count < dim {
        return Err(Error::BadArguments {
            context: format!("need count >= dim >= 1, got dim {dim}, count {count}"),
        });
    }
    let welch = welch_bound(dim, count)?;
    if count == dim {
        let columns = (0..count)
            .map(|k| {
                (0..dim)
                    .map(|i| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        let frame = Frame::new(dim, field, columns)?;
        return Ok(OptimizerResult {
            achieved: frame.max_correlation(),
            frame,
            welch,
            gap: 0.0,
            converged: true,
            restarts_used: 0,
            best_restart: 0,
        });
    }
    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|index| run_restart(dim, count, field, cfg, index))
        .collect();
    let best = outcomes
        .into_iter()
        .min_by(|a, b| {
            (a.achieved, a.index)
                .partial_cmp(&(b.achieved, b.index))
                .expect("achieved correlations are finite")
        })
        .expect("at least one restart");
    let frame = Frame::new(dim, field, best.columns)?;
    Ok(OptimizerResult {
        achieved: best.achieved,
        gap: best.achieved - welch,
        frame,
        welch,
        converged: best.converged,
        restarts_used: cfg.restarts,
        best_restart: best.index,
    })
}

/// Raw smoothed energy `sum_{k<l} |c_kl|^(2p)` without rescaling — the
/// quantity whose analytic gradient [`gradient_check`] verifies.
fn raw_energy(columns: &[Vec<Complex64>], p: u32) -> f64 {
    let n = columns.len();
    let mut sum = 0.0;
    for k in 0..n {
        for l in (k + 1)..n {
            sum += inner_product(&columns[k], &columns[l])
                .norm_sqr()
                .powi(p as i32);
        }
    }
    sum
}

/// Analytic Euclidean gradient of [`raw_energy`] with respect to the real
/// coordinates: for column `j`,
/// `2p * sum_{l != j} |c_jl|^(2p-2) c_jl f_l`.
fn raw_gradient(columns: &[Vec<Complex64>], p: u32) -> Vec<Vec<Complex64>> {
    let n = columns.len();
    let m = columns[0].len();
    let table = correlation_table(columns);
    let mut gradient = vec![vec![Complex64::new(0.0, 0.0); m]; n];
    for j in 0..n {
        for l in 0..n {
            if l == j {
                continue;
            }
            let c = table[j][l];
            let factor = 2.0 * p as f64 * c.norm_sqr().powi(p as i32 - 1) * c;
            for i in 0..m {
                gradient[j][i] += factor * columns[l][i];
            }
        }
    }
    gradient
}

/// Compares the analytic gradient of the smoothed energy against central
/// finite differences (step 1e-6) at the given frame.
///
/// Returns the largest discrepancy over all real coordinates, relative to
/// the larger of 1 and the gradient's largest component. An orthonormal
/// basis is stationary, so both gradients vanish and the check returns a
/// value at roundoff level.
pub fn gradient_check(frame: &Frame, p: u32) -> f64 {
    assert!(p >= 1, "smoothing exponent must be at least 1");
    let columns: Vec<Vec<Complex64>> = frame.columns().map(|c| c.to_vec()).collect();
    let analytic = raw_gradient(&columns, p);
    let scale = analytic
        .iter()
        .flatten()
        .fold(1.0f64, |acc, z| acc.max(z.re.abs()).max(z.im.abs()));
    let mut worst = 0.0f64;
    let mut perturbed = columns.clone();
    for j in 0..columns.len() {
        for i in 0..columns[j].len() {
            for part in 0..2 {
                let base = columns[j][i];
                let (plus, minus) = if part == 0 {
                    (
                        Complex64::new(base.re + FD_STEP, base.im),
                        Complex64::new(base.re - FD_STEP, base.im),
                    )
                } else {
                    (
                        Complex64::new(base.re, base.im + FD_STEP),
                        Complex64::new(base.re, base.im - FD_STEP),
                    )
                };
                perturbed[j][i] = plus;
                let forward = raw_energy(&perturbed, p);
                perturbed[j][i] = minus;
                let backward = raw_energy(&perturbed, p);
                perturbed[j][i] = base;
                let numeric = (forward - backward) / (2.0 * FD_STEP);
                let exact = if part == 0 {
                    analytic[j][i].re
                } else {
                    analytic[j][i].im
                };
                worst = worst.max((numeric - exact).abs() / scale);
            }
        }
    }
    worst
}
