//! Time–frequency lattice analysis for Gaussian windows.
//!
//! A Gaussian window shifted in time by `x` and in frequency by `omega`
//! correlates with the original window according to the closed form
//! `exp(-pi (x^2 + omega^2) / 2)`: the correlation depends only on the
//! Euclidean distance of the shift from the origin and falls off radially.
//! Consequently, when the shifts are drawn from a 2D lattice, the largest
//! correlation between distinct lattice points is attained at a shortest
//! nonzero lattice vector, and designing a low-correlation shift set of a
//! given density is exactly the planar sphere-packing problem — which the
//! hexagonal lattice solves.
//!
//! This module provides the closed-form correlation, generators for
//! hexagonal and square lattices of prescribed density, an exact
//! shortest-vector search by exhaustive enumeration, and a side-by-side
//! comparison of the two lattice shapes at equal density.
//!
//! # Examples
//!
//! ```
//! use framekit_core::gabor::compare_lattices;
//!
//! // At density 1 the hexagonal lattice spreads its points farther apart
//! // than the square lattice, so its worst-case correlation is lower.
//! let cmp = compare_lattices(1.0).unwrap();
//! assert!(cmp.hexagonal.max_correlation < cmp.square.max_correlation);
//! assert!((cmp.hexagonal.min_distance.powi(2) - 2.0 / 3f64.sqrt()).abs() < 1e-12);
//! ```

use crate::error::{Error, Result};

/// Relative threshold below which a generator determinant counts as zero.
const SINGULAR_DET_TOLERANCE: f64 = 1e-12;

/// Correlation of the unit-norm Gaussian window with its copy shifted by
/// `x` in time and `omega` in frequency.
///
/// Returns `exp(-pi (x^2 + omega^2) / 2)`, the modulus of the Gaussian
/// ambiguity function; it is invariant under rotations of the point
/// `(x, omega)` and equals 1 exactly at the origin.
///
/// # Panics
///
/// Panics if either argument is not finite.
///
/// # Examples
///
/// ```
/// use framekit_core::gabor::gaussian_correlation;
///
/// assert_eq!(gaussian_correlation(0.0, 0.0), 1.0);
/// let c = gaussian_correlation(1.0, 0.0);
/// assert!((c - (-std::f64::consts::PI / 2.0).exp()).abs() < 1e-15);
/// ```
pub fn gaussian_correlation(x: f64, omega: f64) -> f64 {
    assert!(
        x.is_finite() && omega.is_finite(),
        "gaussian_correlation requires finite arguments"
    );
    (-std::f64::consts::PI * (x * x + omega * omega) / 2.0).exp()
}

/// A full-rank lattice in the plane, described by a 2x2 generator matrix
/// whose columns are the two basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice2D {
    generator: [[f64; 2]; 2],
    volume: f64,
}

impl Lattice2D {
    /// Builds a lattice from a generator matrix (row-major; columns are the
    /// basis vectors).
    ///
    /// Fails if any entry is not finite or if the determinant vanishes
    /// relative to the size of the entries.
    pub fn new(generator: [[f64; 2]; 2]) -> Result<Self> {
        let flat = [
            generator[0][0],
            generator[0][1],
            generator[1][0],
            generator[1][1],
        ];
        if flat.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "lattice generator entry".into(),
            });
        }
        let det = generator[0][0] * generator[1][1] - generator[0][1] * generator[1][0];
        let scale = flat.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if det.abs() <= SINGULAR_DET_TOLERANCE * scale.powi(2).max(1.0) {
            return Err(Error::SingularLattice { det });
        }
        Ok(Self {
            generator,
            volume: det.abs(),
        })
    }

    /// The generator matrix (row-major; columns are basis vectors).
    pub fn generator(&self) -> [[f64; 2]; 2] {
        self.generator
    }

    /// Area of the fundamental cell, `|det L|`.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Number of lattice points per unit area, `1 / volume`.
    pub fn density(&self) -> f64 {
        1.0 / self.volume
    }

    /// The lattice point with integer coordinates `z = (z1, z2)`, i.e. the
    /// combination `z1 * column_0 + z2 * column_1`.
    pub fn vector(&self, z: [i64; 2]) -> [f64; 2] {
        let (z1, z2) = (z[0] as f64, z[1] as f64);
        [
            z1 * self.generator[0][0] + z2 * self.generator[0][1],
            z1 * self.generator[1][0] + z2 * self.generator[1][1],
        ]
    }

    /// Singular values of the generator, largest first.
    fn singular_values(&self) -> (f64, f64) {
        // Closed form via the eigenvalues of L^T L.
        let g = self.generator;
        let p = g[0][0] * g[0][0] + g[1][0] * g[1][0];
        let r = g[0][1] * g[0][1] + g[1][1] * g[1][1];
        let q = g[0][0] * g[0][1] + g[1][0] * g[1][1];
        let mean = 0.5 * (p + r);
        let radius = 0.5 * ((p - r).powi(2) + 4.0 * q * q).sqrt();
        let hi = (mean + radius).max(0.0).sqrt();
        let lo = (mean - radius).max(0.0).sqrt();
        (hi, lo)
    }

    /// Enumeration radius that is guaranteed to contain a shortest vector:
    /// `ceil(cond(L)) + 1`, where `cond` is the ratio of the generator's
    /// singular values.
    pub fn enumeration_bound(&self) -> i64 {
        let (hi, lo) = self.singular_values();
        (hi / lo).ceil() as i64 + 1
    }
}

/// Shortest-vector data for a lattice, along with the worst-case Gaussian
/// correlation it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeReport {
    /// A shortest nonzero lattice vector (one representative of the +/- pair).
    pub shortest_vector: [f64; 2],
    /// Euclidean length of the shortest nonzero vector.
    pub min_distance: f64,
    /// `exp(-pi * min_distance^2 / 2)`: the largest correlation between the
    /// Gaussian window and its shift by any nonzero lattice point.
    pub max_correlation: f64,
    /// Lattice points per unit area, `1 / volume`.
    pub redundancy: f64,
}

/// Hexagonal lattice with `rho` points per unit area.
///
/// The generator is upper triangular with first column of squared norm
/// `2 / (sqrt(3) * rho)`; its determinant is `1 / rho`.
///
/// # Examples
///
/// ```
/// use framekit_core::gabor::{hexagonal_lattice, shortest_vector};
///
/// let hex = hexagonal_lattice(2.0).unwrap();
/// assert!((hex.volume() - 0.5).abs() < 1e-12);
/// let report = shortest_vector(&hex);
/// assert!((report.min_distance.powi(2) - 1.0 / 3f64.sqrt()).abs() < 1e-12);
/// ```
pub fn hexagonal_lattice(rho: f64) -> Result<Lattice2D> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::BadArguments {
            context: format!("lattice density must be positive and finite, got {rho}"),
        });
    }
    let quart = 3f64.powf(0.25);
    let a = 2f64.sqrt() / (quart * rho.sqrt());
    let b = 1.0 / (quart * (2.0 * rho).sqrt());
    let d = quart / (2.0 * rho).sqrt();
    Lattice2D::new([[a, b], [0.0, d]])
}

/// Square lattice with `rho` points per unit area (spacing `1 / sqrt(rho)`).
pub fn square_lattice(rho: f64) -> Result<Lattice2D> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::BadArguments {
            context: format!("lattice density must be positive and finite, got {rho}"),
        });
    }
    let s = 1.0 / rho.sqrt();
    Lattice2D::new([[s, 0.0], [0.0, s]])
}

/// Finds a shortest nonzero lattice vector by exhaustive enumeration of all
/// integer coordinates within the lattice's guaranteed search radius, and
/// reports the implied worst-case Gaussian correlation.
///
/// The search visits one representative of each `+/-` pair of coordinates
/// and keeps the first minimizer it encounters, so the result is
/// deterministic.
pub fn shortest_vector(lattice: &Lattice2D) -> LatticeReport {
    let bound = lattice.enumeration_bound();
    let mut best_z = [0i64; 2];
    let mut best_norm2 = f64::INFINITY;
    for z1 in 0..=bound {
        for z2 in -bound..=bound {
            if z1 == 0 && z2 <= 0 {
                continue;
            }
            let v = lattice.vector([z1, z2]);
            let norm2 = v[0] * v[0] + v[1] * v[1];
            if norm2 < best_norm2 {
                best_norm2 = norm2;
                best_z = [z1, z2];
            }
        }
    }
    let min_distance = best_norm2.sqrt();
    LatticeReport {
        shortest_vector: lattice.vector(best_z),
        min_distance,
        max_correlation: gaussian_correlation(min_distance, 0.0),
        redundancy: lattice.density(),
    }
}

/// Side-by-side shortest-vector reports for the hexagonal and square
/// lattices of equal density `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeComparison {
    /// The common density of the two lattices.
    pub rho: f64,
    /// Report for the hexagonal lattice.
    pub hexagonal: LatticeReport,
    /// Report for the square lattice.
    pub square: LatticeReport,
}

/// Compares the hexagonal and square lattices at density `rho`.
///
/// The hexagonal lattice always attains the strictly smaller worst-case
/// correlation, because at fixed density it maximizes the minimum distance
/// between points.
pub fn compare_lattices(rho: f64) -> Result<LatticeComparison> {
    let hexagonal = shortest_vector(&hexagonal_lattice(rho)?);
    let square = shortest_vector(&square_lattice(rho)?);
    Ok(LatticeComparison {
        rho,
        hexagonal,
        square,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn correlation_at_origin_is_one() {
        assert_eq!(gaussian_correlation(0.0, 0.0), 1.0);
    }

    #[test]
    fn correlation_matches_frozen_values() {
        assert_relative_eq!(
            gaussian_correlation(1.0, 0.0),
            0.2078795763507619,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            gaussian_correlation(0.0, 1.0),
            0.2078795763507619,
            max_relative = 1e-14
        );
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn correlation_rejects_non_finite() {
        gaussian_correlation(f64::NAN, 0.0);
    }

    #[test]
    fn correlation_is_rotation_invariant() {
        let mut rng = SplitMix64::new(0x9a7b_11ee);
        for _ in 0..1000 {
            let x = 3.0 * (2.0 * rng.next_f64() - 1.0);
            let omega = 3.0 * (2.0 * rng.next_f64() - 1.0);
            let theta = 2.0 * std::f64::consts::PI * rng.next_f64();
            let (s, c) = theta.sin_cos();
            let xr = c * x - s * omega;
            let wr = s * x + c * omega;
            assert_abs_diff_eq!(
                gaussian_correlation(x, omega),
                gaussian_correlation(xr, wr),
                epsilon = 1e-12
            );
        }
    }

    /// Composite Simpson quadrature of the windowed Fourier integral whose
    /// modulus the closed form claims to equal:
    /// `integral of w(u + t/2) * w(u - t/2) * exp(-2 pi i omega u) du`
    /// for the unit-norm Gaussian `w(u) = 2^(1/4) exp(-pi u^2)`.
    fn quadrature_correlation(t: f64, omega: f64) -> f64 {
        let half_width = 8.0 + t.abs();
        let n = 8192usize; // even
        let h = 2.0 * half_width / n as f64;
        let integrand = |u: f64| -> (f64, f64) {
            let envelope = 2f64.sqrt()
                * (-std::f64::consts::PI * ((u + t / 2.0).powi(2) + (u - t / 2.0).powi(2))).exp();
            let phase = -2.0 * std::f64::consts::PI * omega * u;
            (envelope * phase.cos(), envelope * phase.sin())
        };
        let (mut re, mut im) = (0.0, 0.0);
        for i in 0..=n {
            let u = -half_width + i as f64 * h;
            let weight = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let (r, s) = integrand(u);
            re += weight * r;
            im += weight * s;
        }
        re *= h / 3.0;
        im *= h / 3.0;
        (re * re + im * im).sqrt()
    }

    #[test]
    fn correlation_matches_quadrature_oracle() {
        let mut rng = SplitMix64::new(0x51ab_c0de);
        for _ in 0..50 {
            let t = 2.0 * (2.0 * rng.next_f64() - 1.0);
            let omega = 2.0 * (2.0 * rng.next_f64() - 1.0);
            assert_abs_diff_eq!(
                gaussian_correlation(t, omega),
                quadrature_correlation(t, omega),
                epsilon = 1e-8
            );
        }
    }

    #[test]
    fn hexagonal_generator_matches_frozen_entries() {
        let hex = hexagonal_lattice(1.0).unwrap();
        let g = hex.generator();
        assert_relative_eq!(g[0][0], 1.0745699318235420, max_relative = 1e-14);
        assert_relative_eq!(g[0][1], 0.5372849659117710, max_relative = 1e-14);
        assert_eq!(g[1][0], 0.0);
        assert_relative_eq!(g[1][1], 0.9306048591020994, max_relative = 1e-14);
        assert_abs_diff_eq!(hex.volume(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hexagonal_volume_is_reciprocal_density() {
        let mut rng = SplitMix64::new(0x77aa);
        let mut rhos = vec![0.5, 1.0, 2.0, 4.0];
        for _ in 0..20 {
            rhos.push(0.1 + 10.0 * rng.next_f64());
        }
        for rho in rhos {
            let hex = hexagonal_lattice(rho).unwrap();
            assert_abs_diff_eq!(hex.volume() * rho, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(hex.density(), rho, epsilon = 1e-12 * rho);
        }
    }

    #[test]
    fn hexagonal_first_column_is_shortest() {
        for rho in [0.5, 1.0, 2.0, 4.0] {
            let hex = hexagonal_lattice(rho).unwrap();
            let g = hex.generator();
            let col0_norm = (g[0][0] * g[0][0] + g[1][0] * g[1][0]).sqrt();
            let report = shortest_vector(&hex);
            assert_abs_diff_eq!(report.min_distance, col0_norm, epsilon = 1e-12);
        }
    }

    #[test]
    fn shortest_vector_on_identity_lattice() {
        let lattice = Lattice2D::new([[1.0, 0.0], [0.0, 1.0]]).unwrap();
        let report = shortest_vector(&lattice);
        assert_abs_diff_eq!(report.min_distance, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(report.redundancy, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn shortest_vector_matches_closed_forms() {
        // Hexagonal at density rho: squared distance 2 / (sqrt(3) rho).
        for rho in [0.5, 1.0, 2.0, 4.0] {
            let report = shortest_vector(&hexagonal_lattice(rho).unwrap());
            assert_relative_eq!(
                report.min_distance.powi(2),
                2.0 / (3f64.sqrt() * rho),
                max_relative = 1e-12
            );
        }
        // Square at volume 1/2: squared distance 1/2.
        let report = shortest_vector(&square_lattice(2.0).unwrap());
        assert_relative_eq!(report.min_distance.powi(2), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn shortest_vector_survives_over_search() {
        let mut rng = SplitMix64::new(0xdead_5afe);
        let mut lattices = vec![
            hexagonal_lattice(1.0).unwrap(),
            hexagonal_lattice(0.5).unwrap(),
            square_lattice(3.0).unwrap(),
        ];
        while lattices.len() < 23 {
            let entry = |rng: &mut SplitMix64| 4.0 * (2.0 * rng.next_f64() - 1.0);
            let g = [
                [entry(&mut rng), entry(&mut rng)],
                [entry(&mut rng), entry(&mut rng)],
            ];
            if let Ok(lattice) = Lattice2D::new(g) {
                if lattice.enumeration_bound() <= 40 {
                    lattices.push(lattice);
                }
            }
        }
        for lattice in &lattices {
            let report = shortest_vector(lattice);
            let wide = 2 * lattice.enumeration_bound();
            for z1 in -wide..=wide {
                for z2 in -wide..=wide {
                    if z1 == 0 && z2 == 0 {
                        continue;
                    }
                    let v = lattice.vector([z1, z2]);
                    let norm = (v[0] * v[0] + v[1] * v[1]).sqrt();
                    assert!(
                        norm >= report.min_distance - 1e-12,
                        "enumeration missed a shorter vector at ({z1}, {z2})"
                    );
                }
            }
        }
    }

    #[test]
    fn shortest_vector_is_unimodular_invariant() {
        // Right-multiplying the generator by an integer matrix with
        // determinant +/-1 re-describes the same lattice.
        let unimodulars: [[[f64; 2]; 2]; 3] = [
            [[1.0, 1.0], [0.0, 1.0]],
            [[0.0, -1.0], [1.0, 0.0]],
            [[2.0, 1.0], [1.0, 1.0]],
        ];
        for rho in [0.5, 1.0, 2.0] {
            let hex = hexagonal_lattice(rho).unwrap();
            let base = shortest_vector(&hex);
            let g = hex.generator();
            for u in &unimodulars {
                let prod = [
                    [
                        g[0][0] * u[0][0] + g[0][1] * u[1][0],
                        g[0][0] * u[0][1] + g[0][1] * u[1][1],
                    ],
                    [
                        g[1][0] * u[0][0] + g[1][1] * u[1][0],
                        g[1][0] * u[0][1] + g[1][1] * u[1][1],
                    ],
                ];
                let same = Lattice2D::new(prod).unwrap();
                assert_abs_diff_eq!(same.volume(), hex.volume(), epsilon = 1e-12);
                let report = shortest_vector(&same);
                assert_abs_diff_eq!(report.min_distance, base.min_distance, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn comparison_matches_frozen_values_and_orders_correctly() {
        let expected = [
            (0.5, 0.026579933476419480, 0.043213918263772258),
            (1.0, 0.16303353482158042, 0.20787957635076193),
            (2.0, 0.40377411361004861, 0.45593812776599624),
            (4.0, 0.63543222581959802, 0.67523190665577726),
        ];
        let mut previous_hex = 0.0;
        let mut previous_square = 0.0;
        for (rho, hex_corr, square_corr) in expected {
            let cmp = compare_lattices(rho).unwrap();
            assert_relative_eq!(cmp.hexagonal.max_correlation, hex_corr, max_relative = 1e-12);
            assert_relative_eq!(cmp.square.max_correlation, square_corr, max_relative = 1e-12);
            assert!(cmp.hexagonal.max_correlation < cmp.square.max_correlation);
            // Denser packings (larger rho) correlate more strongly.
            assert!(cmp.hexagonal.max_correlation > previous_hex);
            assert!(cmp.square.max_correlation > previous_square);
            previous_hex = cmp.hexagonal.max_correlation;
            previous_square = cmp.square.max_correlation;
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            hexagonal_lattice(0.0),
            Err(Error::BadArguments { .. })
        ));
        assert!(matches!(
            hexagonal_lattice(-1.0),
            Err(Error::BadArguments { .. })
        ));
        assert!(matches!(
            square_lattice(f64::NAN),
            Err(Error::BadArguments { .. })
        ));
        assert!(matches!(
            Lattice2D::new([[1.0, 2.0], [2.0, 4.0]]),
            Err(Error::SingularLattice { .. })
        ));
        assert!(matches!(
            Lattice2D::new([[1.0, f64::INFINITY], [0.0, 1.0]]),
            Err(Error::NonFinite { .. })
        ));
    }
}
