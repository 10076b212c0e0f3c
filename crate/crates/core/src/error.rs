//! Error type shared by every module in the crate.
//!
//! Variants are grouped by flavor: *numerical* failures (an iteration did not
//! converge, a matrix turned out rank deficient) and *validation* failures
//! (inputs that violate a documented precondition, malformed frame files).
//! The CLI maps the two flavors to distinct process exit codes, so the
//! distinction is part of the public contract; see [`Error::is_numerical`].

/// Everything that can go wrong in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A square matrix was required.
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare {
        /// Row count of the offending matrix.
        rows: usize,
        /// Column count of the offending matrix.
        cols: usize,
    },

    /// A Hermitian matrix was required.
    #[error("matrix is not Hermitian: max |A - A*| entry is {deviation:.3e} (allowed {allowed:.3e})")]
    NotHermitian {
        /// Largest entrywise deviation between the matrix and its adjoint.
        deviation: f64,
        /// Threshold the deviation was compared against.
        allowed: f64,
    },

    /// The Jacobi eigensolver hit its sweep cap before the off-diagonal mass
    /// fell below the convergence threshold.
    #[error("eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    EigDidNotConverge {
        /// Number of full sweeps performed.
        sweeps: usize,
        /// Remaining off-diagonal Frobenius norm.
        off_norm: f64,
    },

    /// Operand shapes are incompatible for the requested operation.
    #[error("dimension mismatch: {context}")]
    DimensionMismatch {
        /// Human-readable description of the expected vs. actual shapes.
        context: String,
    },

    /// A full-rank matrix was required (condition number, least squares).
    #[error("matrix is rank deficient: smallest singular value {sigma_min:.3e} vs largest {sigma_max:.3e}")]
    RankDeficient {
        /// Smallest singular value.
        sigma_min: f64,
        /// Largest singular value.
        sigma_max: f64,
    },

    /// An inverse square root was requested for a matrix that is not safely
    /// positive definite.
    #[error("matrix is not positive definite: eigenvalue {eigenvalue:.3e} too small or negative")]
    NotPositiveDefinite {
        /// Offending eigenvalue.
        eigenvalue: f64,
    },

    /// Frame columns must be unit vectors.
    #[error("column {index} has norm {norm:.17e}, expected 1 within {allowed:.1e}")]
    NonUnitColumn {
        /// Index of the offending column.
        index: usize,
        /// Its Euclidean norm.
        norm: f64,
        /// Allowed deviation from 1.
        allowed: f64,
    },

    /// A frame tagged real contains a nonzero imaginary part.
    #[error("column {index} has a nonzero imaginary part but the frame is tagged real")]
    RealFieldViolation {
        /// Index of the offending column.
        index: usize,
    },

    /// NaN or infinity crept into matrix or frame data.
    #[error("non-finite entry encountered ({context})")]
    NonFinite {
        /// Where the entry was found.
        context: String,
    },

    /// Frame vectors must span the ambient space.
    #[error("{count} vectors do not span dimension {dim}: smallest frame-operator eigenvalue {eigenvalue:.3e}")]
    DoesNotSpan {
        /// Number of vectors.
        count: usize,
        /// Ambient dimension.
        dim: usize,
        /// Smallest eigenvalue of the frame operator.
        eigenvalue: f64,
    },

    /// A frame needs at least as many vectors as dimensions.
    #[error("a frame in dimension {dim} needs at least {dim} vectors, got {count}")]
    TooFewVectors {
        /// Ambient dimension.
        dim: usize,
        /// Number of vectors supplied.
        count: usize,
    },

    /// No conference matrix of the requested order can be built by the
    /// implemented constructions.
    #[error("cannot build a {kind} conference matrix of order {order}: {reason}")]
    BadConferenceOrder {
        /// "symmetric" or "skew-symmetric".
        kind: &'static str,
        /// Requested order.
        order: usize,
        /// Why the order is not admissible, with nearby valid orders.
        reason: String,
    },

    /// A candidate conference matrix failed the defining identity.
    #[error("conference matrix check failed for order {order}: {reason}")]
    NotConference {
        /// Order of the candidate.
        order: usize,
        /// Which part of the definition failed.
        reason: String,
    },

    /// A Gram matrix handed to the spectral factorization does not have the
    /// two-level spectrum of a tight frame Gram.
    #[error("Gram matrix spectrum is not ({expected:.6} x{dim}, 0 x{rest}): {detail}")]
    BadGramSpectrum {
        /// Expected nonzero eigenvalue.
        expected: f64,
        /// Expected multiplicity of the nonzero eigenvalue.
        dim: usize,
        /// Expected multiplicity of zero.
        rest: usize,
        /// What was found instead.
        detail: String,
    },

    /// Invalid row selection for a harmonic frame.
    #[error("invalid harmonic frame rows: {reason}")]
    BadHarmonicRows {
        /// Which constraint the row set violates.
        reason: String,
    },

    /// The cubic-phase Gabor construction needs a prime modulus >= 5.
    #[error("cubic-phase Gabor frames need a prime dimension >= 5, got {dim}")]
    BadCubicPhaseOrder {
        /// Requested dimension.
        dim: usize,
    },

    /// The supplied residues do not form a difference set.
    #[error("{{{set}}} mod {modulus} is not a difference set: {reason}")]
    NotDifferenceSet {
        /// Comma-separated residues.
        set: String,
        /// Modulus of the cyclic group.
        modulus: usize,
        /// Which part of the definition failed.
        reason: String,
    },

    /// Alternating projections failed to reach a uniform tight frame.
    #[error(
        "alternating projections did not converge in {iterations} iterations \
         (tightness residual {tightness:.3e}, uniformity residual {uniformity:.3e}); \
         retry with a different seed"
    )]
    ProjectionsDidNotConverge {
        /// Iterations performed.
        iterations: usize,
        /// Final tightness residual.
        tightness: f64,
        /// Final uniformity residual.
        uniformity: f64,
    },

    /// An erasure pattern referenced a coefficient index that does not exist.
    #[error("erased index {index} out of range for {count} coefficients")]
    BadErasureIndex {
        /// Offending index.
        index: usize,
        /// Number of coefficients.
        count: usize,
    },

    /// A lattice generator matrix must be invertible.
    #[error("lattice generator is singular (determinant {det:.3e})")]
    SingularLattice {
        /// Determinant of the generator.
        det: f64,
    },

    /// Invalid arguments to a closed-form bound.
    #[error("invalid arguments: {context}")]
    BadArguments {
        /// What was wrong.
        context: String,
    },

    /// A frame file could not be parsed.
    #[error("frame file parse error at line {line}: {message}")]
    Parse {
        /// 1-based line number.
        line: usize,
        /// What went wrong on that line.
        message: String,
    },

    /// Wrapped I/O error from reading or writing frame files.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// `true` for failures of a numerical process (non-convergence, rank
    /// deficiency), `false` for input validation failures.
    ///
    /// The CLI exits with code 2 for numerical failures and 3 for validation
    /// failures.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigDidNotConverge { .. }
                | Error::RankDeficient { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::DoesNotSpan { .. }
                | Error::ProjectionsDidNotConverge { .. }
        )
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
