//! Design and analysis of finite unit-norm frames.
//!
//! The crate covers the pipeline from construction to channel simulation:
//!
//! * [`linalg`] — dense complex matrices and a Jacobi eigenkernel;
//! * [`frame`] — frames, their operators, and quality measures (frame
//!   bounds, equiangularity, the Welch bound);
//! * [`constructions`] — analytic designs: simplex, conference-matrix,
//!   cubic-phase, harmonic and difference-set frames, plus seeded random
//!   (tight) frames;
//! * [`canonical`] — canonical tightening and its correlation penalty;
//! * [`optimizer`] — numerical minimization of the worst-case correlation;
//! * [`gabor`] — Gaussian time–frequency lattices and the hexagonal/square
//!   comparison;
//! * [`erasure`] — erasure-channel simulation: receivers, error bounds,
//!   exhaustive condition-number sweeps;
//! * [`frm`] — a plain-text interchange format for frames;
//! * [`rng`] — a tiny deterministic PRNG so every randomized routine is
//!   reproducible from a seed.
//!
//! Shared types are re-exported at the crate root.

pub mod canonical;
pub mod constructions;
pub mod erasure;
pub mod error;
pub mod frame;
pub mod frm;
pub mod gabor;
pub mod linalg;
pub mod optimizer;
pub mod rng;

pub use canonical::{TightenReport, Tightened};
pub use erasure::{BoundReport, ChannelConfig, ErasurePattern, ErasureReport};
pub use error::{Error, Result};
pub use frame::{etf_feasible, welch_bound, Field, Frame, FrameMetrics};
pub use gabor::{Lattice2D, LatticeComparison, LatticeReport};
pub use linalg::{inner_product, ComplexMatrix, HermitianEigen};
pub use num_complex::Complex64;
pub use optimizer::{OptimizerConfig, OptimizerResult};
