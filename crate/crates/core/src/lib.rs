//! Recovery of the sparsest vector hidden in a subspace.
//!
//! The method solves one `l1` minimization per coordinate,
//!
//! ```text
//! min ||z||_1  subject to  z in range(W),  z(i) = 1,      i = 0..n
//! ```
//!
//! and then picks the sparsest of the `n` optimizers under an
//! interchangeable sparsity measure (see [`recovery::Selector`]).
//! Around that core live the generators for planted random subspaces,
//! deterministic certificates for exact and stable recovery, and seeded
//! Monte-Carlo drivers for phase diagrams, scaling laws and stability
//! sweeps.
//!
//! Linear algebra and the LP solver are generic over [`Scalar`]
//! (`f32` or `f64`). The experiment drivers run in `f64`; the aliases at
//! the crate root name the concrete `f64` types.
//!
//! Indices are zero-based throughout the library.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod lp;
pub mod models;
pub mod numerics;
pub mod randomness;
pub mod recovery;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Dense `f64` vector.
pub type Vector = numerics::DenseVector<f64>;
/// Dense column-major `f64` matrix.
pub type Matrix = numerics::DenseMatrix<f64>;
/// Result of one coordinate-normalized `l1` program in `f64`.
pub type L1Solution = lp::L1ProgramSolution<f64>;
/// One program's output inside a recovery run, in `f64`.
pub type Candidate = recovery::CandidateSolution<f64>;
/// Ground truth of a planted trial in `f64`.
pub type Instance = models::PlantedInstance<f64>;
/// Selected output of one trial and its judgement, in `f64`.
pub type Outcome = recovery::TrialOutcome<f64>;
