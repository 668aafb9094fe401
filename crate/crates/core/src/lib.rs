//! Benchmarking toolkit for Ising and higher-order (cubic) spin problems.
//!
//! The crate covers the whole measurement pipeline:
//!
//! * [`model`]: sparse energy model with linear, quadratic and cubic terms.
//! * [`instances`]: random-regular max-cut, heavy-hex higher-order spin
//!   glasses and planar spin glasses, plus the instance file format.
//! * [`reduction`]: cubic-to-quadratic gadgets, spin-reversal transforms and
//!   coupling compression.
//! * [`solvers`]: random sampling, greedy postprocessing, the five-restart
//!   local solver, simulated annealing and exhaustive ground-state search.
//! * [`qa_sim`]: Trotterized transverse-field annealing on small state vectors.
//! * [`metrics`]: ground-state probability, time-to-solution, histograms and
//!   report emission.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the common `f64` instantiation.

// Negated float comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod instances;
pub mod metrics;
pub mod model;
pub mod qa_sim;
pub mod reduction;
pub mod rng;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};
pub use model::{IsingProblem, ProblemBuilder, Sample, SampleMeta, SampleSet, SpinConfig};
pub use scalar::Scalar;

/// Double-precision problem, the type used by file I/O and the CLI.
pub type Problem = IsingProblem<f64>;
pub type Problem32 = IsingProblem<f32>;
pub type Samples = SampleSet<f64>;
pub type Samples32 = SampleSet<f32>;
pub type Gadget = reduction::GadgetSpec<f64>;
pub type Gadgets = reduction::GadgetSet<f64>;
pub type Gauge = reduction::GaugeTransform<f64>;
pub type State = qa_sim::QuantumState<f64>;
pub type Schedule = qa_sim::AnnealSchedule<f64>;

/// Format version written into every emitted file.
pub const FORMAT_VERSION: u32 = 1;
