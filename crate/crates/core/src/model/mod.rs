//! Energy model: problems, spin configurations and sample collections.

mod config;
mod problem;
mod samples;

pub use config::SpinConfig;
pub use problem::{IsingProblem, ProblemBuilder};
pub use samples::{Sample, SampleMeta, SampleSet};
