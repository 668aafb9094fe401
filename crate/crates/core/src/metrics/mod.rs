//! Success probability, time-to-solution and report output.

mod histogram;
mod report;
mod stats;

pub use histogram::{histogram, Histogram, HistogramValue};
pub use report::{
    BenchmarkRow, Report, ReportBody, SweepRow, BENCH_HEADER, HISTOGRAM_HEADER, SWEEP_HEADER,
};
pub use stats::{
    bootstrap_ci, count_at_optimum, estimate_pgs, proportion_z, t_sample, tts, DEFAULT_PGS_TOL,
    TARGET_CONFIDENCE, Z_95_ONE_SIDED,
};
