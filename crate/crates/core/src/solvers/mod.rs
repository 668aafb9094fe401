//! Classical samplers and exact solvers.

mod anneal;
mod exact;
mod greedy;

pub use anneal::{beta_ladder, random_sample, simulated_anneal, BetaScaling, SamplerParams};
pub use exact::{exact_ground, naive_ground, ExactResult, DEFAULT_EXACT_LIMIT};
pub use greedy::{
    greedy_descent, greedy_postprocess, is_local_min, local_solver, local_solver_samples,
    postprocess_samples, Descent, DEFAULT_POSTPROCESS_SWEEPS, LOCAL_SOLVER_RESTARTS,
};
