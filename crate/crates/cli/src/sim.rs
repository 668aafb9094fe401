use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use serde::Serialize;

use isingbench::instances::load_instance;
use isingbench::metrics::{estimate_pgs, Report, ReportBody, SweepRow, DEFAULT_PGS_TOL};
use isingbench::qa_sim::{
    digitized_time, measure, residual_energy, trotter_anneal, DEFAULT_GATE_DEPTH,
    DEFAULT_GATE_TIME_NS, MAX_SIM_SPINS,
};
use isingbench::rng::mix_seed;
use isingbench::solvers::exact_ground;
use isingbench::Schedule;

use crate::{emit, Cli, Format};

#[derive(Args, Debug, Serialize)]
pub struct AnnealSimArgs {
    pub instance: PathBuf,
    /// Total anneal times (dimensionless), comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,2,4,8,16,32")]
    pub times: Vec<f64>,
    /// Trotter slices per unit of anneal time (at least one slice for t > 0).
    #[arg(long, default_value_t = 4.0)]
    pub slices_per_time: f64,
    #[arg(long, default_value_t = 1000)]
    pub shots: usize,
}

pub fn run(cli: &Cli, a: &AnnealSimArgs) -> Result<()> {
    let inst = load_instance(&a.instance)?;
    let p = &inst.problem;
    if p.num_spins() > MAX_SIM_SPINS {
        bail!(
            "{}: {} spins exceeds the simulator limit of {MAX_SIM_SPINS}",
            inst.meta.name,
            p.num_spins()
        );
    }
    if !(a.slices_per_time > 0.0) || a.shots == 0 {
        bail!("--slices-per-time and --shots must be positive");
    }
    let ground = exact_ground(p, MAX_SIM_SPINS)?.ground_energy;
    let mut rows = Vec::with_capacity(a.times.len());
    for (k, &t) in a.times.iter().enumerate() {
        let slices = if t > 0.0 {
            (t * a.slices_per_time).ceil().max(1.0) as usize
        } else {
            0
        };
        let state = trotter_anneal(p, &Schedule::linear(t, slices)?)?;
        let samples = measure(&state, p, a.shots, mix_seed(cli.seed, k as u64))?;
        rows.push(SweepRow {
            total_time: t,
            slices,
            digitized_time_us: digitized_time(slices, DEFAULT_GATE_DEPTH, DEFAULT_GATE_TIME_NS),
            residual_energy: residual_energy(&samples, p, ground)?,
            p_gs: estimate_pgs(&samples, ground, DEFAULT_PGS_TOL)?,
        });
    }
    let mut report = Report::new(
        cli.seed,
        serde_json::to_value(a)?,
        ReportBody::AnnealSim {
            instance: inst.meta.name.clone(),
            ground_energy: ground,
            rows,
        },
    );
    report.notes.push("residual_energy is per spin".into());
    match cli.format {
        Format::Structured => emit(cli, &report.to_json_string()),
        Format::Rows => emit(cli, &report.rows_string()),
    }
}
