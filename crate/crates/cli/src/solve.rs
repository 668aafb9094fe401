use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;

use isingbench::instances::{load_instance, Instance};
use isingbench::reduction::{energy_scale, ChipRange};
use isingbench::solvers::{
    exact_ground, local_solver_samples, postprocess_samples, random_sample, simulated_anneal,
    BetaScaling, SamplerParams, DEFAULT_EXACT_LIMIT,
};
use isingbench::Samples;

use crate::{emit, note, sampling_problem, Cli, Format};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    /// Simulated annealing.
    Sa,
    /// Uniformly random configurations.
    Random,
    /// Best of five greedy descents per sample.
    Local,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SamplerArgs {
    #[arg(long, value_enum, default_value_t = Solver::Sa)]
    pub solver: Solver,
    #[arg(long, default_value_t = 500)]
    pub reads: usize,
    /// Samples per read.
    #[arg(long, default_value_t = 1)]
    pub copies: usize,
    /// Annealing sweeps per read.
    #[arg(long, default_value_t = 64)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 0.1)]
    pub beta_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub beta_max: f64,
    /// Greedy postprocessing sweeps.
    #[arg(long, default_value_t = 5)]
    pub postprocess_sweeps: usize,
    /// Gadgets for cubic instances: baseline, better, or a library file.
    #[arg(long, default_value = "better")]
    pub gadgets: String,
    /// Anneal the problem multiplied by its energy scale on [-2, 1], with
    /// unscaled inverse temperatures.
    #[arg(long)]
    pub chip_scale: bool,
}

/// Raw samples evaluated on the original problem.
pub struct Draw {
    pub raw: Samples,
    pub wall_ms: f64,
}

pub fn draw(inst: &Instance, args: &SamplerArgs, seed: u64) -> Result<Draw> {
    let (mut problem, map) = sampling_problem(inst, &args.gadgets)?;
    let mut params = SamplerParams {
        reads: args.reads,
        sweeps: args.sweeps,
        beta_min: args.beta_min,
        beta_max: args.beta_max,
        seed,
        max_postprocess_sweeps: args.postprocess_sweeps,
        parallel_copies: args.copies,
        ..Default::default()
    };
    if args.chip_scale {
        problem = problem.scaled(energy_scale(&problem, ChipRange::default_chip())?);
        params.beta_scaling = BetaScaling::Absolute;
    }
    params.validate()?;
    let start = Instant::now();
    let samples = match args.solver {
        Solver::Sa => simulated_anneal(&problem, &params)?,
        Solver::Random => random_sample(&problem, params.total_samples(), seed)?,
        Solver::Local => local_solver_samples(&problem, params.total_samples(), seed)?,
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let n = inst.problem.num_spins();
    let mut raw = match map {
        Some(_) => samples.map_configs(&inst.problem, |_, c| c.truncated(n))?,
        None if args.chip_scale => samples.map_configs(&inst.problem, |_, c| c.clone())?,
        None => samples,
    };
    raw.meta.reads = args.reads as u64;
    raw.meta.parallel_copies = args.copies as u64;
    Ok(Draw { raw, wall_ms })
}

#[derive(Args, Debug, Serialize)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    /// Apply greedy postprocessing to every sample.
    #[arg(long)]
    pub postprocess: bool,
    /// Exhaustive ground state instead of sampling (small instances only).
    #[arg(long)]
    pub exact: bool,
}

pub fn run(cli: &Cli, a: &SolveArgs) -> Result<()> {
    let inst = load_instance(&a.instance)?;
    if a.exact {
        let r = exact_ground(&inst.problem, DEFAULT_EXACT_LIMIT)?;
        let doc = serde_json::json!({
            "format_version": isingbench::FORMAT_VERSION,
            "instance": inst.meta.name,
            "ground_energy": r.ground_energy,
            "ground_count": r.ground_count,
            "witness": r.witness,
            "enumerated_states": r.enumerated_states,
        });
        emit(cli, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
        note(
            cli,
            &format!("{}: ground energy {}", inst.meta.name, r.ground_energy),
        );
        return Ok(());
    }
    let d = draw(&inst, &a.sampler, cli.seed)?;
    let mut samples = if a.postprocess {
        postprocess_samples(
            &inst.problem,
            &d.raw,
            cli.seed,
            a.sampler.postprocess_sweeps,
        )?
    } else {
        d.raw
    };
    samples.record_wall_time(d.wall_ms);
    if samples.is_empty() {
        bail!("sampler returned no samples");
    }
    let params = serde_json::to_value(a)?;
    let text = match cli.format {
        Format::Structured => {
            let doc = serde_json::json!({
                "format_version": isingbench::FORMAT_VERSION,
                "seed": cli.seed,
                "params": params,
                "instance": inst.meta.name,
                "samples": samples,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        Format::Rows => {
            let mut s = format!(
                "# format_version={}\n# seed={}\n# params={}\nconfig,energy,multiplicity\n",
                isingbench::FORMAT_VERSION,
                cli.seed,
                params
            );
            for x in samples.aggregated().samples() {
                s.push_str(&format!("{},{},{}\n", x.config, x.energy, x.multiplicity));
            }
            s
        }
    };
    emit(cli, &text)?;
    let best = samples.min_energy().unwrap_or(f64::NAN);
    note(
        cli,
        &format!(
            "{}: {} samples, best energy {best}",
            inst.meta.name,
            samples.total_multiplicity()
        ),
    );
    Ok(())
}
