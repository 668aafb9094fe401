use std::fmt;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use serde::Serialize;

use isingbench::instances::{energy_to_cut, load_instance, Family, Instance};
use isingbench::metrics::{
    bootstrap_ci, estimate_pgs, histogram, t_sample, tts, BenchmarkRow, HistogramValue, Report,
    ReportBody, DEFAULT_PGS_TOL,
};
use isingbench::rng::mix_seed;
use isingbench::solvers::{exact_ground, postprocess_samples, DEFAULT_EXACT_LIMIT};

use crate::solve::{draw, SamplerArgs};
use crate::{emit, write_file, Cli, Format};

#[derive(Args, Debug, Serialize)]
pub struct BenchArgs {
    #[arg(required = true)]
    pub instances: Vec<PathBuf>,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    /// Fixed time per sample instead of the measured wall time. Makes the
    /// report reproducible byte for byte.
    #[arg(long)]
    pub t_sample_ms: Option<f64>,
    /// Write raw and postprocessed histogram rows to this file.
    #[arg(long)]
    pub histograms: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    pub bootstrap: usize,
    #[arg(long, default_value_t = 0.95)]
    pub level: f64,
    /// Energy tolerance for counting a sample as optimal.
    #[arg(long, default_value_t = DEFAULT_PGS_TOL)]
    pub tol: f64,
    /// Largest instance solved exhaustively for its optimum.
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    pub exact_limit: usize,
}

/// Some instances produced no row.
#[derive(Debug)]
pub struct PartialFailure {
    pub failed: Vec<(String, String)>,
}

impl fmt::Display for PartialFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} instance(s) failed:", self.failed.len())?;
        for (name, why) in &self.failed {
            writeln!(f, "  {name}: {why}")?;
        }
        Ok(())
    }
}

impl std::error::Error for PartialFailure {}

/// Ground energy from exhaustive search, or from the instance metadata for
/// instances beyond the exact limit. Never from the sampler under test.
pub fn optimum(inst: &Instance, limit: usize) -> Result<f64> {
    let n = inst.problem.num_spins();
    if n <= limit {
        let e = exact_ground(&inst.problem, limit)?.ground_energy;
        if let Some(claimed) = inst.opt_energy() {
            if (claimed - e).abs() > 1e-9 * (1.0 + e.abs()) {
                eprintln!(
                    "warning: {}: metadata optimum {claimed} disagrees with exact ground energy {e}; using {e}",
                    inst.meta.name
                );
            }
        }
        return Ok(e);
    }
    match inst.opt_energy() {
        Some(e) => Ok(e),
        None => bail!(
            "{n} spins exceeds the exact-solver limit {limit} and the instance has no opt_value; \
             supply a verified optimum (import --opt) rather than a best-found value"
        ),
    }
}

struct Outcome {
    row: BenchmarkRow,
    histograms: Vec<isingbench::metrics::Histogram>,
}

fn bench_one(inst: &Instance, a: &BenchArgs, seed: u64) -> Result<Outcome> {
    let opt = optimum(inst, a.exact_limit)?;
    let d = draw(inst, &a.sampler, seed)?;
    let post = postprocess_samples(
        &inst.problem,
        &d.raw,
        mix_seed(seed, u64::MAX),
        a.sampler.postprocess_sweeps,
    )?;
    let n_samples = d.raw.total_multiplicity();
    let ts = match a.t_sample_ms {
        Some(t) => t,
        None => t_sample(d.wall_ms.max(1e-6), n_samples)?,
    };
    let p_raw = estimate_pgs(&d.raw, opt, a.tol)?;
    let p_post = estimate_pgs(&post, opt, a.tol)?;
    let (ci_low, ci_high) = bootstrap_ci(
        &d.raw,
        opt,
        a.tol,
        a.bootstrap,
        a.level,
        mix_seed(seed, u64::MAX - 1),
    )?;

    let (value, opt_out) = match (&inst.graph, inst.meta.family) {
        (Some(g), Family::Maxcut) => (
            HistogramValue::Cut {
                total_weight: g.total_weight(),
            },
            energy_to_cut(g, opt),
        ),
        _ => (HistogramValue::Energy, opt),
    };
    let histograms = if a.histograms.is_some() {
        vec![
            histogram(
                format!("{}/raw", inst.meta.name),
                &d.raw,
                value,
                1.0,
                Some(opt_out),
            )?,
            histogram(
                format!("{}/post", inst.meta.name),
                &post,
                value,
                1.0,
                Some(opt_out),
            )?,
        ]
    } else {
        Vec::new()
    };
    Ok(Outcome {
        row: BenchmarkRow {
            instance: inst.meta.name.clone(),
            family: inst.meta.family,
            opt: opt_out,
            p_gs_raw: p_raw,
            p_gs_post: p_post,
            t_sample_ms: ts,
            tts_raw_ms: tts(p_raw, ts)?,
            tts_post_ms: tts(p_post, ts)?,
            n_samples,
            ci_low,
            ci_high,
        },
        histograms,
    })
}

pub fn run(cli: &Cli, a: &BenchArgs) -> Result<()> {
    if a.t_sample_ms.is_some_and(|t| !(t > 0.0)) {
        bail!("--t-sample-ms must be positive");
    }
    let mut rows = Vec::new();
    let mut hists = Vec::new();
    let mut failed = Vec::new();
    // Instances run one after another so measured wall times do not compete.
    for (i, path) in a.instances.iter().enumerate() {
        let result = load_instance(path)
            .map_err(anyhow::Error::from)
            .and_then(|inst| bench_one(&inst, a, mix_seed(cli.seed, i as u64)));
        match result {
            Ok(o) => {
                rows.push(o.row);
                hists.extend(o.histograms);
            }
            Err(e) => failed.push((path.display().to_string(), format!("{e:#}"))),
        }
    }
    let mut report = Report::new(
        cli.seed,
        serde_json::to_value(a)?,
        ReportBody::Bench {
            rows,
            histograms: hists,
        },
    );
    if a.t_sample_ms.is_none() {
        report
            .notes
            .push("t_sample_ms measured from wall time".into());
    }
    match cli.format {
        Format::Structured => emit(cli, &report.to_json_string())?,
        Format::Rows => emit(cli, &report.rows_string())?,
    }
    if let Some(h) = &a.histograms {
        let mut buf = Vec::new();
        report.write_histogram_rows(&mut buf)?;
        write_file(h, &String::from_utf8(buf)?)?;
    }
    if !failed.is_empty() {
        return Err(PartialFailure { failed }.into());
    }
    Ok(())
}
