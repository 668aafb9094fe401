// Negated float comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use isingbench::instances::{
    gen_heavy_hex, gen_hoso_instance, gen_maxcut_instance, gen_planar_spin_glass,
    instance_to_string, load_instance, planar_sg_metadata, Family, Graph, HeavyHexTopology,
    Instance, InstanceMetadata, Provenance, ReductionRecord, Source, TopologySpec, TripleRule,
};
use isingbench::reduction::{
    better_gadget_set, energy_scale, load_gadget_library, reduce_cubic, verify_gadget, ChipRange,
    GadgetSet,
};
use isingbench::Problem;

mod bench;
mod sim;
mod solve;

#[derive(Parser, Debug)]
#[command(
    name = "isingbench",
    version,
    about = "Benchmark samplers on Ising and cubic spin problems"
)]
struct Cli {
    /// Master seed; all randomness derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Rows)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Format {
    /// Comma-separated rows with a commented preamble.
    Rows,
    /// A single JSON document.
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Convert an edge list or validate an instance file.
    Import(ImportArgs),
    /// Replace cubic terms by gadgets.
    Reduce(ReduceArgs),
    /// Sample an instance and print the samples.
    Solve(solve::SolveArgs),
    /// Measure ground-state probability and time-to-solution.
    Bench(bench::BenchArgs),
    /// Residual energy of simulated digitized annealing versus anneal time.
    AnnealSim(sim::AnnealSimArgs),
    /// Merge structured reports and re-emit them.
    Report(ReportArgs),
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Max-cut on a random regular graph.
    Maxcut {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Higher-order spin glass on a heavy-hex topology.
    Hoso(TopologyArgs),
    /// Planar spin glass with uniform couplings on a heavy-hex topology.
    PlanarSg(TopologyArgs),
}

#[derive(Args, Debug, Serialize)]
struct TopologyArgs {
    /// eagle127, heron133 or RxC.
    #[arg(long, default_value = "eagle127")]
    topology: String,
    /// Edge list to use instead of a named topology.
    #[arg(long)]
    topology_file: Option<PathBuf>,
    /// Keep only these nodes (comma separated), relabeled in the given order.
    #[arg(long, value_delimiter = ',')]
    nodes: Option<Vec<usize>>,
    /// Cubic triple rule: length2_paths or degree2_centers.
    #[arg(long, default_value = "length2_paths")]
    triples: String,
}

#[derive(Args, Debug)]
struct ImportArgs {
    /// Edge list ("u v [w]" per line) or instance file (.json).
    input: PathBuf,
    /// Instance name for edge lists (default: file stem).
    #[arg(long)]
    name: Option<String>,
    /// Number of nodes for edge lists (default: largest index + 1).
    #[arg(long)]
    nodes: Option<usize>,
    /// Known optimum (cut value for max-cut).
    #[arg(long)]
    opt: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct ReduceArgs {
    instance: PathBuf,
    /// baseline, better, or a gadget library file.
    #[arg(long, default_value = "better")]
    gadgets: String,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Structured reports to merge (same kind).
    #[arg(required = true)]
    reports: Vec<PathBuf>,
    /// Also write histogram rows here.
    #[arg(long)]
    histograms: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Gen(g) => gen(cli, g),
        Command::Import(a) => import(cli, a),
        Command::Reduce(a) => reduce(cli, a),
        Command::Solve(a) => solve::run(cli, a),
        Command::Bench(a) => bench::run(cli, a),
        Command::AnnealSim(a) => sim::run(cli, a),
        Command::Report(a) => report(cli, a),
    }
    .map(|()| ExitCode::SUCCESS)
    .or_else(|e| match e.downcast::<bench::PartialFailure>() {
        Ok(p) => {
            eprintln!("{p}");
            Ok(ExitCode::from(3))
        }
        Err(e) => Err(e),
    })
}

/// Writes `text` to `--out`, or stdout.
fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => write_file(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Summary lines go to stdout when the payload went to a file.
fn note(cli: &Cli, msg: &str) {
    if cli.out.is_some() {
        println!("{msg}");
    } else {
        eprintln!("{msg}");
    }
}

fn term_summary(inst: &Instance) -> String {
    let p = &inst.problem;
    format!(
        "{}: {} spins, {} linear, {} quadratic, {} cubic",
        inst.meta.name,
        p.num_spins(),
        p.linear().len(),
        p.quadratic().len(),
        p.cubic().len()
    )
}

/// Topology plus a label for instance names.
fn topology(args: &TopologyArgs) -> Result<(HeavyHexTopology, String)> {
    let topo = match &args.topology_file {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            HeavyHexTopology::imported(Graph::parse_edge_list(&text, None)?)?
        }
        None => gen_heavy_hex(args.topology.parse::<TopologySpec>()?)?,
    };
    let label = topo.spec.to_string();
    Ok(match &args.nodes {
        Some(nodes) => {
            let frag = topo.fragment(nodes)?;
            let label = format!("{label}-frag{}", frag.num_nodes());
            (frag, label)
        }
        None => (topo, label),
    })
}

fn gen(cli: &Cli, g: &GenCommand) -> Result<()> {
    let inst = match g {
        GenCommand::Maxcut { n, d } => {
            let (graph, meta) = gen_maxcut_instance(*n, *d, cli.seed)?;
            Instance::from_graph(graph, meta)
        }
        GenCommand::Hoso(args) => {
            let (topo, label) = topology(args)?;
            let rule: TripleRule = args.triples.parse()?;
            let (problem, mut meta) = gen_hoso_instance(&topo, cli.seed, &rule)?;
            meta.name = format!("hoso-{label}-{}", cli.seed);
            Instance::from_problem(problem, meta)
        }
        GenCommand::PlanarSg(args) => {
            let (topo, label) = topology(args)?;
            let mut meta = planar_sg_metadata(&topo, cli.seed);
            meta.name = format!("planar-sg-{label}-{}", cli.seed);
            Instance::from_problem(gen_planar_spin_glass(&topo, cli.seed), meta)
        }
    };
    emit(cli, &instance_to_string(&inst))?;
    note(cli, &term_summary(&inst));
    Ok(())
}

fn import(cli: &Cli, a: &ImportArgs) -> Result<()> {
    let is_json = a.input.extension().is_some_and(|e| e == "json");
    let mut inst = if is_json {
        load_instance(&a.input)?
    } else {
        let text = fs::read_to_string(&a.input)
            .with_context(|| format!("cannot read {}", a.input.display()))?;
        let graph = Graph::parse_edge_list(&text, a.nodes)
            .map_err(|e| anyhow::anyhow!("{}: {e}", a.input.display()))?;
        let name = a.name.clone().unwrap_or_else(|| {
            a.input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "imported".into())
        });
        let meta = InstanceMetadata::new(
            name,
            Family::Maxcut,
            Provenance {
                generator: "edge_list".into(),
                seed: None,
                triple_rule: None,
                ..Default::default()
            },
        );
        Instance::from_graph(graph, meta)
    };
    inst.meta.source = Source::Imported;
    if a.opt.is_some() {
        inst.meta.opt_value = a.opt;
    }
    emit(cli, &instance_to_string(&inst))?;
    note(cli, &term_summary(&inst));
    Ok(())
}

/// Resolves `baseline`, `better` or a library path; library gadgets must be exact.
fn gadget_set(spec: &str) -> Result<GadgetSet<f64>> {
    let base = GadgetSet::baseline()?;
    match spec {
        "baseline" => Ok(base),
        "better" => Ok(better_gadget_set(&base)?),
        path => {
            let set = load_gadget_library(path)?;
            for g in set.gadgets() {
                let check = verify_gadget(g);
                if !check.exact {
                    bail!(
                        "{path}: gadget for target {} is not exact (fails at A,B,C = {:?})",
                        g.target_coeff,
                        check.witness.unwrap_or_default()
                    );
                }
            }
            Ok(set)
        }
    }
}

fn reduce(cli: &Cli, a: &ReduceArgs) -> Result<()> {
    let inst = load_instance(&a.instance)?;
    let set = gadget_set(&a.gadgets)?;
    let (reduced, map) = reduce_cubic(&inst.problem, &set)?;
    let mut meta = inst.meta.clone();
    meta.name = format!("{}-reduced", meta.name);
    meta.opt_value = inst.opt_energy().map(|e| e + map.offset_shift);
    meta.reduction = Some(ReductionRecord {
        original_num_spins: map.original_num_spins,
        offset_shift: map.offset_shift,
        gadget_set: set.name.clone(),
    });
    let out = Instance::from_problem(reduced, meta);
    emit(cli, &instance_to_string(&out))?;
    let scale = energy_scale(&out.problem, ChipRange::default_chip())?;
    note(
        cli,
        &format!(
            "{}: {} auxiliary spins, energy scale {scale} on [-2, 1]",
            term_summary(&out),
            map.aux.len()
        ),
    );
    Ok(())
}

fn report(cli: &Cli, a: &ReportArgs) -> Result<()> {
    use isingbench::metrics::{Report, ReportBody};
    let mut merged: Option<Report> = None;
    for path in &a.reports {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let r = Report::from_json_str(&text, &path.display().to_string())?;
        merged = Some(match merged {
            None => r,
            Some(mut m) => {
                match (&mut m.body, r.body) {
                    (
                        ReportBody::Bench { rows, histograms },
                        ReportBody::Bench {
                            rows: r2,
                            histograms: h2,
                        },
                    ) => {
                        rows.extend(r2);
                        histograms.extend(h2);
                    }
                    (
                        ReportBody::AnnealSim { rows, .. },
                        ReportBody::AnnealSim { rows: r2, .. },
                    ) => rows.extend(r2),
                    _ => bail!(
                        "{}: cannot merge reports of different kinds",
                        path.display()
                    ),
                }
                if r.seed != m.seed {
                    m.notes.push(format!("merged report from seed {}", r.seed));
                }
                m
            }
        });
    }
    let merged = merged.expect("at least one report");
    match cli.format {
        Format::Structured => emit(cli, &merged.to_json_string())?,
        Format::Rows => emit(cli, &merged.rows_string())?,
    }
    if let Some(h) = &a.histograms {
        let mut buf = Vec::new();
        merged.write_histogram_rows(&mut buf)?;
        write_file(h, &String::from_utf8(buf)?)?;
    }
    Ok(())
}

/// Problem to sample: the instance itself, or its gadget reduction.
fn sampling_problem(
    inst: &Instance,
    gadgets: &str,
) -> Result<(Problem, Option<isingbench::reduction::ReductionMap<f64>>)> {
    if inst.problem.is_quadratic() {
        return Ok((inst.problem.clone(), None));
    }
    let (p, map) = reduce_cubic(&inst.problem, &gadget_set(gadgets)?)?;
    Ok((p, Some(map)))
}
