//! Command-line harness around the synthnet library: one subcommand per
//! pipeline stage (profile, generate, measure, sir, compare), each writing
//! its artifacts plus a manifest that makes the run reproducible.
//!
//! Seed policy: every command takes one root `--seed`; a sweep of N runs
//! (`--seeds N`) uses `seed, seed+1, ..., seed+N-1` (wrapping), so sweeps
//! are scriptable without a seed file.

mod compare;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::path::{Path, PathBuf};
use synthnet::generate::generate_with_progress;
use synthnet::{
    Algorithm, DatasetProfile, GenParams, HopSources, InitialInfected, MetricReport, SirParams,
};

#[derive(Parser)]
#[command(
    name = "synthnet",
    version,
    about = "Generate and evaluate synthetic networks matched to a degree sequence and clustering target"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutArg {
    /// Output directory. Defaults to <output root>/<subcommand>, where the
    /// root comes from SYNTHNET_OUT (or ./runs).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutArg {
    fn resolve(&self, leaf: &str) -> PathBuf {
        self.out.clone().unwrap_or_else(|| {
            let root = std::env::var_os("SYNTHNET_OUT").unwrap_or_else(|| "runs".into());
            PathBuf::from(root).join(leaf)
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Measure a dataset and write the profile a generator run needs.
    Profile {
        /// Edge-list file in SNAP text format.
        #[arg(long)]
        input: PathBuf,
        /// Topology name recorded in the profile; defaults to the file stem.
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Generate synthetic graphs from a profile.
    Generate {
        /// Profile JSON produced by `profile`.
        #[arg(long)]
        input: PathBuf,
        /// synth, sage, or siege.
        #[arg(long, value_parser = parse_algorithm)]
        algorithm: Algorithm,
        /// Root seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of runs; run i uses seed+i.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        /// Residual-distribution snapshot interval.
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// Override the profile's edge-bridge count (siege's phase budget).
        #[arg(long)]
        eb_count: Option<u64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compute the full metric report for a graph.
    Measure {
        /// Edge-list file in SNAP text format.
        #[arg(long)]
        input: PathBuf,
        /// Hop-histogram sources: "auto", "all", or a source count.
        #[arg(long, default_value = "auto")]
        sources: String,
        /// Seed for sampled-source selection.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Topology name recorded in the report; defaults to the file stem.
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run a discrete SIR epidemic on a graph.
    Sir {
        /// Edge-list file in SNAP text format.
        #[arg(long)]
        input: PathBuf,
        /// Per-contact, per-step infection probability.
        #[arg(long, default_value_t = 0.3)]
        beta: f64,
        /// Per-step recovery probability.
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        /// Number of uniformly chosen initially infected nodes.
        #[arg(long, default_value_t = 10)]
        sources: usize,
        #[arg(long, default_value_t = 1000)]
        max_steps: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Align one real report with synthetic ones: per-distribution CSVs and
    /// a scalar summary with divergences.
    Compare {
        /// Metric report JSON of the reference topology.
        #[arg(long)]
        real: PathBuf,
        /// Metric report JSONs of the synthetic topologies.
        #[arg(long = "synth", num_args = 1.., required = true)]
        synth: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Re-run recipe written next to every command's outputs.
#[derive(Serialize)]
struct Manifest<C: Serialize> {
    command: &'static str,
    tool: &'static str,
    version: &'static str,
    report_schema_version: u32,
    config: C,
}

fn write_manifest<C: Serialize>(dir: &Path, command: &'static str, config: C) -> Result<()> {
    let manifest = Manifest {
        command,
        tool: "synthnet-cli",
        version: env!("CARGO_PKG_VERSION"),
        report_schema_version: synthnet::metrics::SCHEMA_VERSION,
        config,
    };
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".to_string())
}

fn load_edge_list(path: &Path) -> Result<synthnet::snap::ParsedGraph> {
    let parsed =
        synthnet::load_graph(path).with_context(|| format!("reading {}", path.display()))?;
    if parsed.self_loops > 0 {
        eprintln!(
            "warning: dropped {} self-loop(s) from {}",
            parsed.self_loops,
            path.display()
        );
    }
    if parsed.duplicate_edges > 0 {
        eprintln!(
            "warning: collapsed {} duplicate edge(s) from {}",
            parsed.duplicate_edges,
            path.display()
        );
    }
    Ok(parsed)
}

fn cmd_profile(input: &Path, name: Option<String>, out: &OutArg) -> Result<()> {
    let dir = out.resolve("profile");
    std::fs::create_dir_all(&dir)?;
    let name = name.unwrap_or_else(|| file_stem(input));
    let parsed = load_edge_list(input)?;
    let profile = synthnet::profile_graph(&parsed.graph, &name);
    let path = dir.join(format!("{name}.profile.json"));
    profile.save(&path)?;
    #[derive(Serialize)]
    struct Config {
        input: PathBuf,
        name: String,
        nodes: usize,
        edges: usize,
    }
    write_manifest(
        &dir,
        "profile",
        Config {
            input: input.to_path_buf(),
            name: name.clone(),
            nodes: profile.nodes,
            edges: profile.edges,
        },
    )?;
    eprintln!(
        "profiled {name}: n={} m={} cg={:.5} eb={} -> {}",
        profile.nodes,
        profile.edges,
        profile.cg_real,
        profile.eb_count,
        path.display()
    );
    Ok(())
}

#[derive(Serialize, Clone)]
struct GenerateConfig {
    input: PathBuf,
    profile_name: String,
    algorithm: Algorithm,
    seed: u64,
    seeds: u64,
    step: u64,
    eb_count: u64,
    seed_policy: &'static str,
}

fn cmd_generate(
    input: &Path,
    algorithm: Algorithm,
    seed: u64,
    seeds: u64,
    step: u64,
    eb_override: Option<u64>,
    out: &OutArg,
) -> Result<()> {
    if seeds == 0 {
        bail!("--seeds must be at least 1");
    }
    let dir = out.resolve("generate");
    std::fs::create_dir_all(&dir)?;
    let profile =
        DatasetProfile::load(input).with_context(|| format!("reading {}", input.display()))?;
    let mut params: GenParams = profile.to_gen_params(step);
    if let Some(eb) = eb_override {
        params.eb_count = Some(eb);
    }
    let run_seeds: Vec<u64> = (0..seeds).map(|i| seed.wrapping_add(i)).collect();
    let show_progress = seeds == 1;

    let results: Vec<Result<(u64, PathBuf)>> = run_seeds
        .par_iter()
        .map(|&run_seed| {
            let mut last_reported = 0u64;
            let mut progress = |edges: u64| {
                if show_progress && edges >= last_reported + 1_000_000 {
                    last_reported = edges;
                    eprintln!("  seed {run_seed}: {edges} edges");
                }
            };
            let outcome = generate_with_progress(algorithm, &params, run_seed, &mut progress)?;
            let base = format!("{algorithm}-seed{run_seed}");
            let graph_path = dir.join(format!("{base}.edges.txt"));
            synthnet::save_graph(
                &graph_path,
                &outcome.graph,
                &format!("{} ({algorithm}, seed {run_seed})", profile.name),
                &[format!(
                    "algorithm: {algorithm} seed: {run_seed} step: {step} source-profile: {}",
                    profile.name
                )],
            )?;
            let stats_path = dir.join(format!("{base}.outcome.json"));
            std::fs::write(&stats_path, serde_json::to_string_pretty(&outcome.stats)?)?;
            eprintln!(
                "generated {base}: m={} triangle_edges={} single_edges={} ends={:?}/{:?}",
                outcome.stats.edges,
                outcome.stats.phase_log.triangle_edges,
                outcome.stats.phase_log.single_edges,
                outcome.stats.phase_log.triangle_end,
                outcome.stats.phase_log.single_end,
            );
            Ok((run_seed, graph_path))
        })
        .collect();
    for r in &results {
        if let Err(e) = r {
            bail!("generation failed: {e}");
        }
    }

    write_manifest(
        &dir,
        "generate",
        GenerateConfig {
            input: input.to_path_buf(),
            profile_name: profile.name.clone(),
            algorithm,
            seed,
            seeds,
            step,
            eb_count: params.eb_count.unwrap_or(0),
            seed_policy: "run i of N uses seed + i (wrapping)",
        },
    )?;
    Ok(())
}

fn parse_sources(s: &str, n: usize) -> Result<HopSources> {
    match s {
        "auto" => Ok(HopSources::auto(n)),
        "all" => Ok(HopSources::All),
        other => {
            let count: usize = other
                .parse()
                .with_context(|| format!("--sources must be 'auto', 'all', or a count, got {other:?}"))?;
            Ok(HopSources::Sample(count))
        }
    }
}

fn cmd_measure(
    input: &Path,
    sources: &str,
    seed: u64,
    name: Option<String>,
    out: &OutArg,
) -> Result<()> {
    let dir = out.resolve("measure");
    std::fs::create_dir_all(&dir)?;
    let name = name.unwrap_or_else(|| file_stem(input));
    let parsed = load_edge_list(input)?;
    let hop_sources = parse_sources(sources, parsed.graph.node_count())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = synthnet::metrics::report(&parsed.graph, &name, hop_sources, &mut rng);
    let json_path = dir.join(format!("{name}.report.json"));
    std::fs::write(&json_path, report.to_json_string()?)?;
    report.write_csv_files(&dir)?;
    #[derive(Serialize)]
    struct Config {
        input: PathBuf,
        name: String,
        sources: String,
        seed: u64,
    }
    write_manifest(
        &dir,
        "measure",
        Config {
            input: input.to_path_buf(),
            name: name.clone(),
            sources: sources.to_string(),
            seed,
        },
    )?;
    eprintln!(
        "measured {name}: n={} m={} global_cc={:.5} avg_cc={:.5} bridges={} max_core={}",
        report.nodes,
        report.edges,
        report.global_cc,
        report.avg_cc,
        report.bridge_count,
        report.max_core
    );
    Ok(())
}

fn cmd_sir(
    input: &Path,
    beta: f64,
    gamma: f64,
    sources: usize,
    max_steps: u32,
    seed: u64,
    out: &OutArg,
) -> Result<()> {
    let dir = out.resolve("sir");
    std::fs::create_dir_all(&dir)?;
    let parsed = load_edge_list(input)?;
    let params = SirParams {
        beta,
        gamma,
        initial: InitialInfected::Count(sources),
        max_steps,
    };
    let trace = synthnet::run_sir(&parsed.graph, &params, seed)?;
    let csv_path = dir.join("trace.csv");
    let mut file = std::io::BufWriter::new(std::fs::File::create(&csv_path)?);
    trace.write_csv(&mut file)?;
    std::io::Write::flush(&mut file)?;
    std::fs::write(dir.join("trace.json"), serde_json::to_string_pretty(&trace)?)?;
    #[derive(Serialize)]
    struct Config {
        input: PathBuf,
        beta: f64,
        gamma: f64,
        sources: usize,
        max_steps: u32,
        seed: u64,
    }
    write_manifest(
        &dir,
        "sir",
        Config {
            input: input.to_path_buf(),
            beta,
            gamma,
            sources,
            max_steps,
            seed,
        },
    )?;
    let (peak_t, peak_i) = trace.peak();
    eprintln!(
        "sir: {} steps, peak I={peak_i} at t={peak_t}, extinguished={}",
        trace.series.len() - 1,
        trace.extinguished()
    );
    Ok(())
}

fn cmd_compare(real: &Path, synth: &[PathBuf], out: &OutArg) -> Result<()> {
    let dir = out.resolve("compare");
    std::fs::create_dir_all(&dir)?;
    let load = |p: &Path| -> Result<MetricReport> {
        MetricReport::from_json_str(
            &std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        )
        .with_context(|| format!("parsing {}", p.display()))
    };
    let real_report = load(real)?;
    let mut synth_reports = Vec::new();
    for p in synth {
        synth_reports.push(load(p)?);
    }
    compare::write_comparison(&dir, &real_report, &synth_reports)?;
    #[derive(Serialize)]
    struct Config {
        real: PathBuf,
        synth: Vec<PathBuf>,
    }
    write_manifest(
        &dir,
        "compare",
        Config {
            real: real.to_path_buf(),
            synth: synth.to_vec(),
        },
    )?;
    eprintln!(
        "compared {} against {} synthetic report(s) -> {}",
        real_report.name,
        synth_reports.len(),
        dir.display()
    );
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Profile { input, name, out } => cmd_profile(input, name.clone(), out),
        Command::Generate {
            input,
            algorithm,
            seed,
            seeds,
            step,
            eb_count,
            out,
        } => cmd_generate(input, *algorithm, *seed, *seeds, *step, *eb_count, out),
        Command::Measure {
            input,
            sources,
            seed,
            name,
            out,
        } => cmd_measure(input, sources, *seed, name.clone(), out),
        Command::Sir {
            input,
            beta,
            gamma,
            sources,
            max_steps,
            seed,
            out,
        } => cmd_sir(input, *beta, *gamma, *sources, *max_steps, *seed, out),
        Command::Compare { real, synth, out } => cmd_compare(real, synth, out),
    };
    if let Err(e) = result {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
