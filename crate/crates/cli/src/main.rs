use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use msmw::bounds::{bound_report, BoundReport};
use msmw::report::format_number;
use msmw::runner::{run_and_emit, summary_table, ExperimentResult};
use msmw::scenarios::{self, ExperimentConfig, ScenarioKind};
use msmw::{ArrivalMode, PolicyKind};

/// Link scheduling simulator with per-link service frequency constraints.
#[derive(Parser, Debug)]
#[command(name = "msmw", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a preset scenario or a config file and write a CSV of results.
    Simulate {
        /// Preset name (see `list-scenarios`) or path to a TOML config.
        scenario: String,
        /// Base seed; run k uses seed + k.
        #[arg(long)]
        seed: Option<u64>,
        /// Runs per configuration.
        #[arg(long)]
        runs: Option<u32>,
        /// Slots per run.
        #[arg(long)]
        slots: Option<u64>,
        /// Output CSV. Defaults to `<scenario>.csv` in $MSMW_OUT_DIR (or the
        /// current directory).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one per-slot trace per run next to the CSV.
        #[arg(long)]
        trace: bool,
        /// Override the sweep values, e.g. `--sweep 4,8,16`.
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<u64>>,
        /// Override the compared policies, e.g. `--policies msmw,2-msmw`.
        #[arg(long, value_delimiter = ',')]
        policies: Option<Vec<String>>,
        /// Override the arrival process: `bernoulli` or `deterministic`.
        #[arg(long, value_parser = parse_arrivals)]
        arrivals: Option<ArrivalMode>,
        /// Worker threads (defaults to the number of CPUs).
        #[arg(long)]
        jobs: Option<usize>,
        /// Default output directory.
        #[arg(long, env = "MSMW_OUT_DIR", hide_env_values = true)]
        out_dir: Option<PathBuf>,
    },
    /// Print the analytic bounds for every link set of a scenario.
    Bounds {
        /// Preset name or path to a TOML config.
        config: String,
        /// Free constant `h` of the round-robin backlog bound.
        #[arg(long, default_value_t = 1.0)]
        h: f64,
    },
    /// List the built-in scenarios.
    ListScenarios,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::ListScenarios => {
            for kind in ScenarioKind::PRESETS {
                println!("{:<20} {}", kind.name(), kind.description());
            }
            Ok(())
        }
        Command::Bounds { config, h } => bounds(&config, h),
        Command::Simulate {
            scenario,
            seed,
            runs,
            slots,
            out,
            trace,
            sweep,
            policies,
            arrivals,
            jobs,
            out_dir,
        } => {
            let mut spec = scenarios::resolve(&scenario)?;
            if let Some(s) = seed {
                spec.base_seed = s;
            }
            if let Some(r) = runs {
                spec.num_runs = r;
            }
            if let Some(t) = slots {
                spec.horizon_slots = t;
            }
            if sweep.is_some() {
                spec.sweep = sweep;
            }
            if let Some(p) = policies {
                spec.policies = p
                    .iter()
                    .map(|s| s.parse::<PolicyKind>())
                    .collect::<Result<_, _>>()?;
            }
            spec.trace_enabled |= trace;
            if arrivals.is_some() {
                spec.arrivals = arrivals;
            }

            let out = out.unwrap_or_else(|| {
                let name = match spec.kind {
                    ScenarioKind::Custom => spec
                        .custom
                        .as_ref()
                        .map(|c| c.simulation.name.clone())
                        .unwrap_or_else(|| "custom".into()),
                    kind => kind.name().to_string(),
                };
                out_dir
                    .unwrap_or_else(|| PathBuf::from("."))
                    .join(format!("{name}.csv"))
            });
            let configs = scenarios::expand_scenario(&spec)?;

            let pool = rayon_pool(jobs)?;
            let results = pool.install(|| emit(&configs, &out))?;
            print!("{}", summary_table(&results));
            println!("wrote {} ({} configurations)", out.display(), configs.len());
            if spec.trace_enabled {
                let dir = write_traces(&results, &out)?;
                println!("traces in {}", dir.display());
            }
            Ok(())
        }
    }
}

fn parse_arrivals(s: &str) -> Result<ArrivalMode, String> {
    match s {
        "bernoulli" => Ok(ArrivalMode::Bernoulli),
        "deterministic" => Ok(ArrivalMode::Deterministic),
        other => Err(format!(
            "unknown arrival process `{other}` (expected bernoulli or deterministic)"
        )),
    }
}

fn rayon_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    if jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .context("building worker pool")
}

fn emit(configs: &[ExperimentConfig], out: &Path) -> Result<Vec<ExperimentResult>> {
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    let file = File::create(out).with_context(|| format!("creating {}", out.display()))?;
    let mut w = BufWriter::new(file);
    let results = run_and_emit(configs, &mut w)?;
    w.flush()
        .with_context(|| format!("writing {}", out.display()))?;
    Ok(results)
}

fn write_traces(results: &[ExperimentResult], out: &Path) -> Result<PathBuf> {
    let dir = out.with_extension("traces");
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    for r in results {
        for (trace, run) in r.traces.iter().zip(&r.runs) {
            let name = format!(
                "{}_{}_{}_seed{}.csv",
                r.scenario.replace([':', '/'], "-"),
                r.policy,
                r.sweep,
                run.seed
            );
            let path = dir.join(name);
            let mut w = BufWriter::new(
                File::create(&path).with_context(|| format!("creating {}", path.display()))?,
            );
            trace.write_to(&mut w)?;
            w.flush()?;
        }
    }
    Ok(dir)
}

fn bounds(config: &str, h: f64) -> Result<()> {
    let spec = scenarios::resolve(config)?;
    let configs = scenarios::expand_scenario(&spec)?;
    let mut seen = Vec::new();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for cfg in &configs {
        let links = &cfg.sim.network.links;
        if seen.contains(links) {
            continue;
        }
        seen.push(links.clone());
        let variances = cfg.sim.arrivals.variances(links);
        let report = bound_report(links, &variances, h)?;
        writeln!(out, "[{} sweep={}]", cfg.scenario, cfg.sweep)?;
        write_report(&mut out, &report)?;
        writeln!(out)?;
    }
    if seen.is_empty() {
        bail!("scenario expanded to no link sets");
    }
    Ok(())
}

fn write_report(out: &mut impl Write, r: &BoundReport) -> io::Result<()> {
    let opt = |v: Option<f64>| v.map(format_number).unwrap_or_else(|| "n/a".into());
    writeln!(out, "num_links={}", r.num_links)?;
    writeln!(out, "freq_feasible={}", r.freq_feasible)?;
    writeln!(out, "supportable={}", r.supportable)?;
    writeln!(out, "epsilon={}", format_number(r.epsilon))?;
    writeln!(out, "capacity_ratio_bound={}", opt(r.capacity_ratio_bound))?;
    writeln!(out, "over_share_links={}", r.over_share_links)?;
    writeln!(out, "B1={}", opt(r.b1))?;
    writeln!(out, "h={}", format_number(r.h))?;
    writeln!(out, "B={}", opt(r.b))?;
    writeln!(out, "B3={}", opt(r.b3))?;
    writeln!(out, "mw_queue_bound={}", format_number(r.mw_queue_bound))?;
    writeln!(
        out,
        "T0={}",
        r.t0.map(|t| t.to_string()).unwrap_or_else(|| "n/a".into())
    )
}
