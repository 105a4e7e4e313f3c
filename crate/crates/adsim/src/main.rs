//! Thin command-line front end: run single engagements, Monte-Carlo
//! batches, and config validation. All heavy lifting lives in the library.

use clap::{Parser, Subcommand};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adsim::experiments::{self, McReport, McSpec, ScenarioConfig, Severity};
use adsim::plot::{self, ScatterClass, Series, PALETTE};
use adsim::sim::{Outcome, SimTrace, Verdict};
use adsim::Error;

#[derive(Parser)]
#[command(
    name = "adsim",
    about = "Planar pursuer/evader/defender engagement simulator",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one engagement and write trace, outcome and plots.
    Run {
        /// Scenario config JSON (alternative to --preset).
        config: Option<PathBuf>,
        /// Named case-study preset.
        #[arg(long)]
        preset: Option<String>,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the integration step, s.
        #[arg(long)]
        dt: Option<f64>,
        /// Override the horizon, s.
        #[arg(long)]
        tmax: Option<f64>,
        /// Trace format.
        #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
        format: String,
    },
    /// Run a Monte-Carlo batch and write report, per-run rows and scatter.
    Mc {
        /// Batch spec JSON (alternative to --preset).
        spec: Option<PathBuf>,
        /// Named study preset (mc1, mc2, mc3).
        #[arg(long)]
        preset: Option<String>,
        /// Worker threads (falls back to AD_SIM_THREADS, then all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Override the batch seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the integration step, s.
        #[arg(long)]
        dt: Option<f64>,
        /// Override the horizon, s.
        #[arg(long)]
        tmax: Option<f64>,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Check a config for errors and guidance-design warnings.
    Validate {
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
    },
}

const EXIT_SIM_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run {
            config,
            preset,
            out,
            dt,
            tmax,
            format,
        } => cmd_run(config, preset, &out, dt, tmax, &format),
        Command::Mc {
            spec,
            preset,
            jobs,
            seed,
            dt,
            tmax,
            out,
        } => cmd_mc(spec, preset, jobs, seed, dt, tmax, &out),
        Command::Validate { config, preset } => cmd_validate(config, preset),
    };
    match code {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<(), (u8, String)>;

fn usage_err<T>(msg: impl Into<String>) -> Result<T, (u8, String)> {
    Err((EXIT_USAGE, msg.into()))
}

fn load_scenario(
    config: Option<PathBuf>,
    preset: Option<String>,
) -> Result<ScenarioConfig, (u8, String)> {
    match (config, preset) {
        (Some(path), None) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| (EXIT_USAGE, format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| (EXIT_USAGE, format!("{}: invalid config: {e}", path.display())))
        }
        (None, Some(name)) => {
            experiments::preset(&name).map_err(|e| (EXIT_USAGE, e.to_string()))
        }
        (None, None) => usage_err("provide a config path or --preset"),
        (Some(_), Some(_)) => usage_err("provide either a config path or --preset, not both"),
    }
}

fn write_meta(dir: &Path) -> std::io::Result<()> {
    // Timestamps live only here so the data artifacts stay byte-identical
    // across reruns.
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    fs::write(
        dir.join("meta.txt"),
        format!("generated_unix_time: {now}\nadsim_version: {}\n", env!("CARGO_PKG_VERSION")),
    )
}

fn describe_outcome(outcome: &Outcome) -> String {
    let mut s = format!("verdict: {:?}", outcome.verdict);
    if let Some(t) = outcome.t_intercept {
        s.push_str(&format!("\nt_intercept: {t:.3} s"));
    }
    if let Some(m) = outcome.achieved_margin {
        s.push_str(&format!("\nachieved_margin: {m:.3} s"));
    }
    s.push_str(&format!(
        "\nmin_r_DP: {:.3} m\nmin_r_EP: {:.3} m",
        outcome.min_r_dp, outcome.min_r_ep
    ));
    s
}

fn render_run_plots(trace: &SimTrace, dir: &Path) -> std::io::Result<()> {
    let rows = &trace.rows;
    let traj = plot::line_chart(
        "Trajectories",
        "x, m",
        "y, m",
        &[
            Series {
                label: "evader".into(),
                points: rows.iter().map(|r| (r.evader.x, r.evader.y)).collect(),
                color: PALETTE[2],
            },
            Series {
                label: "pursuer".into(),
                points: rows.iter().map(|r| (r.pursuer.x, r.pursuer.y)).collect(),
                color: PALETTE[1],
            },
            Series {
                label: "defender".into(),
                points: rows.iter().map(|r| (r.defender.x, r.defender.y)).collect(),
                color: PALETTE[0],
            },
        ],
    );
    fs::write(dir.join("trajectories.svg"), traj)?;

    let tgo = plot::line_chart(
        "Time-to-go",
        "t, s",
        "t_go, s",
        &[
            Series {
                label: "tgo_EP".into(),
                points: rows.iter().map(|r| (r.t, r.manifold.tgo_ep)).collect(),
                color: PALETTE[1],
            },
            Series {
                label: "tgo_DP".into(),
                points: rows.iter().map(|r| (r.t, r.manifold.tgo_dp)).collect(),
                color: PALETTE[0],
            },
        ],
    );
    fs::write(dir.join("time_to_go.svg"), tgo)?;

    let accel = plot::line_chart(
        "Accelerations",
        "t, s",
        "a, m/s^2",
        &[
            Series {
                label: "a_E".into(),
                points: rows.iter().map(|r| (r.t, r.cmd_evader.a_lateral)).collect(),
                color: PALETTE[2],
            },
            Series {
                label: "a_P".into(),
                points: rows.iter().map(|r| (r.t, r.cmd_pursuer.a_lateral)).collect(),
                color: PALETTE[1],
            },
            Series {
                label: "a_D lateral".into(),
                points: rows
                    .iter()
                    .map(|r| (r.t, r.cmd_defender.a_lateral))
                    .collect(),
                color: PALETTE[0],
            },
            Series {
                label: "a_D radial".into(),
                points: rows
                    .iter()
                    .map(|r| (r.t, r.cmd_defender.a_radial))
                    .collect(),
                color: PALETTE[3],
            },
        ],
    );
    fs::write(dir.join("accelerations.svg"), accel)?;

    let errors = plot::line_chart(
        "Defender speed and sliding manifolds",
        "t, s",
        "v_D, m/s | s1, rad/s | s2, s",
        &[
            Series {
                label: "v_D".into(),
                points: rows.iter().map(|r| (r.t, r.defender.v)).collect(),
                color: PALETTE[0],
            },
            Series {
                label: "s1".into(),
                points: rows.iter().map(|r| (r.t, r.manifold.s1)).collect(),
                color: PALETTE[2],
            },
            Series {
                label: "s2".into(),
                points: rows.iter().map(|r| (r.t, r.manifold.s2)).collect(),
                color: PALETTE[1],
            },
        ],
    );
    fs::write(dir.join("errors.svg"), errors)
}

fn cmd_run(
    config: Option<PathBuf>,
    preset: Option<String>,
    out: &Path,
    dt: Option<f64>,
    tmax: Option<f64>,
    format: &str,
) -> CmdResult {
    let mut cfg = load_scenario(config, preset)?;
    if let Some(dt) = dt {
        cfg.sim.dt = dt;
    }
    if let Some(tmax) = tmax {
        cfg.sim.t_max = tmax;
    }
    let findings = cfg.validate();
    for f in &findings {
        eprintln!("{:?}: {}", f.severity, f.message);
    }
    if ScenarioConfig::has_errors(&findings) {
        return usage_err("config has errors");
    }

    let (trace, outcome) = cfg.run().map_err(|e| match e {
        Error::Config(_) => (EXIT_USAGE, e.to_string()),
        other => (EXIT_SIM_FAILURE, other.to_string()),
    })?;

    fs::create_dir_all(out).map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    let io_err = |e: adsim::Error| (EXIT_SIM_FAILURE, e.to_string());
    match format {
        "json" => {
            let file = fs::File::create(out.join("trace.json"))
                .map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
            serde_json::to_writer(file, &trace.rows)
                .map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
        }
        _ => {
            let file = fs::File::create(out.join("trace.csv"))
                .map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
            trace.write_csv(file).map_err(io_err)?;
        }
    }
    let outcome_json = serde_json::to_string_pretty(&outcome)
        .map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    fs::write(out.join("outcome.json"), outcome_json + "\n")
        .map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    render_run_plots(&trace, out).map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    write_meta(out).map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;

    println!("{}", describe_outcome(&outcome));
    println!("outputs written to {}", out.display());
    Ok(())
}

fn render_mc_scatter(report: &McReport, dir: &Path) -> std::io::Result<()> {
    if report.param_names.len() < 2 {
        return Ok(());
    }
    let pick = |want_win: bool| {
        report
            .runs
            .iter()
            .filter(|r| (r.verdict == Verdict::DefenderWins) == want_win)
            .map(|r| (r.sampled[0], r.sampled[1]))
            .collect::<Vec<_>>()
    };
    let svg = plot::scatter_chart(
        "Monte-Carlo outcomes",
        &report.param_names[0],
        &report.param_names[1],
        &[
            ScatterClass {
                label: "defender wins".into(),
                points: pick(true),
                color: PALETTE[0],
            },
            ScatterClass {
                label: "pursuer wins".into(),
                points: pick(false),
                color: PALETTE[1],
            },
        ],
    );
    fs::write(dir.join("scatter.svg"), svg)
}

fn cmd_mc(
    spec_path: Option<PathBuf>,
    preset: Option<String>,
    jobs: Option<usize>,
    seed: Option<u64>,
    dt: Option<f64>,
    tmax: Option<f64>,
    out: &Path,
) -> CmdResult {
    let mut spec: McSpec = match (spec_path, preset) {
        (Some(path), None) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| (EXIT_USAGE, format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| (EXIT_USAGE, format!("{}: invalid spec: {e}", path.display())))?
        }
        (None, Some(name)) => {
            experiments::mc_preset(&name).map_err(|e| (EXIT_USAGE, e.to_string()))?
        }
        (None, None) => return usage_err("provide a spec path or --preset"),
        (Some(_), Some(_)) => {
            return usage_err("provide either a spec path or --preset, not both")
        }
    };
    if let Some(seed) = seed {
        spec.seed = seed;
    }
    if let Some(dt) = dt {
        spec.base.sim.dt = dt;
    }
    if let Some(tmax) = tmax {
        spec.base.sim.t_max = tmax;
    }
    let jobs = jobs.or_else(|| {
        std::env::var("AD_SIM_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });

    let report = experiments::run_batch(&spec, jobs).map_err(|e| match e {
        Error::Config(_) | Error::UnknownPreset(_) => (EXIT_USAGE, e.to_string()),
        other => (EXIT_SIM_FAILURE, other.to_string()),
    })?;

    fs::create_dir_all(out).map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    let report_json = serde_json::to_string_pretty(&report)
        .map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    fs::write(out.join("report.json"), report_json + "\n")
        .map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    let runs_file = fs::File::create(out.join("runs.csv"))
        .map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    report
        .write_runs_csv(runs_file)
        .map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    render_mc_scatter(&report, out).map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;
    write_meta(out).map_err(|e| (EXIT_SIM_FAILURE, e.to_string()))?;

    println!(
        "win rate: {:.4} ({}/{} runs), 95% Wilson interval [{:.4}, {:.4}]",
        report.win_rate, report.wins, report.n_runs, report.wilson_low, report.wilson_high
    );
    println!("outputs written to {}", out.display());
    Ok(())
}

fn cmd_validate(config: Option<PathBuf>, preset: Option<String>) -> CmdResult {
    let cfg = load_scenario(config, preset)?;
    let findings = cfg.validate();
    if findings.is_empty() {
        println!("OK");
        return Ok(());
    }
    for f in &findings {
        let tag = match f.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        println!("{tag}: {}", f.message);
    }
    if ScenarioConfig::has_errors(&findings) {
        return usage_err("config has errors");
    }
    Ok(())
}
