use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use jcmp_core::channel::{linear_to_db, mean_snr, min_link_energy};
use jcmp_core::cqm::{
    algebraic_connectivity, build_graph, capacity, num_simple_paths, step_weight, StepWeightParams,
};
use jcmp_core::simcore::{
    compare, monte_carlo_validate, persist_run, run, HopKind, PlannerKind, Scenario, MIN_SAMPLES,
};
use jcmp_core::{Error, Point, Result};

#[derive(Parser)]
#[command(name = "jcmp", version, about = "Joint communication and motion planning for a relay robot")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Planner {
    Baseline,
    Single,
    Multi,
}

impl From<Planner> for PlannerKind {
    fn from(p: Planner) -> Self {
        match p {
            Planner::Baseline => PlannerKind::Baseline,
            Planner::Single => PlannerKind::Single,
            Planner::Multi => PlannerKind::Multi,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Scenario TOML; the built-in default scenario when omitted.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Plan one trajectory and print the per-step decisions.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "multi")]
        planner: Planner,
        /// Append a summary record to this JSONL run log.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Run all three planners and print totals with savings over the baseline.
    Compare {
        #[command(flatten)]
        common: Common,
    },
    /// Sample every planned link under Rayleigh fading.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, value_enum, default_value = "multi")]
        planner: Planner,
    },
    /// Connectivity metrics of the initial three-node network.
    Cqm {
        #[command(flatten)]
        common: Common,
    },
}

fn load(path: Option<&Path>) -> Result<Scenario> {
    match path {
        Some(p) => Scenario::load(p).map_err(|e| match e {
            Error::Io(io) => Error::Config(format!("{}: {io}", p.display())),
            other => other,
        }),
        None => Ok(Scenario::default_scenario()),
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Config(format!("{other:?}")),
    }
}

fn emit<T: Serialize>(common: &Common, rows: &[T], json: &impl Serialize) -> Result<()> {
    let mut w = sink(common.out.as_deref())?;
    match common.format {
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            for r in rows {
                c.serialize(r).map_err(csv_err)?;
            }
            c.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, json).map_err(|e| Error::Config(e.to_string()))?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct StepRow {
    step: usize,
    sense_x: f64,
    sense_y: f64,
    router_x: f64,
    router_y: f64,
    mode_sr: String,
    power_sr_W: f64,
    per_sr: f64,
    mode_rb: String,
    power_rb_W: f64,
    per_rb: f64,
    e2e_per: f64,
    motion_J: f64,
    comm_J: f64,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct CompareRow {
    planner: PlannerKind,
    motion_J: f64,
    comm_J: f64,
    total_J: f64,
    savings_pct: f64,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct ValidateRow {
    step: usize,
    hop: HopKind,
    mode: String,
    mean_snr_dB: f64,
    budget: f64,
    closed_form: f64,
    empirical: f64,
    std_err: f64,
    flagged: bool,
}

#[derive(Serialize)]
struct MetricRow {
    metric: &'static str,
    value: f64,
}

/// Largest distance a single link can cover at full power.
fn link_range(s: &Scenario) -> f64 {
    let ok = |d: f64| min_link_energy(d, s.eps_target, s.data_d, &s.channel, &s.modes, s.p_max).is_ok();
    let mut lo = 0.0;
    let mut hi = 1.0;
    while ok(hi) && hi < 1e9 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid > 0.0 && ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Run { common, planner, log } => {
            let s = load(common.scenario.as_deref())?;
            let r = run(&s, planner.into())?;
            if let Some(path) = log {
                persist_run(&r, path)?;
            }
            let label = |i: usize| s.modes.modes()[i].label().to_string();
            let rows: Vec<StepRow> = r
                .steps
                .iter()
                .map(|st| {
                    let d = &st.decision;
                    StepRow {
                        step: st.step,
                        sense_x: st.sense_pos.x,
                        sense_y: st.sense_pos.y,
                        router_x: d.router_pos.x,
                        router_y: d.router_pos.y,
                        mode_sr: label(d.link_sr.mode_index),
                        power_sr_W: d.link_sr.tx_power,
                        per_sr: d.link_sr.per_budget,
                        mode_rb: label(d.link_rb.mode_index),
                        power_rb_W: d.link_rb.tx_power,
                        per_rb: d.link_rb.per_budget,
                        e2e_per: st.e2e_per,
                        motion_J: d.motion_energy,
                        comm_J: d.comm_energy,
                    }
                })
                .collect();
            emit(&common, &rows, &r)
        }
        Command::Compare { common } => {
            let s = load(common.scenario.as_deref())?;
            let c = compare(&s)?;
            let rows: Vec<CompareRow> = c
                .rows
                .iter()
                .map(|r| CompareRow {
                    planner: r.planner,
                    motion_J: r.motion_j,
                    comm_J: r.comm_j,
                    total_J: r.total_j,
                    savings_pct: 100.0 * r.savings,
                })
                .collect();
            emit(&common, &rows, &c.rows)
        }
        Command::Validate { common, seed, samples, planner } => {
            let s = load(common.scenario.as_deref())?;
            if samples < MIN_SAMPLES {
                return Err(Error::Invalid {
                    field: "samples".into(),
                    reason: format!("need at least {MIN_SAMPLES}, got {samples}"),
                });
            }
            let r = run(&s, planner.into())?;
            let v = monte_carlo_validate(&s, &r, samples, seed)?;
            let rows: Vec<ValidateRow> = v
                .links
                .iter()
                .map(|l| ValidateRow {
                    step: l.step,
                    hop: l.hop,
                    mode: s.modes.modes()[l.mode_index].label().to_string(),
                    mean_snr_dB: linear_to_db(l.mean_snr),
                    budget: l.budget,
                    closed_form: l.closed_form,
                    empirical: l.empirical,
                    std_err: l.std_err,
                    flagged: l.flagged,
                })
                .collect();
            if v.any_flagged() {
                eprintln!("warning: empirical PER above budget by more than 3 standard errors on some links");
            }
            emit(&common, &rows, &v)
        }
        Command::Cqm { common } => {
            let s = load(common.scenario.as_deref())?;
            let nodes = [s.sense_traj[0], s.router_start, s.base_pos];
            let range = link_range(&s);
            let wp = StepWeightParams::new(range)?;
            let g = build_graph(&nodes, |_, _, d| step_weight(d, &wp), true)?;
            let b = s.channel.bandwidth_b();
            let hop_capacity = |a: &Point, c: &Point| -> Result<f64> {
                capacity(mean_snr(s.p_max, a.dist(c).max(f64::MIN_POSITIVE), &s.channel)?, b)
            };
            let rows = vec![
                MetricRow { metric: "link_range_m", value: range },
                MetricRow { metric: "algebraic_connectivity", value: algebraic_connectivity(&g)? },
                MetricRow { metric: "paths_sense_to_base", value: num_simple_paths(&g, 0, 2)? as f64 },
                MetricRow { metric: "capacity_sr_bps", value: hop_capacity(&nodes[0], &nodes[1])? },
                MetricRow { metric: "capacity_rb_bps", value: hop_capacity(&nodes[1], &nodes[2])? },
                MetricRow { metric: "capacity_direct_bps", value: hop_capacity(&nodes[0], &nodes[2])? },
            ];
            emit(&common, &rows, &rows)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_infeasible() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
