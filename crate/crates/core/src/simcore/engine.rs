use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{mean_snr, min_link_energy, per_rayleigh, transmit_energy};
use crate::cqm::{capacity, e2e_per};
use crate::error::{Error, Infeasible, Result};
use crate::geom::Point;
use crate::motion::{motion_energy, reachable};
use crate::planner::{comm_baseline_step, multi_stage_plan, single_stage_step, StepDecision};
use crate::simcore::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlannerKind {
    Baseline,
    Single,
    Multi,
}

impl PlannerKind {
    pub const ALL: [PlannerKind; 3] = [PlannerKind::Baseline, PlannerKind::Single, PlannerKind::Multi];

    pub fn as_str(&self) -> &'static str {
        match self {
            PlannerKind::Baseline => "baseline",
            PlannerKind::Single => "single",
            PlannerKind::Multi => "multi",
        }
    }
}

impl fmt::Display for PlannerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PlannerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "baseline" => Ok(PlannerKind::Baseline),
            "single" => Ok(PlannerKind::Single),
            "multi" => Ok(PlannerKind::Multi),
            other => Err(Error::invalid(
                "planner",
                format!("expected baseline, single or multi, got `{other}`"),
            )),
        }
    }
}

/// Link-quality snapshot taken while orienting, with every transmitter at
/// full power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkQuality {
    pub snr_sr_db: f64,
    pub snr_rb_db: f64,
    pub snr_direct_db: f64,
    pub capacity_sr_bps: f64,
    pub capacity_rb_bps: f64,
    pub direct_feasible: bool,
    pub candidates: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub sense_pos: Point,
    pub decision: StepDecision,
    pub e2e_per: f64,
    pub quality: LinkQuality,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Totals {
    pub motion_j: f64,
    pub comm_j: f64,
    pub total_j: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryReport {
    pub planner: PlannerKind,
    pub scenario_hash: String,
    pub router_start: Point,
    pub steps: Vec<StepRecord>,
    pub totals: Totals,
    pub savings_vs_baseline: Option<f64>,
}

impl TrajectoryReport {
    /// Records the saving `1 - total / total_baseline`.
    pub fn attach_baseline(&mut self, baseline: &TrajectoryReport) {
        self.savings_vs_baseline = Some(if self.planner == PlannerKind::Baseline {
            0.0
        } else {
            1.0 - self.totals.total_j / baseline.totals.total_j
        });
    }
}

struct Observation {
    step: usize,
    sense_pos: Point,
    router_pos: Point,
}

/// Observe-orient-decide-act loop over one scenario.
struct Engine<'a> {
    s: &'a Scenario,
    kind: PlannerKind,
    router: Point,
    plan: Option<Vec<StepDecision>>,
    records: Vec<StepRecord>,
}

fn at_step(e: Error, step: usize) -> Error {
    match e {
        Error::Infeasible(Infeasible::NoFeasibleCell { .. }) => {
            Infeasible::NoFeasibleCell { step }.into()
        }
        other => other,
    }
}

impl<'a> Engine<'a> {
    fn new(s: &'a Scenario, kind: PlannerKind) -> Self {
        Self {
            s,
            kind,
            router: s.router_start,
            plan: None,
            records: Vec::with_capacity(s.horizon),
        }
    }

    fn observe(&self, step: usize) -> Observation {
        Observation {
            step,
            sense_pos: self.s.sense_traj[step],
            router_pos: self.router,
        }
    }

    fn orient(&self, obs: &Observation) -> Result<LinkQuality> {
        let s = self.s;
        let snr_db = |a: &Point, b: &Point| -> Result<f64> {
            let d = a.dist(b).max(f64::MIN_POSITIVE);
            Ok(10.0 * mean_snr(s.p_max, d, &s.channel)?.log10())
        };
        let snr_sr = snr_db(&obs.sense_pos, &obs.router_pos)?;
        let snr_rb = snr_db(&obs.router_pos, &s.base_pos)?;
        let direct = obs.sense_pos.dist(&s.base_pos);
        let direct_feasible = direct > 0.0
            && min_link_energy(direct, s.eps_target, s.data_d, &s.channel, &s.modes, s.p_max).is_ok();
        let b = s.channel.bandwidth_b();
        Ok(LinkQuality {
            snr_sr_db: snr_sr,
            snr_rb_db: snr_rb,
            snr_direct_db: snr_db(&obs.sense_pos, &s.base_pos)?,
            capacity_sr_bps: capacity(10f64.powf(snr_sr / 10.0), b)?,
            capacity_rb_bps: capacity(10f64.powf(snr_rb / 10.0), b)?,
            direct_feasible,
            candidates: s.grid.reachable_from(&obs.router_pos, s.dt, &s.motion).len(),
        })
    }

    fn decide(&mut self, obs: &Observation) -> Result<StepDecision> {
        let s = self.s;
        let decision = match self.kind {
            PlannerKind::Baseline => {
                comm_baseline_step(&obs.router_pos, &obs.sense_pos, &s.base_pos, &s.grid, s)
            }
            PlannerKind::Single => {
                single_stage_step(&obs.router_pos, &obs.sense_pos, &s.base_pos, &s.grid, s)
            }
            PlannerKind::Multi => {
                if self.plan.is_none() {
                    let (plan, _) =
                        multi_stage_plan(&s.router_start, &s.sense_traj, &s.base_pos, &s.grid, s)?;
                    self.plan = Some(plan);
                }
                Ok(self.plan.as_ref().expect("plan computed")[obs.step])
            }
        };
        decision.map_err(|e| at_step(e, obs.step))
    }

    /// Re-checks the decision against the scenario constraints, then commits.
    fn act(&mut self, obs: &Observation, quality: LinkQuality, d: StepDecision) -> Result<()> {
        let s = self.s;
        let fail = |reason: String| Error::Constraint { step: obs.step, reason };
        if !reachable(&obs.router_pos, &d.router_pos, s.dt, &s.motion) {
            return Err(fail(format!("router cannot reach {} from {}", d.router_pos, obs.router_pos)));
        }
        let hops = [
            (&d.link_sr, obs.sense_pos.dist(&d.router_pos)),
            (&d.link_rb, d.router_pos.dist(&s.base_pos)),
        ];
        for (link, dist) in hops {
            if !(link.tx_power > 0.0 && link.tx_power <= s.p_max) {
                return Err(fail(format!("transmit power {} W outside (0, {}]", link.tx_power, s.p_max)));
            }
            let mode = s
                .modes
                .get(link.mode_index)
                .ok_or_else(|| fail(format!("mode index {} out of range", link.mode_index)))?;
            let achieved = per_rayleigh(mean_snr(link.tx_power, dist, &s.channel)?, mode)?;
            if achieved > link.per_budget * (1.0 + 1e-8) {
                return Err(fail(format!(
                    "averaged PER {achieved} exceeds link budget {}",
                    link.per_budget
                )));
            }
            let energy = transmit_energy(link.tx_power, s.data_d, mode, &s.channel);
            if (energy - link.energy).abs() > 1e-12 * energy.max(1.0) {
                return Err(fail(format!("link energy {} != {energy}", link.energy)));
            }
        }
        let per = e2e_per(d.link_sr.per_budget, d.link_rb.per_budget)?;
        if per > s.eps_target + 1e-12 {
            return Err(fail(format!("end-to-end PER {per} exceeds target {}", s.eps_target)));
        }
        let moved = motion_energy(obs.router_pos.dist(&d.router_pos), &s.motion)?;
        if (moved - d.motion_energy).abs() > 1e-12 * moved.max(1.0) {
            return Err(fail(format!("motion energy {} != {moved}", d.motion_energy)));
        }

        self.router = d.router_pos;
        self.records.push(StepRecord {
            step: obs.step,
            sense_pos: obs.sense_pos,
            decision: d,
            e2e_per: per,
            quality,
        });
        Ok(())
    }

    fn finish(self) -> TrajectoryReport {
        let motion_j: f64 = self.records.iter().map(|r| r.decision.motion_energy).sum();
        let comm_j: f64 = self.records.iter().map(|r| r.decision.comm_energy).sum();
        TrajectoryReport {
            planner: self.kind,
            scenario_hash: self.s.content_hash(),
            router_start: self.s.router_start,
            steps: self.records,
            totals: Totals {
                motion_j,
                comm_j,
                total_j: motion_j + comm_j,
            },
            savings_vs_baseline: if self.kind == PlannerKind::Baseline { Some(0.0) } else { None },
        }
    }
}

/// Runs one planner over the scenario horizon.
pub fn run(s: &Scenario, kind: PlannerKind) -> Result<TrajectoryReport> {
    s.validate()?;
    let mut engine = Engine::new(s, kind);
    for step in 0..s.horizon {
        let obs = engine.observe(step);
        let quality = engine.orient(&obs)?;
        let decision = engine.decide(&obs)?;
        engine.act(&obs, quality, decision)?;
    }
    Ok(engine.finish())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub planner: PlannerKind,
    pub motion_j: f64,
    pub comm_j: f64,
    pub total_j: f64,
    pub savings: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub reports: Vec<TrajectoryReport>,
}

impl Comparison {
    pub fn row(&self, kind: PlannerKind) -> &ComparisonRow {
        self.rows.iter().find(|r| r.planner == kind).expect("all planners present")
    }

    pub fn report(&self, kind: PlannerKind) -> &TrajectoryReport {
        self.reports.iter().find(|r| r.planner == kind).expect("all planners present")
    }
}

/// Runs all three planners and reports savings relative to the baseline.
pub fn compare(s: &Scenario) -> Result<Comparison> {
    let baseline = run(s, PlannerKind::Baseline)?;
    let mut reports = vec![baseline.clone()];
    for kind in [PlannerKind::Single, PlannerKind::Multi] {
        let mut r = run(s, kind)?;
        r.attach_baseline(&baseline);
        reports.push(r);
    }
    let rows = reports
        .iter()
        .map(|r| ComparisonRow {
            planner: r.planner,
            motion_j: r.totals.motion_j,
            comm_j: r.totals.comm_j,
            total_j: r.totals.total_j,
            savings: r.savings_vs_baseline.unwrap_or(0.0),
        })
        .collect();
    Ok(Comparison { rows, reports })
}
