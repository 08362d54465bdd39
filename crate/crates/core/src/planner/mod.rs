//! Router placement strategies.
//!
//! All three planners search the same grid of candidate router positions
//! under the same one-step reachability ball and differ only in their
//! objective:
//!
//! * [`comm_baseline_step`]: communication energy only, one step at a time;
//! * [`single_stage_step`]: motion plus communication energy, one step;
//! * [`multi_stage_plan`]: motion plus communication energy summed over the
//!   whole horizon, solved by backward induction.

mod grid;
mod relay;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use grid::{Grid, MAX_CELLS};
pub use relay::{complementary_budget, relay_allocation, SPLIT_REL_TOL};

pub use crate::channel::LinkPlan;
use crate::cqm::e2e_per;
use crate::error::{Error, Infeasible, Result};
use crate::geom::Point;
use crate::motion::motion_energy;
use crate::simcore::Scenario;

/// One committed step of the router robot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepDecision {
    pub router_pos: Point,
    pub link_sr: LinkPlan,
    pub link_rb: LinkPlan,
    pub motion_energy: f64,
    pub comm_energy: f64,
}

impl StepDecision {
    pub fn total_energy(&self) -> f64 {
        self.motion_energy + self.comm_energy
    }

    /// End-to-end PER implied by the two link budgets.
    pub fn e2e_per(&self) -> f64 {
        e2e_per(self.link_sr.per_budget, self.link_rb.per_budget).unwrap_or(1.0)
    }
}

/// Relay links serving one router position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommPlan {
    pub link_sr: LinkPlan,
    pub link_rb: LinkPlan,
}

impl CommPlan {
    pub fn energy(&self) -> f64 {
        self.link_sr.energy + self.link_rb.energy
    }
}

/// Communication plan for a router at `router`, or `None` when the PER
/// target cannot be met there (including positions that coincide with an
/// endpoint).
pub fn comm_plan(router: &Point, sense_pos: &Point, base_pos: &Point, s: &Scenario) -> Option<CommPlan> {
    let (d_sr, d_rb) = (sense_pos.dist(router), router.dist(base_pos));
    if !(d_sr > 0.0 && d_rb > 0.0) {
        return None;
    }
    relay_allocation(d_sr, d_rb, s.eps_target, s.data_d, &s.channel, &s.modes, s.p_max)
        .ok()
        .map(|(link_sr, link_rb)| CommPlan { link_sr, link_rb })
}

/// Ordering on candidates: objective, then distance moved, then cell index.
fn candidate_cmp(a: (f64, f64, usize), b: (f64, f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0)
        .then(a.1.total_cmp(&b.1))
        .then(a.2.cmp(&b.2))
}

fn greedy_step(
    x_prev: &Point,
    sense_pos: &Point,
    base_pos: &Point,
    grid: &Grid,
    s: &Scenario,
    with_motion: bool,
) -> Result<StepDecision> {
    let mut best: Option<((f64, f64, usize), StepDecision)> = None;
    for idx in grid.reachable_from(x_prev, s.dt, &s.motion) {
        let pos = grid.point(idx);
        let Some(plan) = comm_plan(&pos, sense_pos, base_pos, s) else {
            continue;
        };
        let moved = x_prev.dist(&pos);
        let motion = motion_energy(moved, &s.motion)?;
        let objective = if with_motion {
            motion + plan.energy()
        } else {
            plan.energy()
        };
        let key = (objective, moved, idx);
        if best.as_ref().is_none_or(|(k, _)| candidate_cmp(key, *k).is_lt()) {
            best = Some((
                key,
                StepDecision {
                    router_pos: pos,
                    link_sr: plan.link_sr,
                    link_rb: plan.link_rb,
                    motion_energy: motion,
                    comm_energy: plan.energy(),
                },
            ));
        }
    }
    best.map(|(_, d)| d)
        .ok_or(Error::Infeasible(Infeasible::NoFeasibleCell { step: 0 }))
}

/// Reachable cell with the lowest communication energy. Motion energy is
/// still reported but does not influence the choice.
///
/// An infeasible step is reported as step 0; callers that know the step
/// index should rewrite it.
pub fn comm_baseline_step(
    x_prev: &Point,
    sense_pos: &Point,
    base_pos: &Point,
    grid: &Grid,
    s: &Scenario,
) -> Result<StepDecision> {
    greedy_step(x_prev, sense_pos, base_pos, grid, s, false)
}

/// Reachable cell with the lowest motion plus communication energy for the
/// current step only.
pub fn single_stage_step(
    x_prev: &Point,
    sense_pos: &Point,
    base_pos: &Point,
    grid: &Grid,
    s: &Scenario,
) -> Result<StepDecision> {
    greedy_step(x_prev, sense_pos, base_pos, grid, s, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValueEntry {
    /// Optimal cost-to-go in joules from this cell.
    pub value: f64,
    /// Optimal next cell; `None` at the terminal stage.
    pub best_next: Option<usize>,
}

/// Cost-to-go tables from backward induction.
///
/// `stages[t]` maps each grid cell the router can occupy after `t + 1`
/// steps (and from which the remaining steps are feasible) to its optimal
/// cost for steps `t + 2 ..= T`. The last stage is terminal and all zero.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ValueTable {
    pub stages: Vec<BTreeMap<usize, ValueEntry>>,
    /// Optimal total cost from the start position and the first cell.
    pub start: Option<ValueEntry>,
}

impl ValueTable {
    pub fn optimal_cost(&self) -> Option<f64> {
        self.start.map(|e| e.value)
    }
}

/// Optimal router trajectory over the whole horizon by backward induction
/// on the grid.
///
/// Only cells reachable from `x0` within `t` steps are considered at stage
/// `t`. Cells where the PER target cannot be met are excluded.
pub fn multi_stage_plan(
    x0: &Point,
    sense_traj: &[Point],
    base_pos: &Point,
    grid: &Grid,
    s: &Scenario,
) -> Result<(Vec<StepDecision>, ValueTable)> {
    let horizon = sense_traj.len();
    if horizon == 0 {
        return Err(Error::domain("horizon must be at least 1"));
    }

    // Forward reachable sets R_1..R_T.
    let mut layers: Vec<Vec<usize>> = Vec::with_capacity(horizon);
    let mut frontier = grid.reachable_from(x0, s.dt, &s.motion);
    layers.push(frontier.clone());
    for _ in 1..horizon {
        let mut seen = vec![false; grid.len()];
        for &c in &frontier {
            for n in grid.reachable_from(&grid.point(c), s.dt, &s.motion) {
                seen[n] = true;
            }
        }
        frontier = (0..grid.len()).filter(|&k| seen[k]).collect();
        layers.push(frontier.clone());
    }

    // Communication plans per stage for every candidate cell.
    let comm: Vec<BTreeMap<usize, CommPlan>> = layers
        .iter()
        .zip(sense_traj)
        .map(|(layer, sense)| {
            layer
                .iter()
                .filter_map(|&c| comm_plan(&grid.point(c), sense, base_pos, s).map(|p| (c, p)))
                .collect()
        })
        .collect();
    if let Some(t) = comm.iter().position(BTreeMap::is_empty) {
        return Err(Infeasible::NoFeasibleCell { step: t }.into());
    }

    let mut stages: Vec<BTreeMap<usize, ValueEntry>> = vec![BTreeMap::new(); horizon];
    stages[horizon - 1] = comm[horizon - 1]
        .keys()
        .map(|&c| (c, ValueEntry { value: 0.0, best_next: None }))
        .collect();

    let best_move = |from: &Point, t: usize, next_values: &BTreeMap<usize, ValueEntry>| -> Result<Option<(f64, usize)>> {
        let mut best: Option<(f64, f64, usize)> = None;
        for n in grid.reachable_from(from, s.dt, &s.motion) {
            let (Some(plan), Some(v)) = (comm[t].get(&n), next_values.get(&n)) else {
                continue;
            };
            let moved = from.dist(&grid.point(n));
            let cost = motion_energy(moved, &s.motion)? + plan.energy() + v.value;
            let key = (cost, moved, n);
            if best.is_none_or(|b| candidate_cmp(key, b).is_lt()) {
                best = Some(key);
            }
        }
        Ok(best.map(|(c, _, n)| (c, n)))
    };

    for t in (0..horizon - 1).rev() {
        let mut stage = BTreeMap::new();
        for &c in comm[t].keys() {
            if let Some((value, next)) = best_move(&grid.point(c), t + 1, &stages[t + 1])? {
                stage.insert(c, ValueEntry { value, best_next: Some(next) });
            }
        }
        if stage.is_empty() {
            return Err(Infeasible::NoFeasibleCell { step: t + 1 }.into());
        }
        stages[t] = stage;
    }

    let Some((start_value, first)) = best_move(x0, 0, &stages[0])? else {
        return Err(Infeasible::NoFeasibleCell { step: 0 }.into());
    };
    let table = ValueTable {
        stages,
        start: Some(ValueEntry {
            value: start_value,
            best_next: Some(first),
        }),
    };

    let mut decisions = Vec::with_capacity(horizon);
    let mut prev = *x0;
    let mut cell = first;
    for t in 0..horizon {
        let pos = grid.point(cell);
        let plan = comm[t][&cell];
        decisions.push(StepDecision {
            router_pos: pos,
            link_sr: plan.link_sr,
            link_rb: plan.link_rb,
            motion_energy: motion_energy(prev.dist(&pos), &s.motion)?,
            comm_energy: plan.energy(),
        });
        prev = pos;
        if let Some(next) = table.stages[t][&cell].best_next {
            cell = next;
        }
    }
    Ok((decisions, table))
}
