//! Monte-Carlo check that planned averaged PERs hold under sampled fading.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::channel::{mean_snr, per_instant, per_rayleigh};
use crate::error::{Error, Hop, Result};
use crate::simcore::{Scenario, TrajectoryReport};

pub const MIN_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopKind {
    SenseRouter,
    RouterBase,
}

impl From<HopKind> for Hop {
    fn from(h: HopKind) -> Hop {
        match h {
            HopKind::SenseRouter => Hop::SenseToRouter,
            HopKind::RouterBase => Hop::RouterToBase,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkValidation {
    pub step: usize,
    pub hop: HopKind,
    pub mode_index: usize,
    pub mean_snr: f64,
    pub budget: f64,
    pub closed_form: f64,
    pub empirical: f64,
    /// `sqrt(b (1 - b) / n)` for budget `b`; bounds the standard error of
    /// any [0,1]-valued sample mean with that expectation.
    pub std_err: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationRecord {
    pub planner: crate::simcore::PlannerKind,
    pub seed: u64,
    pub n_samples: usize,
    pub links: Vec<LinkValidation>,
}

impl ValidationRecord {
    pub fn any_flagged(&self) -> bool {
        self.links.iter().any(|l| l.flagged)
    }
}

/// Average of [`per_instant`] over `n` exponential SNR draws with mean
/// `gamma_bar`.
pub fn empirical_per<R: rand::Rng>(
    gamma_bar: f64,
    mode: &crate::channel::TxMode,
    n: usize,
    rng: &mut R,
) -> f64 {
    let mut acc = 0.0;
    for _ in 0..n {
        let g: f64 = Exp1.sample(rng);
        acc += per_instant(gamma_bar * g, mode);
    }
    acc / n as f64
}

/// Samples every planned link of `report` and compares the empirical PER
/// with its budget. Links are visited in step order, sensing hop first,
/// all drawing from one ChaCha8 stream seeded with `seed`.
pub fn monte_carlo_validate(
    s: &Scenario,
    report: &TrajectoryReport,
    n_samples: usize,
    seed: u64,
) -> Result<ValidationRecord> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::invalid(
            "n_samples",
            format!("need at least {MIN_SAMPLES}, got {n_samples}"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut links = Vec::with_capacity(2 * report.steps.len());
    for rec in &report.steps {
        let d = &rec.decision;
        let hops = [
            (HopKind::SenseRouter, &d.link_sr, rec.sense_pos.dist(&d.router_pos)),
            (HopKind::RouterBase, &d.link_rb, d.router_pos.dist(&s.base_pos)),
        ];
        for (hop, link, dist) in hops {
            let mode = s.modes.get(link.mode_index).ok_or_else(|| {
                Error::invalid("report", format!("mode index {} out of range", link.mode_index))
            })?;
            let gamma_bar = mean_snr(link.tx_power, dist, &s.channel)?;
            let closed_form = per_rayleigh(gamma_bar, mode)?;
            let empirical = empirical_per(gamma_bar, mode, n_samples, &mut rng);
            let b = link.per_budget;
            let std_err = (b * (1.0 - b) / n_samples as f64).sqrt();
            links.push(LinkValidation {
                step: rec.step,
                hop,
                mode_index: link.mode_index,
                mean_snr: gamma_bar,
                budget: b,
                closed_form,
                empirical,
                std_err,
                flagged: empirical - b > 3.0 * std_err,
            });
        }
    }
    Ok(ValidationRecord {
        planner: report.planner,
        seed,
        n_samples,
        links,
    })
}
