//! Power, mode and PER-budget split for the two-hop decode-and-forward chain.

use crate::channel::{
    mean_snr, per_rayleigh, required_power, transmit_energy, ChannelParams, LinkPlan, ModeTable,
};
use crate::error::{Error, Hop, Infeasible, Result};

/// Relative interval width at which the split search stops.
pub const SPLIT_REL_TOL: f64 = 1e-8;

/// Relative slack on `p_max` absorbing the inversion tolerance of
/// `required_mean_snr`; powers inside the slack are clamped to `p_max`.
const POWER_SLACK: f64 = 1e-9;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Second-hop budget that keeps the end-to-end PER at `eps_e2e` when the
/// first hop uses `eps1`.
pub fn complementary_budget(eps_e2e: f64, eps1: f64) -> f64 {
    (eps_e2e - eps1) / (1.0 - eps1)
}

pub(crate) struct LinkCtx<'a> {
    pub d: f64,
    pub data_d: f64,
    pub ch: &'a ChannelParams,
    pub tbl: &'a ModeTable,
    pub p_max: f64,
}

impl LinkCtx<'_> {
    /// Lowest averaged PER mode `n` reaches at full power.
    fn best_per(&self, n: usize) -> Result<f64> {
        per_rayleigh(mean_snr(self.p_max, self.d, self.ch)?, &self.tbl.modes()[n])
    }

    /// Plan for mode `n` at budget `eps`, or `None` above the power cap.
    pub fn plan(&self, n: usize, eps: f64) -> Option<LinkPlan> {
        if !(eps > 0.0 && eps < 1.0) {
            return None;
        }
        let m = &self.tbl.modes()[n];
        let p = required_power(self.d, eps, m, self.ch).ok()?;
        if p > self.p_max * (1.0 + POWER_SLACK) {
            return None;
        }
        let p = p.min(self.p_max);
        Some(LinkPlan {
            mode_index: n,
            tx_power: p,
            per_budget: eps,
            energy: transmit_energy(p, self.data_d, m, self.ch),
        })
    }
}

fn pair_energy(
    sr: &LinkCtx<'_>,
    rb: &LinkCtx<'_>,
    modes: (usize, usize),
    eps_e2e: f64,
    eps1: f64,
) -> Option<(f64, LinkPlan, LinkPlan)> {
    let a = sr.plan(modes.0, eps1)?;
    let b = rb.plan(modes.1, complementary_budget(eps_e2e, eps1))?;
    Some((a.energy + b.energy, a, b))
}

/// Minimum-energy allocation over every mode pair and budget split.
///
/// For each `(mode_sr, mode_rb)` the feasible split interval is found from
/// the full-power PER of each link; the total energy is convex in the split
/// on that interval and is minimized by golden-section search. The global
/// minimum wins, ties going to the lower `(mode_sr, mode_rb)` pair.
pub fn relay_allocation(
    d_sr: f64,
    d_rb: f64,
    eps_e2e: f64,
    data_d: f64,
    ch: &ChannelParams,
    tbl: &ModeTable,
    p_max: f64,
) -> Result<(LinkPlan, LinkPlan)> {
    for (name, d) in [("d_sr", d_sr), ("d_rb", d_rb)] {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::domain(format!("{name} must be > 0, got {d}")));
        }
    }
    if !(eps_e2e > 0.0 && eps_e2e < 1.0) {
        return Err(Error::domain(format!("eps_e2e must be in (0,1), got {eps_e2e}")));
    }
    if !(data_d > 0.0) || !(p_max > 0.0) {
        return Err(Error::domain("data volume and p_max must be > 0"));
    }
    let sr = LinkCtx { d: d_sr, data_d, ch, tbl, p_max };
    let rb = LinkCtx { d: d_rb, data_d, ch, tbl, p_max };
    let floor_sr = (0..tbl.len()).map(|n| sr.best_per(n)).collect::<Result<Vec<_>>>()?;
    let floor_rb = (0..tbl.len()).map(|n| rb.best_per(n)).collect::<Result<Vec<_>>>()?;

    let mut best: Option<(f64, LinkPlan, LinkPlan)> = None;
    for n1 in 0..tbl.len() {
        for n2 in 0..tbl.len() {
            let lo = floor_sr[n1];
            let hi = 1.0 - (1.0 - eps_e2e) / (1.0 - floor_rb[n2]);
            if !(lo <= hi) || hi <= 0.0 {
                continue;
            }
            let found = golden_split(&sr, &rb, (n1, n2), eps_e2e, lo, hi);
            if let Some(c) = found {
                if best.as_ref().is_none_or(|b| c.0 < b.0) {
                    best = Some(c);
                }
            }
        }
    }
    match best {
        Some((_, a, b)) => Ok((a, b)),
        None => {
            let worst = |f: &[f64]| f.iter().copied().fold(f64::INFINITY, f64::min);
            let tighter = if worst(&floor_sr) >= worst(&floor_rb) {
                Hop::SenseToRouter
            } else {
                Hop::RouterToBase
            };
            Err(Infeasible::Relay { tighter }.into())
        }
    }
}

fn golden_split(
    sr: &LinkCtx<'_>,
    rb: &LinkCtx<'_>,
    modes: (usize, usize),
    eps_e2e: f64,
    lo: f64,
    hi: f64,
) -> Option<(f64, LinkPlan, LinkPlan)> {
    let eval = |x: f64| pair_energy(sr, rb, modes, eps_e2e, x);
    let cost = |x: f64| eval(x).map_or(f64::INFINITY, |c| c.0);

    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (cost(c), cost(d));
    while (b - a) > SPLIT_REL_TOL * 0.5 * (a.abs() + b.abs()) {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = cost(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = cost(d);
        }
    }
    // The interval ends sit on the power cap of one link and may be optimal.
    [0.5 * (a + b), lo, hi]
        .into_iter()
        .filter_map(eval)
        .fold(None, |acc: Option<(f64, LinkPlan, LinkPlan)>, c| match acc {
            Some(b) if b.0 <= c.0 => Some(b),
            _ => Some(c),
        })
}
