//! Radio link model: power-law pathloss, thermal noise, the AMC mode ladder
//! and its packet-error-rate approximation, both instantaneous and averaged
//! over quasi-static Rayleigh fading.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Infeasible, Result};

pub fn dbm_to_watt(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watt_to_dbm(w: f64) -> f64 {
    10.0 * w.log10() + 30.0
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

/// Propagation and noise parameters of the radio environment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelParams {
    ref_gain_k0: f64,
    ref_dist_d0: f64,
    pathloss_exp_beta: f64,
    noise_psd_n0: f64,
    bandwidth_b: f64,
}

impl ChannelParams {
    /// `noise_psd_n0` is in W/Hz here; see [`ChannelParams::with_noise_dbm_per_hz`].
    pub fn new(
        ref_gain_k0: f64,
        ref_dist_d0: f64,
        pathloss_exp_beta: f64,
        noise_psd_n0: f64,
        bandwidth_b: f64,
    ) -> Result<Self> {
        let positive = [
            ("ref_gain_K0", ref_gain_k0),
            ("ref_dist_d0", ref_dist_d0),
            ("pathloss_exp_beta", pathloss_exp_beta),
            ("noise_psd_N0", noise_psd_n0),
            ("bandwidth_B", bandwidth_b),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, format!("must be finite and > 0, got {v}")));
            }
        }
        if pathloss_exp_beta < 2.0 {
            return Err(Error::invalid(
                "pathloss_exp_beta",
                format!("must be >= 2, got {pathloss_exp_beta}"),
            ));
        }
        if !(noise_psd_n0 * bandwidth_b > 0.0) {
            return Err(Error::invalid("noise_psd_N0", "noise power underflows to zero"));
        }
        Ok(Self {
            ref_gain_k0,
            ref_dist_d0,
            pathloss_exp_beta,
            noise_psd_n0,
            bandwidth_b,
        })
    }

    pub fn with_noise_dbm_per_hz(
        ref_gain_k0: f64,
        ref_dist_d0: f64,
        pathloss_exp_beta: f64,
        noise_psd_dbm_hz: f64,
        bandwidth_b: f64,
    ) -> Result<Self> {
        Self::new(
            ref_gain_k0,
            ref_dist_d0,
            pathloss_exp_beta,
            dbm_to_watt(noise_psd_dbm_hz),
            bandwidth_b,
        )
    }

    pub fn ref_gain_k0(&self) -> f64 {
        self.ref_gain_k0
    }

    pub fn ref_dist_d0(&self) -> f64 {
        self.ref_dist_d0
    }

    pub fn pathloss_exp_beta(&self) -> f64 {
        self.pathloss_exp_beta
    }

    /// Noise power spectral density in W/Hz.
    pub fn noise_psd_n0(&self) -> f64 {
        self.noise_psd_n0
    }

    pub fn bandwidth_b(&self) -> f64 {
        self.bandwidth_b
    }
}

/// Linear power gain `K0 * (d / d0)^-beta`.
pub fn path_gain(d: f64, ch: &ChannelParams) -> Result<f64> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::domain(format!("distance must be > 0, got {d}")));
    }
    Ok(ch.ref_gain_k0 * (d / ch.ref_dist_d0).powf(-ch.pathloss_exp_beta))
}

/// Noise power `N0 * B` in watts.
pub fn noise_power(ch: &ChannelParams) -> f64 {
    ch.noise_psd_n0 * ch.bandwidth_b
}

/// Fading-averaged received SNR for transmit power `p_tx` over distance `d`.
pub fn mean_snr(p_tx: f64, d: f64, ch: &ChannelParams) -> Result<f64> {
    if !(p_tx >= 0.0) {
        return Err(Error::domain(format!("transmit power must be >= 0, got {p_tx}")));
    }
    Ok(p_tx * path_gain(d, ch)? / noise_power(ch))
}

/// Continuity tolerance for `a * exp(-g * gamma_p) == 1`.
pub const CONTINUITY_TOL: f64 = 1e-6;

/// One adaptive modulation and coding mode.
///
/// The PER model is `1` below the threshold `gamma_p` and `a * exp(-g * gamma)`
/// above it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TxMode {
    label: String,
    rate_rn: f64,
    coef_a: f64,
    coef_g: f64,
    thresh_gamma_p: f64,
}

impl TxMode {
    /// Builds a mode with the threshold set to `ln(a) / g`, the point where
    /// the exponential branch reaches one.
    pub fn new(label: impl Into<String>, rate_rn: f64, coef_a: f64, coef_g: f64) -> Result<Self> {
        let gp = coef_a.ln() / coef_g;
        Self::with_threshold(label, rate_rn, coef_a, coef_g, gp)
    }

    pub fn with_threshold(
        label: impl Into<String>,
        rate_rn: f64,
        coef_a: f64,
        coef_g: f64,
        thresh_gamma_p: f64,
    ) -> Result<Self> {
        if !(rate_rn.is_finite() && rate_rn > 0.0) {
            return Err(Error::invalid("rate", format!("must be > 0, got {rate_rn}")));
        }
        if !(coef_a.is_finite() && coef_a >= 1.0) {
            return Err(Error::invalid("a", format!("must be >= 1, got {coef_a}")));
        }
        if !(coef_g.is_finite() && coef_g > 0.0) {
            return Err(Error::invalid("g", format!("must be > 0, got {coef_g}")));
        }
        if !(thresh_gamma_p.is_finite() && thresh_gamma_p >= 0.0) {
            return Err(Error::invalid(
                "gamma_p",
                format!("must be >= 0, got {thresh_gamma_p}"),
            ));
        }
        let junction = coef_a * (-coef_g * thresh_gamma_p).exp();
        if (junction - 1.0).abs() > CONTINUITY_TOL {
            return Err(Error::invalid(
                "gamma_p",
                format!("PER model discontinuous at threshold: a*exp(-g*gamma_p) = {junction}"),
            ));
        }
        Ok(Self {
            label: label.into(),
            rate_rn,
            coef_a,
            coef_g,
            thresh_gamma_p,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Information bits per symbol.
    pub fn rate(&self) -> f64 {
        self.rate_rn
    }

    pub fn coef_a(&self) -> f64 {
        self.coef_a
    }

    pub fn coef_g(&self) -> f64 {
        self.coef_g
    }

    /// Threshold SNR, linear.
    pub fn gamma_p(&self) -> f64 {
        self.thresh_gamma_p
    }
}

/// Mode file record; thresholds are given in dB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeRecord {
    pub label: String,
    pub rate: f64,
    pub a: f64,
    pub g: f64,
    #[serde(rename = "gamma_p_dB")]
    pub gamma_p_db: f64,
}

/// Largest accepted gap between a record's stated threshold and `ln(a)/g`.
pub const THRESHOLD_MISMATCH_DB: f64 = 0.05;

impl ModeRecord {
    /// Converts to a [`TxMode`], renormalizing the threshold to `ln(a)/g` so
    /// the PER model is continuous. Records whose stated threshold is far from
    /// that value are rejected as likely typos.
    pub fn to_mode(&self) -> Result<TxMode> {
        let mode = TxMode::new(self.label.clone(), self.rate, self.a, self.g)?;
        if !self.gamma_p_db.is_finite() {
            return Err(Error::invalid("gamma_p_dB", "must be finite"));
        }
        if mode.gamma_p() > 0.0 {
            let stated_gap = (linear_to_db(mode.gamma_p()) - self.gamma_p_db).abs();
            if stated_gap > THRESHOLD_MISMATCH_DB {
                return Err(Error::invalid(
                    "gamma_p_dB",
                    format!(
                        "mode `{}`: stated {} dB but ln(a)/g gives {:.4} dB",
                        self.label,
                        self.gamma_p_db,
                        linear_to_db(mode.gamma_p())
                    ),
                ));
            }
        }
        Ok(mode)
    }

    pub fn from_mode(mode: &TxMode) -> Self {
        Self {
            label: mode.label.clone(),
            rate: mode.rate_rn,
            a: mode.coef_a,
            g: mode.coef_g,
            gamma_p_db: linear_to_db(mode.thresh_gamma_p),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeFile {
    mode: Vec<ModeRecord>,
}

/// Ordered AMC ladder, rates strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeTable {
    modes: Vec<TxMode>,
}

impl ModeTable {
    pub fn new(modes: Vec<TxMode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::invalid("modes", "mode table is empty"));
        }
        for w in modes.windows(2) {
            if !(w[1].rate_rn > w[0].rate_rn) {
                return Err(Error::invalid(
                    "modes",
                    format!(
                        "rates must be strictly increasing: `{}` ({}) then `{}` ({})",
                        w[0].label, w[0].rate_rn, w[1].label, w[1].rate_rn
                    ),
                ));
            }
        }
        Ok(Self { modes })
    }

    pub fn from_records(records: &[ModeRecord]) -> Result<Self> {
        let modes = records
            .iter()
            .map(ModeRecord::to_mode)
            .collect::<Result<Vec<_>>>()?;
        Self::new(modes)
    }

    /// Parses a mode table file: a sequence of `[[mode]]` tables with keys
    /// `label`, `rate`, `a`, `g`, `gamma_p_dB`.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ModeFile =
            toml::from_str(text).map_err(|e| Error::Config(format!("mode table: {e}")))?;
        Self::from_records(&file.mode)
    }

    pub fn to_records(&self) -> Vec<ModeRecord> {
        self.modes.iter().map(ModeRecord::from_mode).collect()
    }

    pub fn modes(&self) -> &[TxMode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn get(&self, idx: usize) -> Option<&TxMode> {
        self.modes.get(idx)
    }
}

/// Shipped six-mode table (convolutionally coded BPSK through 64-QAM).
pub const DEFAULT_MODE_TABLE: &str = include_str!("../scenarios/modes.toml");

pub fn default_mode_table() -> ModeTable {
    ModeTable::from_toml_str(DEFAULT_MODE_TABLE).expect("shipped mode table is valid")
}

/// Instantaneous PER at linear SNR `gamma`.
pub fn per_instant(gamma: f64, m: &TxMode) -> f64 {
    if gamma < m.thresh_gamma_p {
        1.0
    } else {
        (m.coef_a * (-m.coef_g * gamma).exp()).min(1.0)
    }
}

/// PER averaged over an exponentially distributed SNR with mean `gamma_bar`.
pub fn per_rayleigh(gamma_bar: f64, m: &TxMode) -> Result<f64> {
    if !(gamma_bar > 0.0) {
        return Err(Error::domain(format!("mean SNR must be > 0, got {gamma_bar}")));
    }
    Ok(per_rayleigh_unchecked(gamma_bar, m))
}

fn per_rayleigh_unchecked(x: f64, m: &TxMode) -> f64 {
    let gp = m.thresh_gamma_p;
    let gx1 = 1.0 + m.coef_g * x;
    let below = -(-gp / x).exp_m1();
    let above = m.coef_a / gx1 * (-gp * gx1 / x).exp();
    (below + above).clamp(0.0, 1.0)
}

/// d(PER)/d(gamma_bar) of the averaged closed form.
fn per_rayleigh_slope(x: f64, m: &TxMode) -> f64 {
    let gp = m.thresh_gamma_p;
    let g = m.coef_g;
    let gx1 = 1.0 + g * x;
    let e = (-gp / x).exp();
    let tail = m.coef_a * (-gp * g).exp();
    e * (-gp / (x * x) + tail * (gp / (x * x * gx1) - g / (gx1 * gx1)))
}

/// Relative PER tolerance of [`required_mean_snr`].
pub const REQUIRED_SNR_REL_TOL: f64 = 1e-10;

/// Inverts [`per_rayleigh`]: the mean SNR at which the averaged PER equals
/// `eps`.
///
/// Works on `ln(gamma_bar)` with a sign-maintained bracket; each iteration
/// takes a Newton step when it stays inside the bracket and bisects
/// otherwise.
pub fn required_mean_snr(eps: f64, m: &TxMode) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain(format!("target PER must be in (0,1), got {eps}")));
    }
    let f = |u: f64| per_rayleigh_unchecked(u.exp(), m) - eps;

    // High-SNR asymptote: PER ~ (gamma_p + 1/g) / gamma_bar.
    let guess = ((m.thresh_gamma_p + 1.0 / m.coef_g) / eps).ln();
    let mut lo = guess;
    let mut hi = guess;
    while f(lo) <= 0.0 {
        lo -= 2.0;
        if lo < -700.0 {
            return Err(Error::domain("required SNR below representable range"));
        }
    }
    while f(hi) > 0.0 {
        hi += 2.0;
        if hi > 700.0 {
            return Err(Error::domain("required SNR above representable range"));
        }
    }

    let mut u = 0.5 * (lo + hi);
    for _ in 0..200 {
        let x = u.exp();
        let r = per_rayleigh_unchecked(x, m) - eps;
        if r.abs() <= REQUIRED_SNR_REL_TOL * eps {
            return Ok(x);
        }
        if r > 0.0 {
            lo = u;
        } else {
            hi = u;
        }
        let slope = x * per_rayleigh_slope(x, m);
        let newton = u - r / slope;
        u = if slope < 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(u.exp())
}

/// Transmit power needed by mode `m` to hold averaged PER `eps` over `d`.
pub fn required_power(d: f64, eps: f64, m: &TxMode, ch: &ChannelParams) -> Result<f64> {
    Ok(required_mean_snr(eps, m)? * noise_power(ch) / path_gain(d, ch)?)
}

/// Energy to push `data_d` bits at power `p_tx` with mode `m`; the bit rate
/// is `rate * B`.
pub fn transmit_energy(p_tx: f64, data_d: f64, m: &TxMode, ch: &ChannelParams) -> f64 {
    p_tx * data_d / (m.rate_rn * ch.bandwidth_b)
}

/// Per-link transmission decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkPlan {
    pub mode_index: usize,
    pub tx_power: f64,
    pub per_budget: f64,
    pub energy: f64,
}

/// Cheapest mode and power meeting averaged PER `eps` over distance `d`.
/// Ties go to the lower mode index.
pub fn min_link_energy(
    d: f64,
    eps: f64,
    data_d: f64,
    ch: &ChannelParams,
    tbl: &ModeTable,
    p_max: f64,
) -> Result<LinkPlan> {
    if !(data_d > 0.0) {
        return Err(Error::domain(format!("data volume must be > 0, got {data_d}")));
    }
    if !(p_max > 0.0) {
        return Err(Error::domain(format!("p_max must be > 0, got {p_max}")));
    }
    let mut best: Option<LinkPlan> = None;
    let mut min_required = f64::INFINITY;
    for (idx, m) in tbl.modes.iter().enumerate() {
        let p = required_power(d, eps, m, ch)?;
        min_required = min_required.min(p);
        if p > p_max {
            continue;
        }
        let energy = transmit_energy(p, data_d, m, ch);
        if best.is_none_or(|b| energy < b.energy) {
            best = Some(LinkPlan {
                mode_index: idx,
                tx_power: p,
                per_budget: eps,
                energy,
            });
        }
    }
    best.ok_or_else(|| {
        Infeasible::Link {
            required_w: min_required,
            shortfall_w: min_required - p_max,
        }
        .into()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_mode() -> TxMode {
        TxMode::with_threshold("unit", 1.0, 1.0, 1.0, 0.0).unwrap()
    }

    fn ch(k0: f64, beta: f64) -> ChannelParams {
        ChannelParams::new(k0, 1.0, beta, 1.0, 1.0).unwrap()
    }

    #[test]
    fn path_gain_examples() {
        assert_eq!(path_gain(1.0, &ch(1.0, 3.68)).unwrap(), 1.0);
        assert_relative_eq!(path_gain(10.0, &ch(1.0, 2.0)).unwrap(), 0.01, max_relative = 1e-15);
        let g = path_gain(100.0, &ch(1e-4, 3.68)).unwrap();
        let log_domain = 10f64.powf(-4.0 - 3.68 * 2.0);
        assert_relative_eq!(g, log_domain, max_relative = 1e-12);
        assert_relative_eq!(g, 4.365e-12, max_relative = 1e-3);
        assert!(path_gain(0.0, &ch(1.0, 2.0)).is_err());
        assert!(path_gain(-1.0, &ch(1.0, 2.0)).is_err());
    }

    #[test]
    fn noise_power_examples() {
        let c = ChannelParams::with_noise_dbm_per_hz(1.0, 1.0, 3.68, -100.0, 20e6).unwrap();
        let expected = 10f64.powf((-100.0 + 10.0 * 2e7f64.log10() - 30.0) / 10.0);
        assert_relative_eq!(noise_power(&c), expected, max_relative = 1e-12);
        assert_relative_eq!(noise_power(&c), 2.0e-6, max_relative = 1e-9);
        assert_eq!(noise_power(&ch(1.0, 2.0)), 1.0);
        let c2 = ChannelParams::with_noise_dbm_per_hz(1.0, 1.0, 3.68, -100.0, 40e6).unwrap();
        assert_relative_eq!(noise_power(&c2), 2.0 * noise_power(&c), max_relative = 1e-15);
    }

    #[test]
    fn channel_params_reject_bad_fields() {
        assert!(ChannelParams::new(0.0, 1.0, 3.0, 1.0, 1.0).is_err());
        assert!(ChannelParams::new(1.0, 1.0, 1.9, 1.0, 1.0).is_err());
        assert!(ChannelParams::new(1.0, 1.0, 3.0, -1.0, 1.0).is_err());
        assert!(ChannelParams::new(1.0, f64::NAN, 3.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn mean_snr_examples() {
        // gain = 2e-6 at d = 1 with K0 = 2e-6; noise = 2e-6 W.
        let c = ChannelParams::new(2e-6, 1.0, 2.0, 2e-6, 1.0).unwrap();
        assert_relative_eq!(mean_snr(1.0, 1.0, &c).unwrap(), 1.0, max_relative = 1e-15);
        assert_eq!(mean_snr(0.0, 1.0, &c).unwrap(), 0.0);
        let c = ChannelParams::new(1e-6, 1.0, 2.0, 2e-6, 1.0).unwrap();
        assert_relative_eq!(mean_snr(4.0, 1.0, &c).unwrap(), 2.0, max_relative = 1e-15);
        assert!(mean_snr(1.0, 0.0, &c).is_err());
    }

    #[test]
    fn per_instant_examples() {
        assert_relative_eq!(per_instant(0.5, &unit_mode()), (-0.5f64).exp(), max_relative = 1e-15);
        let m = TxMode::with_threshold("e", 1.0, std::f64::consts::E, 1.0, 1.0).unwrap();
        assert_relative_eq!(per_instant(2.0, &m), (-1.0f64).exp(), max_relative = 1e-14);
        assert_eq!(per_instant(0.999, &m), 1.0);
    }

    #[test]
    fn per_rayleigh_examples() {
        assert_relative_eq!(per_rayleigh(1.0, &unit_mode()).unwrap(), 0.5, max_relative = 1e-15);
        let m = TxMode::new("q", 1.0, 90.25, 3.50).unwrap();
        assert!(per_rayleigh(1e-9, &m).unwrap() > 1.0 - 1e-6);
        assert!(per_rayleigh(0.0, &m).is_err());
        assert!(per_rayleigh(-1.0, &m).is_err());
    }

    #[test]
    fn required_snr_examples() {
        assert_relative_eq!(required_mean_snr(0.5, &unit_mode()).unwrap(), 1.0, max_relative = 1e-9);
        for m in default_mode_table().modes() {
            for eps in [1e-3, 1e-2, 0.1] {
                let g = required_mean_snr(eps, m).unwrap();
                let back = per_rayleigh(g, m).unwrap();
                assert!((back - eps).abs() <= 1e-9 * eps, "{} {eps}: {back}", m.label());
            }
        }
        assert!(required_mean_snr(0.0, &unit_mode()).is_err());
        assert!(required_mean_snr(1.0, &unit_mode()).is_err());
    }

    #[test]
    fn slope_matches_finite_difference() {
        for m in default_mode_table().modes() {
            for x in [0.3, 3.0, 40.0, 900.0] {
                let h = x * 1e-6;
                let fd = (per_rayleigh_unchecked(x + h, m) - per_rayleigh_unchecked(x - h, m))
                    / (2.0 * h);
                // PER ~ 1 at low SNR, where the difference quotient cancels
                let slope = per_rayleigh_slope(x, m);
                assert!((slope - fd).abs() <= 1e-5 * fd.abs() + 1e-9, "{x}: {slope} vs {fd}");
            }
        }
    }

    #[test]
    fn mode_validation() {
        assert!(TxMode::with_threshold("bad", 1.0, 2.0, 1.0, 0.0).is_err());
        assert!(TxMode::new("a<1", 1.0, 0.5, 1.0).is_err());
        assert!(TxMode::new("r=0", 0.0, 2.0, 1.0).is_err());
        let m = unit_mode();
        assert!(ModeTable::new(vec![m.clone(), m.clone()]).is_err());
        assert!(ModeTable::new(vec![]).is_err());
    }

    #[test]
    fn default_table_loads_six_continuous_modes() {
        let t = default_mode_table();
        assert_eq!(t.len(), 6);
        for m in t.modes() {
            let j = m.coef_a() * (-m.coef_g() * m.gamma_p()).exp();
            assert!((j - 1.0).abs() <= CONTINUITY_TOL);
        }
    }

    #[test]
    fn mode_file_rejects_bad_threshold_and_unknown_keys() {
        let bad = "[[mode]]\nlabel='x'\nrate=1.0\na=90.2514\ng=3.4998\ngamma_p_dB=5.0\n";
        assert!(ModeTable::from_toml_str(bad).is_err());
        let unk = "[[mode]]\nlabel='x'\nrate=1.0\na=90.2514\ng=3.4998\ngamma_p_dB=1.0942\nfoo=1\n";
        assert!(ModeTable::from_toml_str(unk).is_err());
    }

    #[test]
    fn min_link_energy_boundary_is_feasible() {
        let tbl = ModeTable::new(vec![unit_mode()]).unwrap();
        let c = ch(1.0, 2.0);
        let p = required_power(3.0, 0.2, &tbl.modes()[0], &c).unwrap();
        let plan = min_link_energy(3.0, 0.2, 10.0, &c, &tbl, p).unwrap();
        assert_eq!(plan.tx_power, p);
        assert_relative_eq!(plan.energy, p * 10.0 / (1.0 * 1.0), max_relative = 1e-15);
        let err = min_link_energy(3.0, 0.2, 10.0, &c, &tbl, p * 0.5).unwrap_err();
        match err {
            Error::Infeasible(Infeasible::Link { shortfall_w, .. }) => {
                assert_relative_eq!(shortfall_w, 0.5 * p, max_relative = 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn min_link_energy_scales_with_inverse_square() {
        let tbl = ModeTable::new(vec![unit_mode()]).unwrap();
        let c = ch(1.0, 2.0);
        let a = min_link_energy(5.0, 0.1, 100.0, &c, &tbl, 1e9).unwrap();
        let b = min_link_energy(10.0, 0.1, 100.0, &c, &tbl, 1e9).unwrap();
        assert_eq!(a.mode_index, b.mode_index);
        assert_relative_eq!(b.tx_power, 4.0 * a.tx_power, max_relative = 1e-12);
        assert_relative_eq!(b.energy, 4.0 * a.energy, max_relative = 1e-12);
    }
}
