//! Router-robot kinematics and motion energy.
//!
//! While moving the robot draws `k1 * v + k2` watts; it travels each leg at
//! `v_max` and idles for the rest of the step, so a straight leg of length
//! `dist` costs `k1 * dist + k2 * dist / v_max` joules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;

/// Absolute slack on the reachability radius, absorbing round-off in
/// distances that sit exactly on the boundary.
pub const REACH_SLACK_M: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionParams {
    pub k1: f64,
    pub k2: f64,
    pub v_max: f64,
}

impl MotionParams {
    pub fn new(k1: f64, k2: f64, v_max: f64) -> Result<Self> {
        let p = Self { k1, k2, v_max };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k1.is_finite() && self.k1 >= 0.0) {
            return Err(Error::invalid("motion.k1", format!("must be >= 0, got {}", self.k1)));
        }
        if !(self.k2.is_finite() && self.k2 >= 0.0) {
            return Err(Error::invalid("motion.k2", format!("must be >= 0, got {}", self.k2)));
        }
        if !(self.v_max.is_finite() && self.v_max > 0.0) {
            return Err(Error::invalid("motion.v_max", format!("must be > 0, got {}", self.v_max)));
        }
        Ok(())
    }

    /// Largest displacement within one step of `dt` seconds.
    pub fn reach(&self, dt: f64) -> f64 {
        self.v_max * dt
    }
}

impl Default for MotionParams {
    fn default() -> Self {
        Self {
            k1: 7.4,
            k2: 0.29,
            v_max: 1.0,
        }
    }
}

pub fn reachable(x_from: &Point, x_to: &Point, dt: f64, mp: &MotionParams) -> bool {
    x_from.dist(x_to) <= mp.reach(dt) + REACH_SLACK_M
}

pub fn motion_energy(dist: f64, mp: &MotionParams) -> Result<f64> {
    if !(dist >= 0.0) {
        return Err(Error::domain(format!("distance must be >= 0, got {dist}")));
    }
    Ok(mp.k1 * dist + mp.k2 * dist / mp.v_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn reachability_examples() {
        let mp = MotionParams::default();
        let o = Point::new(3.0, 4.0);
        assert!(reachable(&o, &o, 10.0, &mp));
        assert!(reachable(&Point::new(0.0, 0.0), &Point::new(6.0, 8.0), 10.0, &mp));
        assert!(!reachable(&Point::new(0.0, 0.0), &Point::new(10.01, 0.0), 10.0, &mp));
    }

    #[test]
    fn energy_examples() {
        let mp = MotionParams::default();
        assert_eq!(motion_energy(0.0, &mp).unwrap(), 0.0);
        assert_relative_eq!(motion_energy(1.0, &mp).unwrap(), 7.69, max_relative = 1e-15);
        assert_eq!(motion_energy(2.0, &mp).unwrap(), 2.0 * motion_energy(1.0, &mp).unwrap());
        assert!(motion_energy(-1.0, &mp).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(MotionParams::new(-1.0, 0.0, 1.0).is_err());
        assert!(MotionParams::new(0.0, -1.0, 1.0).is_err());
        assert!(MotionParams::new(0.0, 0.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn energy_is_additive(a in 0.0f64..100.0, b in 0.0f64..100.0, k1 in 0.0f64..10.0, k2 in 0.0f64..2.0, v in 0.1f64..3.0) {
            let mp = MotionParams::new(k1, k2, v).unwrap();
            let lhs = motion_energy(a, &mp).unwrap() + motion_energy(b, &mp).unwrap();
            let rhs = motion_energy(a + b, &mp).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn reachability_is_symmetric(ax in -50.0f64..50.0, ay in -50.0f64..50.0, bx in -50.0f64..50.0, by in -50.0f64..50.0, dt in 0.1f64..30.0) {
            let mp = MotionParams::default();
            let (a, b) = (Point::new(ax, ay), Point::new(bx, by));
            prop_assert_eq!(reachable(&a, &b, dt, &mp), reachable(&b, &a, dt, &mp));
            prop_assert!(reachable(&a, &a, dt, &mp));
        }
    }
}
