use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::motion::{reachable, MotionParams};

/// Uniform rectangular grid of candidate router positions.
///
/// Cells sit at `(x_min + i * spacing, y_min + j * spacing)` for every
/// index pair that stays inside the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub spacing: f64,
}

/// Upper bound on grid size, so a typo in the spacing cannot exhaust memory.
pub const MAX_CELLS: usize = 4_000_000;

impl Grid {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, spacing: f64) -> Result<Self> {
        let g = Self {
            x_min,
            x_max,
            y_min,
            y_max,
            spacing,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("grid.x_min", self.x_min),
            ("grid.x_max", self.x_max),
            ("grid.y_min", self.y_min),
            ("grid.y_max", self.y_max),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        if !(self.spacing.is_finite() && self.spacing > 0.0) {
            return Err(Error::invalid("grid.spacing", format!("must be > 0, got {}", self.spacing)));
        }
        if self.x_max < self.x_min {
            return Err(Error::invalid("grid.x_max", "must be >= x_min"));
        }
        if self.y_max < self.y_min {
            return Err(Error::invalid("grid.y_max", "must be >= y_min"));
        }
        let cells = (self.nx() as f64) * (self.ny() as f64);
        if cells > MAX_CELLS as f64 {
            return Err(Error::invalid(
                "grid.spacing",
                format!("grid would have {cells} cells, limit is {MAX_CELLS}"),
            ));
        }
        Ok(())
    }

    fn count(lo: f64, hi: f64, h: f64) -> usize {
        ((hi - lo) / h + 1e-9).floor() as usize + 1
    }

    pub fn nx(&self) -> usize {
        Self::count(self.x_min, self.x_max, self.spacing)
    }

    pub fn ny(&self) -> usize {
        Self::count(self.y_min, self.y_max, self.spacing)
    }

    pub fn len(&self) -> usize {
        self.nx() * self.ny()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx() + i
    }

    pub fn point(&self, idx: usize) -> Point {
        let nx = self.nx();
        let (i, j) = (idx % nx, idx / nx);
        Point::new(
            self.x_min + i as f64 * self.spacing,
            self.y_min + j as f64 * self.spacing,
        )
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    /// Length of a cell diagonal.
    pub fn diagonal(&self) -> f64 {
        self.spacing * std::f64::consts::SQRT_2
    }

    /// Cells reachable from `from` within one step, in ascending index order.
    pub fn reachable_from(&self, from: &Point, dt: f64, mp: &MotionParams) -> Vec<usize> {
        let r = mp.reach(dt);
        let h = self.spacing;
        let (nx, ny) = (self.nx() as i64, self.ny() as i64);
        let lo = |c: f64, min: f64| (((c - r - min) / h).floor() as i64).max(0);
        let hi = |c: f64, min: f64, n: i64| (((c + r - min) / h).ceil() as i64).min(n - 1);
        let (i0, i1) = (lo(from.x, self.x_min), hi(from.x, self.x_min, nx));
        let (j0, j1) = (lo(from.y, self.y_min), hi(from.y, self.y_min, ny));
        let mut out = Vec::new();
        for j in j0..=j1 {
            for i in i0..=i1 {
                let idx = self.index(i as usize, j as usize);
                if reachable(from, &self.point(idx), dt, mp) {
                    out.push(idx);
                }
            }
        }
        out
    }
}
