//! Connectivity-quality metrics.
//!
//! Graph-theoretic metrics work on a weighted, possibly directed graph over
//! node positions: thresholded distance weights, the algebraic connectivity
//! of the weighted Laplacian and the number of simple paths between two
//! nodes. Channel-based metrics are Shannon capacity and the end-to-end PER
//! of a two-hop decode-and-forward chain.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::geom::Point;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    // row-major, w[i * n + j] is the weight of i -> j
    weights: Vec<f64>,
}

impl WeightedGraph {
    /// Builds a graph from a dense row-major weight matrix.
    pub fn from_weights(n: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != n * n {
            return Err(Error::domain(format!(
                "weight matrix has {} entries, expected {}",
                weights.len(),
                n * n
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let w = weights[i * n + j];
                if !(w.is_finite() && w >= 0.0) {
                    return Err(Error::domain(format!("weight {i}->{j} must be finite and >= 0, got {w}")));
                }
                if i == j && w != 0.0 {
                    return Err(Error::domain(format!("self-loop weight at node {i}")));
                }
            }
        }
        Ok(Self { n, weights })
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.weight(i, j) == self.weight(j, i)))
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::from_weights(self.n, self.weights.iter().map(|w| w * c).collect())
    }

    /// Out-degree Laplacian `D - W`, D holding the row sums.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                (0..n).map(|k| self.weight(i, k)).sum()
            } else {
                -self.weight(i, j)
            }
        })
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{i}:")?;
            for j in 0..self.n {
                let w = self.weight(i, j);
                if w > 0.0 {
                    write!(f, " {j}({w})")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepWeightParams {
    threshold_x_th: f64,
}

impl StepWeightParams {
    pub fn new(threshold_x_th: f64) -> Result<Self> {
        if !(threshold_x_th.is_finite() && threshold_x_th > 0.0) {
            return Err(Error::invalid(
                "threshold_x_th",
                format!("must be > 0, got {threshold_x_th}"),
            ));
        }
        Ok(Self { threshold_x_th })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold_x_th
    }
}

/// Perfect link below the distance threshold, none at or beyond it.
pub fn step_weight(d: f64, p: &StepWeightParams) -> f64 {
    if d < p.threshold_x_th {
        1.0
    } else {
        0.0
    }
}

/// Builds a graph with `w_ij = f(i, j, |x_i - x_j|)`.
///
/// With `symmetric` set, `f` is only evaluated for `i < j` and mirrored.
pub fn build_graph<F>(positions: &[Point], f: F, symmetric: bool) -> Result<WeightedGraph>
where
    F: Fn(usize, usize, f64) -> f64,
{
    let n = positions.len();
    if n < 2 {
        return Err(Error::domain(format!("graph needs at least 2 nodes, got {n}")));
    }
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j || (symmetric && j < i) {
                continue;
            }
            let v = f(i, j, positions[i].dist(&positions[j]));
            w[i * n + j] = v;
            if symmetric {
                w[j * n + i] = v;
            }
        }
    }
    WeightedGraph::from_weights(n, w)
}

/// Second-smallest Laplacian eigenvalue. Rejects directed graphs.
pub fn algebraic_connectivity(g: &WeightedGraph) -> Result<f64> {
    if !g.is_symmetric() {
        return Err(Error::domain("algebraic connectivity needs a symmetric graph"));
    }
    let eig = SymmetricEigen::new(g.laplacian());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    // Clamp round-off around the guaranteed zero eigenvalue.
    let scale = vals.last().copied().unwrap_or(0.0).abs().max(1.0);
    let l2 = vals[1];
    Ok(if l2.abs() <= 1e-12 * scale { 0.0 } else { l2.max(0.0) })
}

pub const DEFAULT_PATH_ENUM_CAP: usize = 12;

/// Number of simple directed paths `s -> t` over positive-weight edges.
pub fn num_simple_paths(g: &WeightedGraph, s: usize, t: usize) -> Result<u64> {
    num_simple_paths_capped(g, s, t, DEFAULT_PATH_ENUM_CAP)
}

pub fn num_simple_paths_capped(g: &WeightedGraph, s: usize, t: usize, cap: usize) -> Result<u64> {
    let n = g.n_nodes();
    if n > cap || n > 64 {
        return Err(Error::domain(format!(
            "path enumeration limited to {} nodes, graph has {n}",
            cap.min(64)
        )));
    }
    if s >= n || t >= n {
        return Err(Error::domain(format!("node index out of range (n = {n})")));
    }
    if s == t {
        return Err(Error::domain("source and target must differ"));
    }
    fn dfs(g: &WeightedGraph, at: usize, t: usize, visited: u64) -> u64 {
        if at == t {
            return 1;
        }
        (0..g.n_nodes())
            .filter(|&j| visited & (1 << j) == 0 && g.weight(at, j) > 0.0)
            .map(|j| dfs(g, j, t, visited | (1 << j)))
            .sum()
    }
    Ok(dfs(g, s, t, 1 << s))
}

/// Shannon capacity `B log2(1 + snr)` in bits/s.
pub fn capacity(gamma_bar: f64, bandwidth_b: f64) -> Result<f64> {
    if !(gamma_bar >= 0.0) {
        return Err(Error::domain(format!("SNR must be >= 0, got {gamma_bar}")));
    }
    Ok(bandwidth_b * gamma_bar.ln_1p() / std::f64::consts::LN_2)
}

/// PER of a two-hop decode-and-forward chain: it succeeds only if both hops do.
pub fn e2e_per(p1: f64, p2: f64) -> Result<f64> {
    for p in [p1, p2] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("PER must be in [0,1], got {p}")));
        }
    }
    let (hi, lo) = if p1 >= p2 { (p1, p2) } else { (p2, p1) };
    Ok(hi + lo * (1.0 - hi))
}
