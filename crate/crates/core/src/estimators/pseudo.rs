//! Maximum pseudo-likelihood: logistic regression of each pair's state on
//! its change statistics, pooled over all samples and unordered pairs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::NaturalParams;
use crate::sampler::SampleSet;

use super::{gradient_ascent, EstimateResult, Evaluation, GradientAscentConfig, Method};

/// Estimates larger than this in sup-norm are taken as evidence that the
/// pseudo-likelihood has no finite maximiser.
pub const SEPARATION_BOUND: f64 = 1e3;

/// Change statistics and observed state for every (sample, pair), computed
/// once and reused by every gradient evaluation. `d_edges` is always 1 and
/// not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecomputedDeltas {
    n: usize,
    num_samples: usize,
    observed: Vec<bool>,
    d_two_stars: Vec<u32>,
    d_triangles: Vec<u32>,
}

impl PrecomputedDeltas {
    pub fn from_graphs(graphs: &[Graph]) -> Result<Self> {
        let n = graphs.first().ok_or(Error::EmptyDataset)?.n();
        let pairs = n * (n - 1) / 2;
        let cap = pairs * graphs.len();
        let mut d = PrecomputedDeltas {
            n,
            num_samples: graphs.len(),
            observed: Vec::with_capacity(cap),
            d_two_stars: Vec::with_capacity(cap),
            d_triangles: Vec::with_capacity(cap),
        };
        for g in graphs {
            if g.n() != n {
                return Err(Error::InvalidConfig("dataset mixes graph sizes".into()));
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let c = g.change_stats_unchecked(i, j);
                    d.observed.push(g.has_edge_unchecked(i, j));
                    d.d_two_stars.push(c.d_two_stars as u32);
                    d.d_triangles.push(c.d_triangles as u32);
                }
            }
        }
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.observed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observed.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_samples(&self) -> usize {
        self.num_samples
    }

    /// `(observed, [ΔE, ΔS2, ΔT])` for sample `k`, pair index `pair`
    /// (lexicographic over `i < j`).
    pub fn get(&self, k: usize, pair: usize) -> (bool, [f64; 3]) {
        let idx = k * self.n * (self.n - 1) / 2 + pair;
        (
            self.observed[idx],
            [
                1.0,
                self.d_two_stars[idx] as f64,
                self.d_triangles[idx] as f64,
            ],
        )
    }

    /// Objective and gradient in one pass.
    pub fn evaluate(&self, p: &NaturalParams) -> (f64, [f64; 3]) {
        let (t1, t2, t3) = (p.theta1, p.theta2, p.theta3);
        let mut obj = 0.0;
        let mut g = [0.0; 3];
        for ((&x, &d2), &d3) in self
            .observed
            .iter()
            .zip(&self.d_two_stars)
            .zip(&self.d_triangles)
        {
            let (d2, d3) = (d2 as f64, d3 as f64);
            let z = t1 + t2 * d2 + t3 * d3;
            let (softplus, sig) = if z > 0.0 {
                let e = (-z).exp();
                (z + e.ln_1p(), 1.0 / (1.0 + e))
            } else {
                let e = z.exp();
                (e.ln_1p(), e / (1.0 + e))
            };
            let x = x as u8 as f64;
            obj += x * z - softplus;
            let r = x - sig;
            g[0] += r;
            g[1] += r * d2;
            g[2] += r * d3;
        }
        let inv = 1.0 / self.num_samples as f64;
        (obj * inv, [g[0] * inv, g[1] * inv, g[2] * inv])
    }
}

pub fn precompute_deltas(data: &SampleSet) -> Result<PrecomputedDeltas> {
    PrecomputedDeltas::from_graphs(&data.graphs)
}

pub fn log_pseudo_likelihood(p: &NaturalParams, d: &PrecomputedDeltas) -> f64 {
    d.evaluate(p).0
}

pub fn pl_gradient(p: &NaturalParams, d: &PrecomputedDeltas) -> [f64; 3] {
    d.evaluate(p).1
}

/// Gradient ascent `θ ← θ + γ∇PL(θ)`.
pub fn mple(data: &SampleSet, cfg: &GradientAscentConfig) -> Result<EstimateResult> {
    mple_from_deltas(&precompute_deltas(data)?, cfg)
}

pub fn mple_from_deltas(
    d: &PrecomputedDeltas,
    cfg: &GradientAscentConfig,
) -> Result<EstimateResult> {
    if d.is_empty() {
        return Err(Error::EmptyDataset);
    }
    // All pairs in one state: the intercept alone separates the data.
    if d.observed.iter().all(|&x| x) || d.observed.iter().all(|&x| !x) {
        return Err(Error::Separation { iteration: 0 });
    }
    gradient_ascent(cfg, Method::Mple, |k, theta| {
        if theta.as_array().iter().any(|t| t.abs() > SEPARATION_BOUND) {
            return Err(Error::Separation { iteration: k });
        }
        let (obj, gradient) = d.evaluate(theta);
        Ok(Evaluation {
            gradient,
            objective: Some(obj),
        })
    })
}
