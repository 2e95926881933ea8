//! Gradient-ascent estimators: exact MLLE, maximum pseudo-likelihood and
//! mean-field MLLE, sharing one fixed-step ascent loop and trace format.

mod mf;
mod pseudo;

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact;
use crate::graph::SufficientStats;
use crate::mean_field::PhaseDiagnostic;
use crate::model::{MomentsVector, NaturalParams};
use crate::sampler::SampleSet;

pub use mf::mf_mlle;
pub use pseudo::{
    log_pseudo_likelihood, mple, mple_from_deltas, pl_gradient, precompute_deltas,
    PrecomputedDeltas,
};

/// Number of consecutive objective decreases treated as divergence.
pub const DIVERGENCE_WINDOW: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradientAscentConfig {
    pub step: f64,
    pub max_iter: usize,
    pub init: NaturalParams,
    /// Stop once the sup-norm of the gradient drops below this. Off by default
    /// so that fixed iteration budgets are honoured exactly.
    pub grad_tol: Option<f64>,
    /// Record every k-th iteration in the trace (the last one is always kept).
    pub trace_every: usize,
}

impl Default for GradientAscentConfig {
    fn default() -> Self {
        GradientAscentConfig {
            step: 1e-3,
            max_iter: 1000,
            init: NaturalParams::ZERO,
            grad_tol: None,
            trace_every: 1,
        }
    }
}

impl GradientAscentConfig {
    pub fn new(step: f64, max_iter: usize) -> Self {
        GradientAscentConfig {
            step,
            max_iter,
            ..Default::default()
        }
    }

    pub fn with_grad_tol(mut self, tol: f64) -> Self {
        self.grad_tol = Some(tol);
        self
    }

    pub fn with_init(mut self, init: NaturalParams) -> Self {
        self.init = init;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "step must be > 0, got {}",
                self.step
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be >= 1".into()));
        }
        if self.trace_every == 0 {
            return Err(Error::InvalidConfig("trace_every must be >= 1".into()));
        }
        if let Some(tol) = self.grad_tol {
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "grad_tol must be > 0, got {tol}"
                )));
            }
        }
        self.init.check_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "MLLE_EXACT")]
    MlleExact,
    #[serde(rename = "MLPLE")]
    Mple,
    #[serde(rename = "MF_MLLE")]
    MfMlle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    /// Parameters after `iteration` updates.
    pub iteration: usize,
    pub theta: NaturalParams,
    /// Gradient used for the update that produced `theta`.
    pub gradient: [f64; 3],
    pub iter_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    pub theta_star: NaturalParams,
    pub trace: Vec<TraceEntry>,
    pub converged: bool,
    pub method: Method,
    pub iterations: usize,
    pub total_time_ms: f64,
    pub phase_at_solution: Option<PhaseDiagnostic>,
}

#[derive(Serialize)]
struct ResultJson<'a> {
    method: Method,
    theta_star: [f64; 3],
    converged: bool,
    iterations: usize,
    total_time_ms: f64,
    phase: Option<&'a PhaseDiagnostic>,
}

impl EstimateResult {
    pub fn mean_iter_time_ms(&self) -> f64 {
        if self.trace.is_empty() {
            return 0.0;
        }
        self.trace.iter().map(|t| t.iter_time_ms).sum::<f64>() / self.trace.len() as f64
    }

    pub fn final_gradient(&self) -> [f64; 3] {
        self.trace.last().map(|t| t.gradient).unwrap_or_default()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ResultJson {
            method: self.method,
            theta_star: self.theta_star.as_array(),
            converged: self.converged,
            iterations: self.iterations,
            total_time_ms: self.total_time_ms,
            phase: self.phase_at_solution.as_ref(),
        })
        .expect("result is always serialisable")
    }

    pub fn write_trace_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "iter,theta1,theta2,theta3,grad1,grad2,grad3,iter_time_ms"
        )?;
        for t in &self.trace {
            let [a, b, c] = t.theta.as_array();
            let [g1, g2, g3] = t.gradient;
            writeln!(
                w,
                "{},{a},{b},{c},{g1},{g2},{g3},{}",
                t.iteration, t.iter_time_ms
            )?;
        }
        Ok(())
    }
}

/// One gradient evaluation: the ascent direction and, when cheap, the
/// objective value at the evaluation point.
pub(crate) struct Evaluation {
    pub gradient: [f64; 3],
    pub objective: Option<f64>,
}

fn sup_norm(g: [f64; 3]) -> f64 {
    g.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Fixed-step ascent `θ ← θ + γ·g(θ)`.
pub(crate) fn gradient_ascent<F>(
    cfg: &GradientAscentConfig,
    method: Method,
    mut eval: F,
) -> Result<EstimateResult>
where
    F: FnMut(usize, &NaturalParams) -> Result<Evaluation>,
{
    cfg.validate()?;
    let start = Instant::now();
    let mut theta = cfg.init;
    let mut trace = Vec::with_capacity((cfg.max_iter / cfg.trace_every).min(1 << 20) + 1);
    let mut converged = false;
    let mut iterations = 0;
    let mut grad_norm = f64::INFINITY;
    let mut prev_objective: Option<f64> = None;
    let mut decreases = 0;

    for k in 0..cfg.max_iter {
        let t0 = Instant::now();
        let Evaluation {
            gradient,
            objective,
        } = eval(k, &theta)?;

        if let (Some(prev), Some(cur)) = (prev_objective, objective) {
            if cur < prev {
                decreases += 1;
                if decreases >= DIVERGENCE_WINDOW {
                    return Err(Error::Divergence {
                        iteration: k,
                        window: DIVERGENCE_WINDOW,
                    });
                }
            } else {
                decreases = 0;
            }
        }
        prev_objective = objective;

        let mut next = theta.as_array();
        for (t, g) in next.iter_mut().zip(gradient) {
            *t += cfg.step * g;
        }
        theta = NaturalParams::from_array(next);
        if theta.check_finite().is_err() {
            return Err(Error::Divergence {
                iteration: k,
                window: 1,
            });
        }
        iterations = k + 1;
        grad_norm = sup_norm(gradient);
        let done = cfg.grad_tol.is_some_and(|tol| grad_norm < tol);
        let iter_time_ms = t0.elapsed().as_secs_f64() * 1e3;
        if done || iterations % cfg.trace_every == 0 || iterations == cfg.max_iter {
            trace.push(TraceEntry {
                iteration: iterations,
                theta,
                gradient,
                iter_time_ms,
            });
        }
        if done {
            converged = true;
            break;
        }
    }

    if cfg.grad_tol.is_some() && !converged {
        return Err(Error::NonConvergence {
            iterations,
            grad_norm,
        });
    }
    Ok(EstimateResult {
        theta_star: theta,
        trace,
        converged,
        method,
        iterations,
        total_time_ms: start.elapsed().as_secs_f64() * 1e3,
        phase_at_solution: None,
    })
}

/// Componentwise mean of per-sample statistics.
pub fn empirical_moments(data: &SampleSet) -> Result<MomentsVector> {
    moments_of_stats(&data.stats)
}

pub fn moments_of_stats(stats: &[SufficientStats]) -> Result<MomentsVector> {
    if stats.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut sum = [0u128; 3];
    for s in stats {
        sum[0] += s.edges as u128;
        sum[1] += s.two_stars as u128;
        sum[2] += s.triangles as u128;
    }
    let n = stats.len() as f64;
    Ok(MomentsVector::new(
        sum[0] as f64 / n,
        sum[1] as f64 / n,
        sum[2] as f64 / n,
    ))
}

/// Exact MLLE on the empirical moments of `data` by full enumeration.
pub fn mlle_exact_from_data(
    data: &SampleSet,
    cfg: &GradientAscentConfig,
) -> Result<EstimateResult> {
    let n = data.n();
    let limit = exact::DEFAULT_ENUMERATION_LIMIT;
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let mu = empirical_moments(data)?;
    exact::mlle_exact(&mu, n, cfg)
}
