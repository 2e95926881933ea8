//! Drivers for the Florentine example, the synthetic recovery table and the
//! per-iteration cost benchmark.

use serde::Serialize;

use crate::error::Result;
use crate::estimators::{empirical_moments, mf_mlle, mple, mple_from_deltas, precompute_deltas};
use crate::estimators::{EstimateResult, GradientAscentConfig};
use crate::io::florentine;
use crate::mean_field::NewtonConfig;
use crate::model::{MomentsVector, NaturalParams};
use crate::sampler::{run_chain, SampleSet, SamplerConfig};

/// Published estimates for the Florentine network.
pub const FLORENTINE_MF: [f64; 3] = [-1.5553, -0.0293, 0.2106];
pub const FLORENTINE_MPLE: [f64; 3] = [-1.6231, -0.0188, 0.2459];

/// Generating parameters of the synthetic study: `(2β1, β2/n, β3/n)`.
pub const BETA: [f64; 3] = [-0.8, -0.2, 2.0];

pub fn synthetic_params(n: usize) -> NaturalParams {
    NaturalParams::new(2.0 * BETA[0], BETA[1] / n as f64, BETA[2] / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table1Row {
    pub n: usize,
    pub iterations: usize,
    pub step: f64,
    /// Mean-field estimates reported for this row.
    pub reported: [f64; 3],
}

pub const TABLE1: [Table1Row; 8] = [
    Table1Row {
        n: 10,
        iterations: 1000,
        step: 1e-2,
        reported: [-1.5377, -0.0462, 0.2105],
    },
    Table1Row {
        n: 20,
        iterations: 2500,
        step: 1e-3,
        reported: [-1.5947, -0.080, 0.0891],
    },
    Table1Row {
        n: 30,
        iterations: 50000,
        step: 1e-4,
        reported: [-1.5884, -0.0053, 0.0460],
    },
    Table1Row {
        n: 40,
        iterations: 50000,
        step: 1e-4,
        reported: [-1.5877, -0.0060, 0.0518],
    },
    Table1Row {
        n: 50,
        iterations: 150000,
        step: 1e-5,
        reported: [-1.5977, -0.0036, 0.0355],
    },
    Table1Row {
        n: 60,
        iterations: 150000,
        step: 1e-5,
        reported: [-1.5873, -0.0036, 0.0296],
    },
    Table1Row {
        n: 70,
        iterations: 150000,
        step: 1e-5,
        reported: [-1.5775, -0.0032, 0.0250],
    },
    Table1Row {
        n: 80,
        iterations: 900000,
        step: 1e-6,
        reported: [-1.6054, -0.0025, 0.0266],
    },
];

pub fn table1_row(n: usize) -> Option<Table1Row> {
    TABLE1.iter().copied().find(|r| r.n == n)
}

pub struct FlorentineRun {
    pub mf: EstimateResult,
    pub mple: EstimateResult,
}

/// Mean-field MLLE (100 000 iterations, γ = 1e−4) and MPLE (10 000
/// iterations, γ = 1e−3) on the Florentine network, both from θ = 0.
pub fn reproduce_florentine() -> Result<FlorentineRun> {
    let g = florentine();
    let moments = MomentsVector::from(g.suff_stats());
    let mf = mf_mlle(
        &moments,
        g.n(),
        &GradientAscentConfig::new(1e-4, 100_000),
        &NewtonConfig::default(),
    )?;
    let data = SampleSet::from_graphs(vec![g])?;
    let mple = mple(&data, &GradientAscentConfig::new(1e-3, 10_000))?;
    Ok(FlorentineRun { mf, mple })
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoveryResult {
    pub row: Table1Row,
    pub truth: NaturalParams,
    pub empirical: MomentsVector,
    pub estimate: NaturalParams,
    pub mple_estimate: Option<NaturalParams>,
    pub mean_iter_time_ms: f64,
}

/// Samples `num_samples` graphs at the synthetic parameters for `row.n`
/// and runs mean-field MLLE with the row's schedule.
pub fn recover(
    row: Table1Row,
    num_samples: usize,
    seed: u64,
    with_mple: bool,
) -> Result<RecoveryResult> {
    let truth = synthetic_params(row.n);
    let data = run_chain(&truth, &SamplerConfig::new(row.n, num_samples, seed))?;
    let empirical = empirical_moments(&data)?;
    let cfg = GradientAscentConfig {
        trace_every: row.iterations.max(1),
        ..GradientAscentConfig::new(row.step, row.iterations)
    };
    let mf = mf_mlle(&empirical, row.n, &cfg, &NewtonConfig::default())?;
    let mple_estimate = if with_mple {
        Some(mple(&data, &cfg)?.theta_star)
    } else {
        None
    };
    Ok(RecoveryResult {
        row,
        truth,
        empirical,
        estimate: mf.theta_star,
        mple_estimate,
        mean_iter_time_ms: mf.total_time_ms / mf.iterations as f64,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub mf_iter_ms: f64,
    pub mple_iter_ms: f64,
}

/// Mean wall time per iteration of both ascent methods on the same sampled
/// dataset at each size.
pub fn bench(
    sizes: &[usize],
    num_samples: usize,
    mf_iters: usize,
    mple_iters: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in sizes {
        let truth = synthetic_params(n);
        let data = run_chain(&truth, &SamplerConfig::new(n, num_samples, seed))?;
        let moments = empirical_moments(&data)?;
        let step = table1_row(n).map_or(1e-5, |r| r.step);
        let mf = mf_mlle(
            &moments,
            n,
            &GradientAscentConfig::new(step, mf_iters),
            &NewtonConfig::default(),
        )?;
        let deltas = precompute_deltas(&data)?;
        let pl = mple_from_deltas(&deltas, &GradientAscentConfig::new(step, mple_iters))?;
        rows.push(BenchRow {
            n,
            mf_iter_ms: mf.mean_iter_time_ms(),
            mple_iter_ms: pl.mean_iter_time_ms(),
        });
    }
    Ok(rows)
}
