//! Brute-force enumeration over all `2^C(n,2)` labelled graphs.
//!
//! Graphs are visited in Gray-code order over the lexicographic pair
//! indexing, so consecutive graphs differ in one pair and statistics are
//! updated from change statistics in O(n) instead of being recounted.
//! Everything downstream (partition function, moments, exact MLLE) works on
//! the histogram of distinct statistic triples.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::estimators::{
    gradient_ascent, EstimateResult, Evaluation, GradientAscentConfig, Method,
};
use crate::graph::{Graph, SufficientStats};
use crate::model::{log_weight, MomentsVector, NaturalParams};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 7;
/// Largest `n` for which a full probability table is produced.
pub const DISTRIBUTION_LIMIT: usize = 5;

/// Log-partition function `A(θ)` for graphs on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionResult {
    pub log_partition: f64,
    pub n: usize,
}

/// Iterator over every labelled graph on `n` vertices, yielding the pair
/// mask (see [`Graph::from_pair_mask`]) and its statistics.
pub struct GraphEnumeration {
    pairs: Vec<(usize, usize)>,
    graph: Graph,
    stats: SufficientStats,
    mask: u64,
    emitted: u64,
    total: u64,
}

impl GraphEnumeration {
    fn new(n: usize) -> Result<Self> {
        let graph = Graph::try_empty(n)?;
        let pairs: Vec<_> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        Ok(GraphEnumeration {
            total: 1u64 << pairs.len(),
            pairs,
            graph,
            stats: SufficientStats::ZERO,
            mask: 0,
            emitted: 0,
        })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The graph corresponding to the most recently yielded item.
    pub fn current(&self) -> &Graph {
        &self.graph
    }
}

impl Iterator for GraphEnumeration {
    type Item = (u64, SufficientStats);

    fn next(&mut self) -> Option<Self::Item> {
        if self.emitted == self.total {
            return None;
        }
        if self.emitted > 0 {
            let bit = self.emitted.trailing_zeros() as usize;
            let (i, j) = self.pairs[bit];
            let d = self.graph.change_stats_unchecked(i, j);
            let added = self.graph.toggle_unchecked(i, j);
            self.stats.apply(d, added);
            self.mask ^= 1 << bit;
        }
        self.emitted += 1;
        Some((self.mask, self.stats))
    }
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else if n == 0 {
        Err(Error::EmptyGraph)
    } else {
        Ok(())
    }
}

pub fn enumerate_stats(n: usize) -> Result<GraphEnumeration> {
    enumerate_stats_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_stats_with_limit(n: usize, limit: usize) -> Result<GraphEnumeration> {
    check_limit(n, limit)?;
    GraphEnumeration::new(n)
}

/// Distinct statistic triples on `n` vertices with their multiplicities.
/// Build once and reuse across parameter values.
#[derive(Debug, Clone)]
pub struct ExactModel {
    n: usize,
    classes: Vec<(SufficientStats, u64)>,
}

impl ExactModel {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_limit(n, DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn with_limit(n: usize, limit: usize) -> Result<Self> {
        let mut hist: BTreeMap<SufficientStats, u64> = BTreeMap::new();
        for (_, s) in enumerate_stats_with_limit(n, limit)? {
            *hist.entry(s).or_default() += 1;
        }
        Ok(ExactModel {
            n,
            classes: hist.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[(SufficientStats, u64)] {
        &self.classes
    }

    fn log_terms(&self, p: &NaturalParams) -> (Vec<f64>, f64) {
        let terms: Vec<f64> = self
            .classes
            .iter()
            .map(|(s, m)| log_weight(p, s) + (*m as f64).ln())
            .collect();
        let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (terms, max)
    }

    pub fn log_partition(&self, p: &NaturalParams) -> f64 {
        let (terms, max) = self.log_terms(p);
        max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
    }

    /// `A(θ)` together with the exact moments.
    pub fn log_partition_and_moments(&self, p: &NaturalParams) -> (f64, MomentsVector) {
        let (terms, max) = self.log_terms(p);
        let mut z = 0.0;
        let mut acc = [0.0; 3];
        for ((s, _), t) in self.classes.iter().zip(&terms) {
            let w = (t - max).exp();
            z += w;
            for (a, x) in acc.iter_mut().zip(s.as_f64()) {
                *a += w * x;
            }
        }
        let a = max + z.ln();
        (a, MomentsVector::new(acc[0] / z, acc[1] / z, acc[2] / z))
    }

    pub fn moments(&self, p: &NaturalParams) -> MomentsVector {
        self.log_partition_and_moments(p).1
    }

    /// `θ·μ̂ − A(θ)`.
    pub fn log_likelihood(&self, p: &NaturalParams, empirical: &MomentsVector) -> f64 {
        p.dot(empirical.as_array()) - self.log_partition(p)
    }
}

pub fn log_partition(p: &NaturalParams, n: usize) -> Result<PartitionResult> {
    p.check_finite()?;
    Ok(PartitionResult {
        log_partition: ExactModel::new(n)?.log_partition(p),
        n,
    })
}

pub fn exact_moments(p: &NaturalParams, n: usize) -> Result<MomentsVector> {
    p.check_finite()?;
    Ok(ExactModel::new(n)?.moments(p))
}

/// Probability of every labelled graph, indexed by pair mask.
pub fn exact_distribution(p: &NaturalParams, n: usize) -> Result<Vec<f64>> {
    p.check_finite()?;
    check_limit(n, DISTRIBUTION_LIMIT)?;
    let mut logw = Vec::new();
    for (mask, s) in GraphEnumeration::new(n)? {
        logw.push((mask, log_weight(p, &s)));
    }
    let max = logw.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
    let z: f64 = logw.iter().map(|x| (x.1 - max).exp()).sum();
    let mut probs = vec![0.0; logw.len()];
    for (mask, lw) in logw {
        probs[mask as usize] = (lw - max).exp() / z;
    }
    Ok(probs)
}

/// Exact maximum-likelihood estimation by fixed-step gradient ascent
/// `θ ← θ + γ(μ̂ − μ(θ))` with enumerated moments.
pub fn mlle_exact(
    empirical: &MomentsVector,
    n: usize,
    cfg: &GradientAscentConfig,
) -> Result<EstimateResult> {
    check_limit(n, DEFAULT_ENUMERATION_LIMIT)?;
    empirical.check_attainable(n, true)?;
    let model = ExactModel::new(n)?;
    let target = empirical.as_array();
    gradient_ascent(cfg, Method::MlleExact, |_, theta| {
        let (a, mu) = model.log_partition_and_moments(theta);
        let mu = mu.as_array();
        Ok(Evaluation {
            gradient: [target[0] - mu[0], target[1] - mu[1], target[2] - mu[2]],
            objective: Some(theta.dot(target) - a),
        })
    })
}
