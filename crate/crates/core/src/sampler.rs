//! Metropolis-Hastings sampling of graphs from the p-star model.
//!
//! Each step proposes flipping a uniformly random unordered pair and accepts
//! with probability `min(1, P(X')/P(X))`, evaluated from change statistics
//! so the partition function never appears. Running statistics are updated
//! incrementally.

use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, SufficientStats};
use crate::model::NaturalParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    Empty,
    /// Erdős–Rényi graph with the given edge probability.
    Random(f64),
    Given(#[serde(with = "edge_list_graph")] Graph),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n: usize,
    pub burn_in: u64,
    pub thinning: u64,
    pub num_samples: usize,
    pub seed: u64,
    pub initial: InitialState,
}

impl SamplerConfig {
    /// Defaults: burn-in `ceil(10·n²·ln n)`, thinning `n²`, Erdős–Rényi(0.5)
    /// start.
    pub fn new(n: usize, num_samples: usize, seed: u64) -> Self {
        SamplerConfig {
            n,
            burn_in: default_burn_in(n),
            thinning: (n * n).max(1) as u64,
            num_samples,
            seed,
            initial: InitialState::Random(0.5),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!(
                "sampler needs n >= 2, got {}",
                self.n
            )));
        }
        if self.thinning == 0 {
            return Err(Error::InvalidConfig("thinning must be >= 1".into()));
        }
        if self.num_samples == 0 {
            return Err(Error::InvalidConfig("num_samples must be >= 1".into()));
        }
        match &self.initial {
            InitialState::Random(p) if !(0.0..=1.0).contains(p) => Err(Error::InvalidConfig(
                format!("initial edge probability {p} not in [0, 1]"),
            )),
            InitialState::Given(g) if g.n() != self.n => Err(Error::InvalidConfig(format!(
                "initial graph has {} vertices, expected {}",
                g.n(),
                self.n
            ))),
            _ => Ok(()),
        }
    }
}

pub fn default_burn_in(n: usize) -> u64 {
    let nf = n as f64;
    (10.0 * nf * nf * nf.ln()).ceil().max(0.0) as u64
}

/// Generator for chain `index` of a run seeded with `seed`.
pub fn chain_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub graphs: Vec<Graph>,
    pub stats: Vec<SufficientStats>,
    pub config: SamplerConfig,
    pub params: NaturalParams,
}

impl SampleSet {
    /// Wraps externally obtained graphs (e.g. one observed network).
    pub fn from_graphs(graphs: Vec<Graph>) -> Result<SampleSet> {
        let n = graphs.first().ok_or(Error::EmptyDataset)?.n();
        if let Some(g) = graphs.iter().find(|g| g.n() != n) {
            return Err(Error::InvalidConfig(format!(
                "dataset mixes graphs on {} and {} vertices",
                n,
                g.n()
            )));
        }
        let stats = graphs.iter().map(Graph::suff_stats).collect();
        let num_samples = graphs.len();
        Ok(SampleSet {
            graphs,
            stats,
            config: SamplerConfig {
                n,
                burn_in: 0,
                thinning: 1,
                num_samples,
                seed: 0,
                initial: InitialState::Empty,
            },
            params: NaturalParams::ZERO,
        })
    }

    pub fn n(&self) -> usize {
        self.config.n
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}

/// `min{1, P(X')/P(X)}` for flipping pair `(i, j)` of `g`.
pub fn acceptance_prob(p: &NaturalParams, g: &Graph, i: usize, j: usize) -> Result<f64> {
    let d = g.change_stats(i, j)?;
    let adding = !g.has_edge_unchecked(i, j);
    Ok(acceptance_from_delta(p, d.as_f64(), adding))
}

#[inline]
fn acceptance_from_delta(p: &NaturalParams, d: [f64; 3], adding: bool) -> f64 {
    let log_ratio = if adding { p.dot(d) } else { -p.dot(d) };
    if log_ratio >= 0.0 {
        1.0
    } else {
        log_ratio.exp()
    }
}

/// One Metropolis-Hastings step on `graph`, keeping `stats` in sync.
/// Returns whether the proposal was accepted.
pub fn mh_step<R: Rng + ?Sized>(
    graph: &mut Graph,
    stats: &mut SufficientStats,
    p: &NaturalParams,
    rng: &mut R,
) -> bool {
    let n = graph.n();
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    let d = graph.change_stats_unchecked(i, j);
    let adding = !graph.has_edge_unchecked(i, j);
    let a = acceptance_from_delta(p, d.as_f64(), adding);
    let u: f64 = rng.random();
    if u <= a {
        graph.toggle_unchecked(i, j);
        stats.apply(d, adding);
        true
    } else {
        false
    }
}

/// A single Markov chain with its running statistics.
pub struct Chain {
    graph: Graph,
    stats: SufficientStats,
    params: NaturalParams,
    rng: ChaCha8Rng,
    accepted: u64,
    steps: u64,
}

impl Chain {
    pub fn new(p: NaturalParams, cfg: &SamplerConfig, index: u64) -> Result<Chain> {
        p.check_finite()?;
        cfg.validate()?;
        let mut rng = chain_rng(cfg.seed, index);
        let graph = match &cfg.initial {
            InitialState::Empty => Graph::empty(cfg.n),
            InitialState::Given(g) => g.clone(),
            InitialState::Random(p0) => {
                let mut g = Graph::empty(cfg.n);
                for i in 0..cfg.n {
                    for j in (i + 1)..cfg.n {
                        if rng.random::<f64>() < *p0 {
                            g.toggle_unchecked(i, j);
                        }
                    }
                }
                g
            }
        };
        Ok(Chain {
            stats: graph.suff_stats(),
            graph,
            params: p,
            rng,
            accepted: 0,
            steps: 0,
        })
    }

    pub fn step(&mut self) -> bool {
        self.steps += 1;
        let acc = mh_step(
            &mut self.graph,
            &mut self.stats,
            &self.params,
            &mut self.rng,
        );
        self.accepted += acc as u64;
        acc
    }

    pub fn advance(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn stats(&self) -> SufficientStats {
        self.stats
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            self.accepted as f64 / self.steps as f64
        }
    }
}

/// Runs `burn_in + thinning·N` steps and hands every kept state to `visit`
/// without storing it.
pub fn run_chain_with<F>(
    p: &NaturalParams,
    cfg: &SamplerConfig,
    index: u64,
    mut visit: F,
) -> Result<Chain>
where
    F: FnMut(usize, &Graph, SufficientStats),
{
    let mut chain = Chain::new(*p, cfg, index)?;
    chain.advance(cfg.burn_in);
    for k in 0..cfg.num_samples {
        chain.advance(cfg.thinning);
        visit(k, &chain.graph, chain.stats);
    }
    Ok(chain)
}

pub fn run_chain(p: &NaturalParams, cfg: &SamplerConfig) -> Result<SampleSet> {
    run_indexed_chain(p, cfg, 0)
}

fn run_indexed_chain(p: &NaturalParams, cfg: &SamplerConfig, index: u64) -> Result<SampleSet> {
    let mut graphs = Vec::with_capacity(cfg.num_samples);
    let mut stats = Vec::with_capacity(cfg.num_samples);
    run_chain_with(p, cfg, index, |_, g, s| {
        graphs.push(g.clone());
        stats.push(s);
    })?;
    Ok(SampleSet {
        graphs,
        stats,
        config: cfg.clone(),
        params: *p,
    })
}

/// Runs `chains` independent chains concurrently, each producing
/// `cfg.num_samples` samples, and concatenates them in chain order.
pub fn run_chains(p: &NaturalParams, cfg: &SamplerConfig, chains: usize) -> Result<SampleSet> {
    if chains == 0 {
        return Err(Error::InvalidConfig("need at least one chain".into()));
    }
    if chains == 1 {
        return run_chain(p, cfg);
    }
    let parts: Vec<Result<SampleSet>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..chains)
            .map(|c| scope.spawn(move || run_indexed_chain(p, cfg, c as u64)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampler thread panicked"))
            .collect()
    });
    let mut out = SampleSet {
        graphs: Vec::new(),
        stats: Vec::new(),
        config: SamplerConfig {
            num_samples: cfg.num_samples * chains,
            ..cfg.clone()
        },
        params: *p,
    };
    for part in parts {
        let part = part?;
        out.graphs.extend(part.graphs);
        out.stats.extend(part.stats);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON-lines serialisation

#[derive(Serialize, Deserialize)]
struct Provenance {
    record: String,
    config: SamplerConfig,
    params: NaturalParams,
}

#[derive(Serialize, Deserialize)]
struct SampleRecord {
    index: usize,
    edges: u64,
    two_stars: u64,
    triangles: u64,
    edge_list: Vec<[usize; 2]>,
}

mod edge_list_graph {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        n: usize,
        edge_list: Vec<[usize; 2]>,
    }

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            n: g.n(),
            edge_list: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Graph, D::Error> {
        let r = Repr::deserialize(d)?;
        let edges: Vec<_> = r.edge_list.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(r.n, &edges).map_err(serde::de::Error::custom)
    }
}

/// Provenance header followed by one record per sample.
pub fn write_jsonl<W: Write>(set: &SampleSet, mut w: W) -> Result<()> {
    let header = Provenance {
        record: "provenance".into(),
        config: set.config.clone(),
        params: set.params,
    };
    serde_json::to_writer(&mut w, &header)?;
    writeln!(w)?;
    for (index, (g, s)) in set.graphs.iter().zip(&set.stats).enumerate() {
        let rec = SampleRecord {
            index,
            edges: s.edges,
            two_stars: s.two_stars,
            triangles: s.triangles,
            edge_list: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        };
        serde_json::to_writer(&mut w, &rec)?;
        writeln!(w)?;
    }
    Ok(())
}

/// Reads what [`write_jsonl`] produced; recorded statistics are checked
/// against the edge lists.
pub fn read_jsonl<R: BufRead>(r: R) -> Result<SampleSet> {
    let mut lines = r
        .lines()
        .enumerate()
        .filter(|(_, l)| l.as_ref().map(|s| !s.trim().is_empty()).unwrap_or(true));
    let (_, first) = lines.next().ok_or(Error::EmptyDataset)?;
    let header: Provenance = serde_json::from_str(&first?).map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })?;
    let n = header.config.n;
    let mut graphs = Vec::new();
    let mut stats = Vec::new();
    for (lineno, line) in lines {
        let line = line?;
        let rec: SampleRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: lineno + 1,
            msg: e.to_string(),
        })?;
        let edges: Vec<_> = rec.edge_list.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(n, &edges)?;
        let s = g.suff_stats();
        if s != SufficientStats::new(rec.edges, rec.two_stars, rec.triangles) {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "recorded statistics do not match edge list".into(),
            });
        }
        graphs.push(g);
        stats.push(s);
    }
    if graphs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(SampleSet {
        graphs,
        stats,
        config: header.config,
        params: header.params,
    })
}
