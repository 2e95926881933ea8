//! Simple undirected graphs, subgraph counts and change statistics.
//!
//! Adjacency is stored as one bitset row per vertex so that membership is
//! O(1) and common-neighbour counts are a word-wise AND + popcount. Degrees
//! are cached and kept in sync by [`Graph::toggle`].

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    degrees: Vec<u32>,
}

/// Edge, 2-star and triangle counts `(E, S2, T)`.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct SufficientStats {
    pub edges: u64,
    pub two_stars: u64,
    pub triangles: u64,
}

/// Difference of [`SufficientStats`] between the graph with a given pair
/// present and absent. `d_edges` is always 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChangeStats {
    pub d_edges: u64,
    pub d_two_stars: u64,
    pub d_triangles: u64,
}

impl SufficientStats {
    pub const ZERO: SufficientStats = SufficientStats {
        edges: 0,
        two_stars: 0,
        triangles: 0,
    };

    pub fn new(edges: u64, two_stars: u64, triangles: u64) -> Self {
        SufficientStats {
            edges,
            two_stars,
            triangles,
        }
    }

    pub fn as_f64(&self) -> [f64; 3] {
        [
            self.edges as f64,
            self.two_stars as f64,
            self.triangles as f64,
        ]
    }

    /// Maximum attainable counts on `n` vertices: `(C(n,2), n*C(n-1,2), C(n,3))`.
    pub fn maxima(n: usize) -> SufficientStats {
        let n = n as u64;
        let c2 = |k: u64| if k < 2 { 0 } else { k * (k - 1) / 2 };
        let c3 = |k: u64| if k < 3 { 0 } else { k * (k - 1) * (k - 2) / 6 };
        SufficientStats {
            edges: c2(n),
            two_stars: if n == 0 { 0 } else { n * c2(n - 1) },
            triangles: c3(n),
        }
    }

    pub(crate) fn apply(&mut self, delta: ChangeStats, adding: bool) {
        if adding {
            *self = *self + delta;
        } else {
            *self = *self - delta;
        }
    }
}

impl Add<ChangeStats> for SufficientStats {
    type Output = SufficientStats;

    fn add(self, d: ChangeStats) -> SufficientStats {
        SufficientStats {
            edges: self.edges + d.d_edges,
            two_stars: self.two_stars + d.d_two_stars,
            triangles: self.triangles + d.d_triangles,
        }
    }
}

impl Sub<ChangeStats> for SufficientStats {
    type Output = SufficientStats;

    fn sub(self, d: ChangeStats) -> SufficientStats {
        SufficientStats {
            edges: self.edges - d.d_edges,
            two_stars: self.two_stars - d.d_two_stars,
            triangles: self.triangles - d.d_triangles,
        }
    }
}

impl ChangeStats {
    pub fn as_f64(&self) -> [f64; 3] {
        [
            self.d_edges as f64,
            self.d_two_stars as f64,
            self.d_triangles as f64,
        ]
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n == 0`; use
    /// [`Graph::try_empty`] for a fallible version.
    pub fn empty(n: usize) -> Graph {
        Graph::try_empty(n).expect("graph needs at least one vertex")
    }

    pub fn try_empty(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let words = n.div_ceil(WORD);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
            degrees: vec![0; n],
        })
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.set_unchecked(i, j, true);
            }
        }
        g
    }

    /// Builds a graph from a square 0/1 matrix, checking symmetry and the
    /// zero diagonal.
    pub fn from_matrix<R: AsRef<[bool]>>(entries: &[R]) -> Result<Graph> {
        let n = entries.len();
        let mut g = Graph::try_empty(n)?;
        for (row, r) in entries.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::NonSquare {
                    row,
                    expected: n,
                    found: r.len(),
                });
            }
        }
        for i in 0..n {
            if entries[i].as_ref()[i] {
                return Err(Error::NonzeroDiagonal(i));
            }
            for j in (i + 1)..n {
                let a = entries[i].as_ref()[j];
                if a != entries[j].as_ref()[i] {
                    return Err(Error::AsymmetricEntry { i, j });
                }
                if a {
                    g.set_unchecked(i, j, true);
                }
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::try_empty(n)?;
        for &(i, j) in edges {
            g.check_pair(i, j)?;
            g.set_unchecked(i, j, true);
        }
        Ok(g)
    }

    /// Builds the graph whose edges are the set bits of `mask`, where bit `k`
    /// corresponds to the `k`-th pair in lexicographic `(i < j)` order.
    pub fn from_pair_mask(n: usize, mask: u64) -> Graph {
        let mut g = Graph::empty(n);
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if mask >> k & 1 == 1 {
                    g.set_unchecked(i, j, true);
                }
                k += 1;
            }
        }
        g
    }

    /// Inverse of [`Graph::from_pair_mask`]. Only meaningful for `C(n,2) <= 64`.
    pub fn pair_mask(&self) -> u64 {
        let mut mask = 0u64;
        let mut k = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge_unchecked(i, j) {
                    mask |= 1 << k;
                }
                k += 1;
            }
        }
        mask
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_pairs(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        Ok(())
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub(crate) fn has_edge_unchecked(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn has_edge(&self, i: usize, j: usize) -> Result<bool> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        Ok(i != j && self.has_edge_unchecked(i, j))
    }

    fn set_unchecked(&mut self, i: usize, j: usize, present: bool) {
        if self.has_edge_unchecked(i, j) == present {
            return;
        }
        self.flip_unchecked(i, j);
    }

    #[inline]
    fn flip_unchecked(&mut self, i: usize, j: usize) -> bool {
        let w = self.words;
        self.rows[i * w + j / WORD] ^= 1 << (j % WORD);
        self.rows[j * w + i / WORD] ^= 1 << (i % WORD);
        let now = self.has_edge_unchecked(i, j);
        if now {
            self.degrees[i] += 1;
            self.degrees[j] += 1;
        } else {
            self.degrees[i] -= 1;
            self.degrees[j] -= 1;
        }
        now
    }

    /// Flips pair `(i, j)` in place and returns whether the edge is now present.
    pub fn toggle(&mut self, i: usize, j: usize) -> Result<bool> {
        self.check_pair(i, j)?;
        Ok(self.flip_unchecked(i, j))
    }

    #[inline]
    pub(crate) fn toggle_unchecked(&mut self, i: usize, j: usize) -> bool {
        self.flip_unchecked(i, j)
    }

    /// Copy of the graph with pair `(i, j)` flipped.
    pub fn toggle_edge(&self, i: usize, j: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.toggle(i, j)?;
        Ok(g)
    }

    pub fn degree(&self, i: usize) -> Result<usize> {
        self.check_vertex(i)?;
        Ok(self.degrees[i] as usize)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.degrees.iter().map(|&d| d as usize)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * WORD + b)
            })
        })
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| {
                self.neighbors(i)
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    pub fn edge_count(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum::<u64>() / 2
    }

    #[inline]
    pub(crate) fn common_neighbors_unchecked(&self, i: usize, j: usize) -> u64 {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    pub fn common_neighbors(&self, i: usize, j: usize) -> Result<u64> {
        self.check_pair(i, j)?;
        Ok(self.common_neighbors_unchecked(i, j))
    }

    /// Exact `(E, S2, T)`.
    pub fn suff_stats(&self) -> SufficientStats {
        let mut edges = 0u64;
        let mut two_stars = 0u64;
        let mut closed = 0u64;
        for i in 0..self.n {
            let d = self.degrees[i] as u64;
            edges += d;
            two_stars += d * d.saturating_sub(1) / 2;
            for j in self.neighbors(i).filter(|&j| j > i) {
                closed += self.common_neighbors_unchecked(i, j);
            }
        }
        // Each triangle is seen once per each of its three edges.
        SufficientStats {
            edges: edges / 2,
            two_stars,
            triangles: closed / 3,
        }
    }

    #[inline]
    pub(crate) fn change_stats_unchecked(&self, i: usize, j: usize) -> ChangeStats {
        let present = self.has_edge_unchecked(i, j) as u64;
        let di = self.degrees[i] as u64 - present;
        let dj = self.degrees[j] as u64 - present;
        ChangeStats {
            d_edges: 1,
            d_two_stars: di + dj,
            d_triangles: self.common_neighbors_unchecked(i, j),
        }
    }

    /// Statistics of the graph with `(i, j)` present minus with it absent.
    /// Independent of the current state of `(i, j)`.
    pub fn change_stats(&self, i: usize, j: usize) -> Result<ChangeStats> {
        self.check_pair(i, j)?;
        Ok(self.change_stats_unchecked(i, j))
    }

    /// Adjacency as a dense boolean matrix.
    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.has_edge_unchecked(i, j)).collect())
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

pub fn validate_graph<R: AsRef<[bool]>>(entries: &[R]) -> Result<Graph> {
    Graph::from_matrix(entries)
}

pub fn suff_stats(g: &Graph) -> SufficientStats {
    g.suff_stats()
}

pub fn change_stats(g: &Graph, i: usize, j: usize) -> Result<ChangeStats> {
    g.change_stats(i, j)
}

pub fn toggle_edge(g: &Graph, i: usize, j: usize) -> Result<Graph> {
    g.toggle_edge(i, j)
}

pub fn degree(g: &Graph, i: usize) -> Result<usize> {
    g.degree(i)
}
