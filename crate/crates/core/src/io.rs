//! Plain-text graph formats and the bundled Florentine fixture.
//!
//! Adjacency files hold `n` lines of `n` whitespace-separated `0`/`1`
//! tokens. Edge-list files hold one `i j` pair (0-based) per line. In both,
//! blank lines and lines starting with `#` are ignored and CRLF is accepted.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Business ties among 16 Renaissance Florentine families.
pub const FLORENTINE_ADJ: &str = include_str!("../fixtures/florentine.adj");

pub fn florentine() -> Graph {
    parse_adjacency(FLORENTINE_ADJ).expect("bundled fixture is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFileFormat {
    AdjacencyMatrix,
    EdgeList,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_adjacency(text: &str) -> Result<Graph> {
    let mut rows: Vec<(usize, Vec<bool>)> = Vec::new();
    for (line, l) in content_lines(text) {
        let row = l
            .split_whitespace()
            .map(|tok| match tok {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse {
                    line,
                    msg: format!("expected 0 or 1, found {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((line, row));
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: "no matrix rows found".into(),
        });
    }
    if let Some((line, row)) = rows.iter().find(|(_, r)| r.len() != n) {
        return Err(Error::Parse {
            line: *line,
            msg: format!("row has {} entries, expected {n}", row.len()),
        });
    }
    let matrix: Vec<Vec<bool>> = rows.into_iter().map(|(_, r)| r).collect();
    Graph::from_matrix(&matrix)
}

pub fn parse_edge_list(text: &str, n: usize) -> Result<Graph> {
    let mut g = Graph::try_empty(n)?;
    for (line, l) in content_lines(text) {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected two vertex indices, found {} tokens", toks.len()),
            });
        }
        let parse = |t: &str| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid vertex index {t:?}"),
            })
        };
        let (i, j) = (parse(toks[0])?, parse(toks[1])?);
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        if !g.has_edge(i, j)? {
            g.toggle(i, j)?;
        }
    }
    Ok(g)
}

pub fn write_adjacency(g: &Graph) -> String {
    let mut out = String::new();
    for row in g.to_matrix() {
        let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (i, j) in g.edges() {
        writeln!(out, "{i} {j}").unwrap();
    }
    out
}

/// Reads a graph file. Edge lists need `n`; adjacency files infer it.
pub fn read_graph(path: &Path, format: GraphFileFormat, n: Option<usize>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    match format {
        GraphFileFormat::AdjacencyMatrix => parse_adjacency(&text),
        GraphFileFormat::EdgeList => {
            let n = n.ok_or_else(|| Error::InvalidConfig("edge-list input needs --n".into()))?;
            parse_edge_list(&text, n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SufficientStats;
    use proptest::prelude::*;

    #[test]
    fn florentine_fixture() {
        let g = florentine();
        assert_eq!(g.n(), 16);
        assert_eq!(g.suff_stats(), SufficientStats::new(20, 47, 3));
        assert_eq!(g.degree(8).unwrap(), 6);
    }

    #[test]
    fn adjacency_examples() {
        let g = parse_adjacency("0 1\n1 0").unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(
            parse_adjacency("0 1\n0 0"),
            Err(Error::AsymmetricEntry { i: 0, j: 1 })
        );
        assert_eq!(parse_adjacency("# c\r\n0 1\r\n1 0\r\n").unwrap(), g);
        assert!(matches!(
            parse_adjacency("0 1\n1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_adjacency("0 1 0\n1 0\n0 0 0"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_adjacency("# only a comment\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list("0 1\n1 2", 3).unwrap();
        assert_eq!(g.suff_stats(), SufficientStats::new(2, 1, 0));
        assert_eq!(parse_edge_list("", 5).unwrap(), Graph::empty(5));
        assert_eq!(parse_edge_list("2 2", 5), Err(Error::SelfLoop(2)));
        assert_eq!(
            parse_edge_list("0 1\n1 0\n0 1 # dup\n", 3)
                .unwrap()
                .edge_count(),
            1
        );
        assert!(matches!(
            parse_edge_list("0 7", 5),
            Err(Error::VertexOutOfRange { vertex: 7, n: 5 })
        ));
        assert!(matches!(
            parse_edge_list("0 1\nx 2", 5),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    proptest! {
        #[test]
        fn formats_round_trip(n in 1usize..20, bits in prop::collection::vec(any::<bool>(), 190)) {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if bits[k] { g.toggle(i, j).unwrap(); }
                    k += 1;
                }
            }
            prop_assert_eq!(&parse_adjacency(&write_adjacency(&g)).unwrap(), &g);
            prop_assert_eq!(&parse_edge_list(&write_edge_list(&g), n).unwrap(), &g);
        }
    }
}
