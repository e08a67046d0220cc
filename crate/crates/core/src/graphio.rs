//! Graph and matrix ingestion: graph6, DIMACS edge lists, plain-matrix
//! text, adjacency matrices and small-graph enumeration.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::oracle::brute_force_similar;
use crate::ring::Integers;

/// Largest vertex count `enumerate_graphs` will walk (2^21 labeled graphs).
pub const ENUMERATION_CEILING: usize = 7;

/// Largest vertex count the short graph6 form can express.
pub const GRAPH6_SHORT_MAX: usize = 62;

/// Simple undirected graph on vertices `0..n`, stored as packed adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            for u in 0..v {
                g.set(u, v, true);
            }
        }
        g
    }

    /// Cycle 0 - 1 - ... - (n-1) - 0; needs n >= 3.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.set(0, n - 1, true);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.set(v - 1, v, true);
        }
        g
    }

    /// Star K_{1,leaves} with center 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::empty(leaves + 1);
        for v in 1..=leaves {
            g.set(0, v, true);
        }
        g
    }

    /// Vertices of `other` are renumbered after those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set(u + self.n, v + self.n, true);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::IndexOutOfRange { index: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Parse {
                line: 0,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        self.set(u, v, true);
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.bits[a * self.words + b / 64];
            if on {
                *w |= 1 << (b % 64);
            } else {
                *w &= !(1 << (b % 64));
            }
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.bits[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in graph6 bit order (by `v`, then `u`).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |v| (0..v).filter(move |&u| self.has_edge(u, v)).map(move |u| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Graph whose upper-triangle bits, in graph6 order, are the low bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::empty(n);
        let mut bit = 0;
        for v in 1..n {
            for u in 0..v {
                if mask >> bit & 1 == 1 {
                    g.set(u, v, true);
                }
                bit += 1;
            }
        }
        g
    }

    /// Encodes in short-form graph6 (n <= 62).
    pub fn to_graph6(&self) -> Result<String> {
        if self.n > GRAPH6_SHORT_MAX {
            return Err(Error::Graph6(format!(
                "n = {} needs the long form, which is not supported",
                self.n
            )));
        }
        let mut out = String::new();
        out.push((self.n as u8 + 63) as char);
        let mut acc = 0u8;
        let mut filled = 0;
        for v in 1..self.n {
            for u in 0..v {
                acc = acc << 1 | self.has_edge(u, v) as u8;
                filled += 1;
                if filled == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((acc << (6 - filled)) + 63) as char);
        }
        Ok(out)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Parses one short-form graph6 line. An optional `>>graph6<<` header is skipped.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\r', '\n']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("character {bad:#04x} outside [63, 126]")));
    }
    let Some((&head, body)) = bytes.split_first() else {
        return Err(Error::Graph6("empty line".into()));
    };
    if head == 126 {
        return Err(Error::Graph6("long-form vertex counts (n >= 63) are not supported".into()));
    }
    let n = (head - 63) as usize;
    if n == 0 {
        return Err(Error::Graph6("graph has no vertices".into()));
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "n = {n} needs {expected} data characters, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.set(u, v, true);
            }
            k += 1;
        }
    }
    if (nbits..expected * 6).any(bit) {
        return Err(Error::Graph6("non-zero padding bits".into()));
    }
    Ok(g)
}

/// Parses every non-empty line of a graph6 file.
pub fn parse_graph6_file(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l.trim()).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })
        })
        .collect()
}

/// Plain-matrix text: `n`, then `n` rows of `n` whitespace-separated integers.
pub fn parse_matrix_text(text: &str) -> Result<IntMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing dimension line".into(),
    })?;
    let n: i64 = header.parse().map_err(|_| Error::Parse {
        line: first,
        msg: format!("dimension {header:?} is not an integer"),
    })?;
    if n <= 0 {
        return Err(Error::Parse {
            line: first,
            msg: format!("dimension must be positive, got {n}"),
        });
    }
    let n = n as usize;
    let mut rows = Vec::with_capacity(n);
    for (line, text) in lines {
        if rows.len() == n {
            return Err(Error::Parse {
                line,
                msg: format!("more than {n} rows"),
            });
        }
        let row = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("{tok:?} is not an integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("row-length mismatch: expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: first,
            msg: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    IntMatrix::from_rows(Integers, rows)
}

/// DIMACS edge format: `c` comment lines, one `p edge n m` header and
/// 1-indexed `e u v` lines. Repeated edges collapse.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if toks.len() != 4 || toks[1] != "edge" {
                    return Err(err(format!("expected `p edge n m`, found {line:?}")));
                }
                let n: usize = toks[2].parse().map_err(|_| err(format!("bad vertex count {:?}", toks[2])))?;
                toks[3].parse::<usize>().map_err(|_| err(format!("bad edge count {:?}", toks[3])))?;
                if n == 0 {
                    return Err(err("graph has no vertices".into()));
                }
                graph = Some(Graph::empty(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| err("edge before problem line".into()))?;
                if toks.len() != 3 {
                    return Err(err(format!("expected `e u v`, found {line:?}")));
                }
                let vertex = |t: &str| -> Result<usize> {
                    match t.parse::<usize>() {
                        Ok(v) if (1..=g.n()).contains(&v) => Ok(v - 1),
                        _ => Err(err(format!("vertex {t:?} not in 1..={}", g.n()))),
                    }
                };
                let (u, v) = (vertex(toks[1])?, vertex(toks[2])?);
                g.add_edge(u, v).map_err(|e| err(e.to_string()))?;
            }
            Some(other) => return Err(err(format!("unknown line type {other:?}"))),
        }
    }
    graph.ok_or(Error::Parse {
        line: 1,
        msg: "missing `p edge` line".into(),
    })
}

/// Symmetric 0/1 matrix with zero diagonal.
pub fn adjacency_matrix(g: &Graph) -> IntMatrix {
    IntMatrix::from_i64_fn(g.n(), |i, j| g.has_edge(i, j) as i64)
}

/// Every labeled graph on `n` vertices, in increasing bitmask order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > ENUMERATION_CEILING {
        return Err(Error::EnumerationCeiling {
            n,
            limit: ENUMERATION_CEILING,
        });
    }
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let total = 1u64 << (n * (n - 1) / 2);
    Ok((0..total).map(move |mask| Graph::from_mask(n, mask)))
}

/// Keeps the first graph of each isomorphism class, in input order.
///
/// Candidates are bucketed by degree sequence; the brute-force oracle then
/// decides isomorphism within a bucket.
pub fn dedup_isomorphic(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut reps: Vec<(Graph, IntMatrix)> = Vec::new();
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for g in graphs {
        let adj = adjacency_matrix(&g);
        let bucket = buckets.entry(g.degree_sequence()).or_default();
        let seen = bucket.iter().any(|&r| {
            reps[r].0.n() == g.n()
                && brute_force_similar(&reps[r].1, &adj, true)
                    .expect("sizes match")
                    .is_some()
        });
        if !seen {
            bucket.push(reps.len());
            reps.push((g, adj));
        }
    }
    reps.into_iter().map(|(g, _)| g).collect()
}

/// One representative per isomorphism class on `n` vertices, each the
/// smallest labeled mask in its class.
pub fn isomorphism_classes(n: usize) -> Result<Vec<Graph>> {
    Ok(dedup_isomorphic(enumerate_graphs(n)?))
}
