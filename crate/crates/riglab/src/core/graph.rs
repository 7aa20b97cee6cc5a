use serde::{Deserialize, Serialize};

use crate::core::family::IntervalFamily;
use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n` with bit-row adjacency.
///
/// Rows are `ceil(n/64)` words each, so degree is a popcount, neighborhood
/// intersection is a word-wise AND, and BFS expands a whole frontier with
/// OR loops. No self-loops; the matrix is kept symmetric by construction
/// and the type is immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    row_words: usize,
    bits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    pub(crate) fn new_empty(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::domain("graph must have at least one vertex"));
        }
        let row_words = n.div_ceil(64);
        Ok(Graph {
            n,
            row_words,
            bits: vec![0u64; n * row_words],
        })
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize) {
        debug_assert!(i != j && i < self.n && j < self.n);
        self.bits[i * self.row_words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.row_words + i / 64] |= 1 << (i % 64);
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new_empty(n)?;
        for (i, j) in edges {
            if i == j {
                return Err(Error::domain(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::domain(format!(
                    "edge ({i}, {j}) out of range for n = {n}"
                )));
            }
            g.set_edge(i, j);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::new_empty(n)?;
        for i in 0..n {
            for j in (i + 1)..n {
                g.set_edge(i, j);
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.row_words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Adjacency row of vertex `i` as bit words.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.row_words..(i + 1) * self.row_words]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = self.bits.iter().map(|w| w.count_ones() as u64).sum();
        total / 2
    }

    /// Edges as (i, j) with i < j, sorted lexicographically.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count() as usize);
        for i in 0..self.n {
            for (w, &word) in self.row(i).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let j = w * 64 + word.trailing_zeros() as usize;
                    if j > i {
                        out.push((i as u32, j as u32));
                    }
                    word &= word - 1;
                }
            }
        }
        out
    }

    pub fn degree_summary(&self) -> DegreeSummary {
        let degrees = self.degrees();
        let min = *degrees.iter().min().expect("graph is non-empty");
        let max = *degrees.iter().max().expect("graph is non-empty");
        let mean = degrees.iter().sum::<usize>() as f64 / degrees.len() as f64;
        DegreeSummary {
            degrees,
            min,
            max,
            mean,
        }
    }

    /// True iff some vertex is adjacent to every other, i.e. the maximum
    /// degree attains n - 1. (n = 0 graphs are unconstructible, so the
    /// degenerate case cannot arise.)
    pub fn has_universal_vertex(&self) -> bool {
        (0..self.n).any(|i| self.degree(i) == self.n - 1)
    }
}

/// Degree list with its extremes: `min` is the minimum degree, `max` the
/// maximum degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSummary {
    pub degrees: Vec<usize>,
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Graph> {
        Graph::from_edges(
            repr.n,
            repr.edges.iter().map(|&(i, j)| (i as usize, j as usize)),
        )
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> GraphRepr {
        GraphRepr {
            n: g.n,
            edges: g.edges(),
        }
    }
}

/// Parses a graph from its JSON form `{"n": ..., "edges": [[i,j], ...]}`.
pub fn graph_from_json(text: &str) -> Result<Graph> {
    Ok(serde_json::from_str(text)?)
}

/// Serializes a graph to its JSON form; edges come out as i < j pairs in
/// lexicographic order.
pub fn graph_to_json(graph: &Graph) -> String {
    serde_json::to_string(graph).expect("graph serialization cannot fail")
}

/// Intersection graph of an interval family via an endpoint sweep:
/// O(n log n + |E|). Opening an interval links it to every currently open
/// interval; the closed-interval convention is honored by processing opens
/// before closes at equal coordinates.
pub fn graph_from_intervals(family: &IntervalFamily) -> Graph {
    let n = family.n();
    // (coordinate, is_close, vertex); sort puts opens first on ties
    let mut events: Vec<(f64, bool, u32)> = Vec::with_capacity(2 * n);
    for (v, iv) in family.intervals().iter().enumerate() {
        events.push((iv.lo(), false, v as u32));
        events.push((iv.hi(), true, v as u32));
    }
    events.sort_unstable_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("finite endpoints")
            .then(a.1.cmp(&b.1))
    });

    let mut g = Graph::new_empty(n).expect("families are non-empty");
    let mut active: Vec<u32> = Vec::new();
    let mut pos = vec![usize::MAX; n];
    for (_, is_close, v) in events {
        if !is_close {
            for &u in &active {
                g.set_edge(v as usize, u as usize);
            }
            pos[v as usize] = active.len();
            active.push(v);
        } else {
            let idx = pos[v as usize];
            let last = *active.last().expect("closing an open interval");
            active.swap_remove(idx);
            if idx < active.len() {
                pos[last as usize] = idx;
            }
            pos[v as usize] = usize::MAX;
        }
    }
    g
}

/// O(n^2) pairwise reference construction, retained for cross-checking the
/// sweep.
pub fn graph_from_intervals_naive(family: &IntervalFamily) -> Graph {
    let n = family.n();
    let mut g = Graph::new_empty(n).expect("families are non-empty");
    for i in 0..n {
        for j in (i + 1)..n {
            if family[i].intersects(&family[j]) {
                g.set_edge(i, j);
            }
        }
    }
    g
}
