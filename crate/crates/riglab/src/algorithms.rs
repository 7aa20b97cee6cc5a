//! Exact polynomial-time interval-graph invariants and generic graph
//! statistics.
//!
//! The interval-structured routines (clique sweep, greedy chain, greedy
//! coloring, sorted degree counting, diameter-two test) run in O(n log n)
//! straight off the family; the generic ones (BFS diameter, components)
//! work on any [`Graph`]. Each interval routine has a brute-force oracle
//! counterpart in [`crate::oracle`] and the test suites hold them equal.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::core::{Graph, IntervalFamily};

/// One endpoint event of the sweep; opens sort before closes at equal
/// coordinates, matching the closed-interval intersection convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepEvent {
    pub coordinate: f64,
    pub kind: EventKind,
    pub vertex: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EventKind {
    Open,
    Close,
}

/// The 2n endpoint events of a family in sweep order.
pub fn sweep_events(family: &IntervalFamily) -> Vec<SweepEvent> {
    let mut events = Vec::with_capacity(2 * family.n());
    for (v, iv) in family.intervals().iter().enumerate() {
        events.push(SweepEvent {
            coordinate: iv.lo(),
            kind: EventKind::Open,
            vertex: v as u32,
        });
        events.push(SweepEvent {
            coordinate: iv.hi(),
            kind: EventKind::Close,
            vertex: v as u32,
        });
    }
    events.sort_unstable_by(|a, b| {
        a.coordinate
            .partial_cmp(&b.coordinate)
            .expect("finite endpoints")
            .then(a.kind.cmp(&b.kind))
    });
    events
}

/// Clique number via the sweep: pairwise intersecting intervals share a
/// common point, so omega equals the maximum number of intervals covering
/// any single sweep position. O(n log n).
pub fn clique_number(family: &IntervalFamily) -> usize {
    let mut open = 0usize;
    let mut best = 0usize;
    for ev in sweep_events(family) {
        match ev.kind {
            EventKind::Open => {
                open += 1;
                best = best.max(open);
            }
            EventKind::Close => open -= 1,
        }
    }
    best
}

/// Number of intervals containing the point x.
pub fn count_containing(family: &IntervalFamily, x: f64) -> usize {
    family
        .intervals()
        .iter()
        .filter(|iv| iv.lo() <= x && x <= iv.hi())
        .count()
}

/// A chain in the interval order: vertices listed so that each interval
/// ends strictly before the next begins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    pub vertices: Vec<u32>,
    pub size: usize,
}

/// Maximum independent set as the longest chain: greedily take the
/// interval with the least upper endpoint among those starting after the
/// last chosen one. The greedy chain is a maximum chain, which the oracle
/// suites verify against exhaustive search.
pub fn independence_number(family: &IntervalFamily) -> ChainResult {
    let mut order: Vec<u32> = (0..family.n() as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        family[a as usize]
            .hi()
            .partial_cmp(&family[b as usize].hi())
            .expect("finite endpoints")
    });
    let mut vertices = Vec::new();
    let mut last_hi = f64::NEG_INFINITY;
    let mut first = true;
    for v in order {
        let iv = &family[v as usize];
        if first || iv.lo() > last_hi {
            vertices.push(v);
            last_hi = iv.hi();
            first = false;
        }
    }
    let size = vertices.len();
    ChainResult { vertices, size }
}

/// Chromatic number by greedy coloring in increasing left-endpoint order,
/// always reusing the least free color. On interval graphs this meets the
/// clique bound, which debug builds assert.
pub fn chromatic_number(family: &IntervalFamily) -> usize {
    let mut order: Vec<u32> = (0..family.n() as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        family[a as usize]
            .lo()
            .partial_cmp(&family[b as usize].lo())
            .expect("finite endpoints")
    });
    // active intervals by (hi, color); free colors as a min-heap
    let mut active: BinaryHeap<Reverse<(OrdF64, usize)>> = BinaryHeap::new();
    let mut free: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
    let mut colors_used = 0usize;
    for v in order {
        let iv = &family[v as usize];
        while let Some(&Reverse((hi, color))) = active.peek() {
            // closed intervals: touching at one point still conflicts
            if hi.0 < iv.lo() {
                active.pop();
                free.push(Reverse(color));
            } else {
                break;
            }
        }
        let color = match free.pop() {
            Some(Reverse(c)) => c,
            None => {
                colors_used += 1;
                colors_used - 1
            }
        };
        active.push(Reverse((OrdF64(iv.hi()), color)));
    }
    debug_assert_eq!(
        colors_used,
        clique_number(family),
        "greedy coloring disagrees with the clique sweep; internal bug"
    );
    colors_used
}

// f64 endpoints are finite by construction, so a total order is safe.
#[derive(Debug, Clone, Copy, PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.partial_cmp(&other.0).expect("finite endpoints")
    }
}

/// All vertex degrees of the intersection graph, computed without building
/// it: deg(i) = n - 1 - #{hi_j < lo_i} - #{lo_j > hi_i}. O(n log n).
pub fn interval_degrees(family: &IntervalFamily) -> Vec<usize> {
    let n = family.n();
    let mut los: Vec<f64> = family.intervals().iter().map(|iv| iv.lo()).collect();
    let mut his: Vec<f64> = family.intervals().iter().map(|iv| iv.hi()).collect();
    los.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite endpoints"));
    his.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite endpoints"));
    family
        .intervals()
        .iter()
        .map(|iv| {
            let left = his.partition_point(|&h| h < iv.lo());
            let right = n - los.partition_point(|&l| l <= iv.hi());
            n - 1 - left - right
        })
        .collect()
}

/// Degree of a single vertex by a linear scan; the O(n) building block of
/// the per-trial degree experiments.
pub fn interval_degree_of(family: &IntervalFamily, v: usize) -> usize {
    let iv = &family[v];
    family
        .intervals()
        .iter()
        .enumerate()
        .filter(|&(j, other)| j != v && iv.intersects(other))
        .count()
}

/// Edge count of the intersection graph without building it.
pub fn interval_edge_count(family: &IntervalFamily) -> u64 {
    interval_degrees(family).iter().map(|&d| d as u64).sum::<u64>() / 2
}

/// True iff some interval meets all others: hi_i must reach the largest
/// other left endpoint and lo_i must not pass the smallest other right
/// endpoint. O(n) with running top-two extremes.
pub fn universal_vertex_exists(family: &IntervalFamily) -> bool {
    let n = family.n();
    if n == 1 {
        return true;
    }
    // top two los and bottom two his so vertex i can exclude itself
    let (mut lo1, mut lo2) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let (mut hi1, mut hi2) = (f64::INFINITY, f64::INFINITY);
    for iv in family.intervals() {
        if iv.lo() > lo1 {
            lo2 = lo1;
            lo1 = iv.lo();
        } else if iv.lo() > lo2 {
            lo2 = iv.lo();
        }
        if iv.hi() < hi1 {
            hi2 = hi1;
            hi1 = iv.hi();
        } else if iv.hi() < hi2 {
            hi2 = iv.hi();
        }
    }
    family.intervals().iter().any(|iv| {
        let max_other_lo = if iv.lo() == lo1 { lo2 } else { lo1 };
        let min_other_hi = if iv.hi() == hi1 { hi2 } else { hi1 };
        iv.hi() >= max_other_lo && iv.lo() <= min_other_hi
    })
}

/// True iff the intersection graph has diameter exactly 2.
///
/// Disjoint pairs exist iff min(hi) < max(lo). Every disjoint pair (u left
/// of v) has a common neighbor iff some interval starting at or before
/// hi_u reaches lo_v; the binding case is the global maximum left endpoint,
/// so it suffices that reach(hi_u) >= max(lo) for every u ending before
/// max(lo), where reach(x) = max{hi_w : lo_w <= x}. O(n log n).
pub fn diameter_is_two(family: &IntervalFamily) -> bool {
    let n = family.n();
    if n < 2 {
        return false;
    }
    let mut by_lo: Vec<(f64, f64)> = family
        .intervals()
        .iter()
        .map(|iv| (iv.lo(), iv.hi()))
        .collect();
    by_lo.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("finite endpoints"));
    // prefix maxima of hi over intervals sorted by lo
    let mut reach = Vec::with_capacity(n);
    let mut best = f64::NEG_INFINITY;
    for &(_, hi) in &by_lo {
        best = best.max(hi);
        reach.push(best);
    }
    let max_lo = by_lo.last().expect("non-empty").0;
    let min_hi = family
        .intervals()
        .iter()
        .map(|iv| iv.hi())
        .fold(f64::INFINITY, f64::min);
    if min_hi >= max_lo {
        // no disjoint pair: diameter <= 1 (or the family is a clique)
        return false;
    }
    family.intervals().iter().all(|iv| {
        if iv.hi() >= max_lo {
            return true;
        }
        // largest hi among intervals with lo <= hi_u
        let k = by_lo.partition_point(|&(lo, _)| lo <= iv.hi());
        k > 0 && reach[k - 1] >= max_lo
    })
}

/// BFS distances by frontier bitsets; `None` entries are unreachable.
fn bfs_eccentricity(g: &Graph, src: usize) -> (usize, bool) {
    let words = g.n().div_ceil(64);
    let mut visited = vec![0u64; words];
    let mut frontier = vec![0u64; words];
    visited[src / 64] |= 1 << (src % 64);
    frontier[src / 64] |= 1 << (src % 64);
    let mut reached = 1usize;
    let mut depth = 0usize;
    let mut next = vec![0u64; words];
    loop {
        next.iter_mut().for_each(|w| *w = 0);
        for (wi, &word) in frontier.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let v = wi * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                for (a, b) in next.iter_mut().zip(g.row(v)) {
                    *a |= b;
                }
            }
        }
        let mut advanced = false;
        for i in 0..words {
            next[i] &= !visited[i];
            if next[i] != 0 {
                advanced = true;
                visited[i] |= next[i];
                reached += next[i].count_ones() as usize;
            }
        }
        if !advanced {
            break;
        }
        depth += 1;
        std::mem::swap(&mut frontier, &mut next);
    }
    (depth, reached == g.n())
}

/// Exact diameter by all-pairs BFS, or `Unreachable` when disconnected.
/// O(n * n^2/64) with bit frontiers; intended for n up to a few thousand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Unreachable,
}

pub fn diameter(g: &Graph) -> Diameter {
    let mut best = 0usize;
    for v in 0..g.n() {
        let (ecc, connected) = bfs_eccentricity(g, v);
        if !connected {
            return Diameter::Unreachable;
        }
        best = best.max(ecc);
    }
    Diameter::Finite(best)
}

/// Longest shortest path within one connected component (given as a vertex
/// list); the component is assumed to be internally connected.
pub fn component_diameter(g: &Graph, component: &[u32]) -> usize {
    let mut best = 0usize;
    for &v in component {
        let (ecc, _) = bfs_eccentricity(g, v as usize);
        best = best.max(ecc);
    }
    best
}

/// Partition of the vertices by reachability; components ordered by their
/// smallest vertex, vertices ascending within each.
pub fn connected_components(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start as u32];
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for (wi, &word) in g.row(v).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let u = wi * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u as u32);
                        queue.push(u);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The statistics bundle emitted by `riglab stats`:
/// `{"n","edges","delta","Delta","omega","chi","alpha","diameter","components"}`.
/// The interval invariants are only present for family inputs; `diameter`
/// is null unless requested and `"unreachable"` when disconnected;
/// `components` holds the component sizes in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsReport {
    pub n: usize,
    pub edges: u64,
    pub delta: usize,
    pub big_delta: usize,
    pub omega: Option<usize>,
    pub chi: Option<usize>,
    pub alpha: Option<usize>,
    pub diameter: Option<Diameter>,
    pub components: Vec<usize>,
}

impl Serialize for StatsReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("StatsReport", 9)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("edges", &self.edges)?;
        s.serialize_field("delta", &self.delta)?;
        s.serialize_field("Delta", &self.big_delta)?;
        s.serialize_field("omega", &self.omega)?;
        s.serialize_field("chi", &self.chi)?;
        s.serialize_field("alpha", &self.alpha)?;
        match self.diameter {
            None => s.serialize_field("diameter", &None::<usize>)?,
            Some(Diameter::Finite(d)) => s.serialize_field("diameter", &d)?,
            Some(Diameter::Unreachable) => s.serialize_field("diameter", "unreachable")?,
        }
        s.serialize_field("components", &self.components)?;
        s.end()
    }
}

fn component_sizes(g: &Graph) -> Vec<usize> {
    let mut sizes: Vec<usize> = connected_components(g).iter().map(|c| c.len()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Full statistics for an interval family.
pub fn stats_for_family(family: &IntervalFamily, with_diameter: bool) -> StatsReport {
    let g = crate::core::graph_from_intervals(family);
    let summary = g.degree_summary();
    StatsReport {
        n: g.n(),
        edges: g.edge_count(),
        delta: summary.min,
        big_delta: summary.max,
        omega: Some(clique_number(family)),
        chi: Some(chromatic_number(family)),
        alpha: Some(independence_number(family).size),
        diameter: with_diameter.then(|| diameter(&g)),
        components: component_sizes(&g),
    }
}

/// Statistics for a bare graph; the interval invariants are omitted.
pub fn stats_for_graph(g: &Graph, with_diameter: bool) -> StatsReport {
    let summary = g.degree_summary();
    StatsReport {
        n: g.n(),
        edges: g.edge_count(),
        delta: summary.min,
        big_delta: summary.max,
        omega: None,
        chi: None,
        alpha: None,
        diameter: with_diameter.then(|| diameter(g)),
        components: component_sizes(g),
    }
}
