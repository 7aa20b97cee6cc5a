//! Interval and graph primitives shared by every other module: closed
//! intervals, model-tagged interval families, bit-row graphs, and the
//! intersection-graph constructions.

mod family;
mod graph;
mod interval;

pub use family::{family_from_json, family_to_json, FamilySource, IntervalFamily};
pub use graph::{
    graph_from_intervals, graph_from_intervals_naive, graph_from_json, graph_to_json,
    DegreeSummary, Graph,
};
pub use interval::Interval;
