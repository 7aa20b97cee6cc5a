#![no_main]

use libfuzzer_sys::fuzz_target;

use riglab::core::{graph_from_json, graph_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(graph) = graph_from_json(text) {
        assert!(graph.n() >= 1);
        for (i, j) in graph.edges() {
            let (i, j) = (i as usize, j as usize);
            assert!(i < j && j < graph.n());
            assert!(graph.has_edge(i, j) && graph.has_edge(j, i));
        }
        let degree_sum: usize = graph.degrees().iter().sum();
        assert_eq!(graph.edge_count(), degree_sum as u64 / 2);
        let serialized = graph_to_json(&graph);
        let back = graph_from_json(&serialized).expect("own output re-parses");
        assert_eq!(graph, back);
        assert_eq!(serialized, graph_to_json(&back));
    }
});
