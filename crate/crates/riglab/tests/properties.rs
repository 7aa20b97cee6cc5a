//! Cross-route invariants: every fast path in the library is held equal to
//! an independent reference (pairwise construction, brute-force search,
//! BFS) over seeded random corpora.

use riglab::algorithms::{
    chromatic_number, clique_number, diameter, diameter_is_two, independence_number,
    interval_degrees, universal_vertex_exists, Diameter,
};
use riglab::core::{graph_from_intervals, graph_from_intervals_naive};
use riglab::generators::gen_scheinerman;
use riglab::montecarlo::derive_trial_seed;
use riglab::oracle::{brute_chromatic, brute_clique, brute_independence, enumerate_matchings};

#[test]
fn sweep_equals_naive_construction_on_1000_families() {
    for i in 0..1000u64 {
        let n = 1 + (i as usize % 64);
        let fam = gen_scheinerman(n, derive_trial_seed(0xA11CE, i)).unwrap();
        let sweep = graph_from_intervals(&fam);
        let naive = graph_from_intervals_naive(&fam);
        assert_eq!(sweep, naive, "family {i} (n = {n})");
    }
}

#[test]
fn interval_order_trichotomy() {
    for i in 0..200u64 {
        let n = 2 + (i as usize % 30);
        let fam = gen_scheinerman(n, derive_trial_seed(0xBEE, i)).unwrap();
        for a in 0..n {
            for b in (a + 1)..n {
                let (x, y) = (&fam[a], &fam[b]);
                let cases =
                    [x.precedes(y), y.precedes(x), x.intersects(y)];
                assert_eq!(
                    cases.iter().filter(|&&c| c).count(),
                    1,
                    "trichotomy violated for pair ({a}, {b}) of family {i}: {cases:?}"
                );
            }
        }
    }
}

#[test]
fn radius_squared_matches_definition() {
    for i in 0..100u64 {
        let fam = gen_scheinerman(32, derive_trial_seed(0xCAFE, i)).unwrap();
        for iv in fam.intervals() {
            let r = iv.radius().unwrap();
            let expected = iv.lo() * iv.lo() + (1.0 - iv.hi()) * (1.0 - iv.hi());
            let err = (r * r - expected).abs();
            assert!(err <= 1e-12 * expected.max(1e-300), "err {err}");
        }
    }
}

#[test]
fn greedy_and_sweep_match_brute_force_on_small_families() {
    // sweep omega == brute omega, greedy alpha == brute alpha,
    // greedy chi == brute chi on 1000 random families with n <= 8
    for i in 0..1000u64 {
        let n = 1 + (i as usize % 8);
        let fam = gen_scheinerman(n, derive_trial_seed(0xD1CE, i)).unwrap();
        let g = graph_from_intervals(&fam);
        assert_eq!(
            clique_number(&fam),
            brute_clique(&g).unwrap(),
            "omega mismatch at family {i}"
        );
        assert_eq!(
            independence_number(&fam).size,
            brute_independence(&g).unwrap(),
            "alpha mismatch at family {i}"
        );
        assert_eq!(
            chromatic_number(&fam),
            brute_chromatic(&g).unwrap(),
            "chi mismatch at family {i}"
        );
    }
}

#[test]
fn clique_times_independence_covers_the_vertices() {
    // interval graphs split into omega-many cliques at Helly points, so
    // omega * alpha >= n
    for i in 0..500u64 {
        let n = 1 + (i as usize % 50);
        let fam = gen_scheinerman(n, derive_trial_seed(0xF00D, i)).unwrap();
        let omega = clique_number(&fam);
        let alpha = independence_number(&fam).size;
        assert!(
            omega * alpha >= n,
            "omega {omega} * alpha {alpha} < n {n} at family {i}"
        );
    }
}

#[test]
fn greedy_chain_is_a_valid_chain() {
    for i in 0..300u64 {
        let n = 1 + (i as usize % 40);
        let fam = gen_scheinerman(n, derive_trial_seed(0xC0DE, i)).unwrap();
        let chain = independence_number(&fam);
        assert_eq!(chain.size, chain.vertices.len());
        for w in chain.vertices.windows(2) {
            assert!(
                fam[w[0] as usize].hi() < fam[w[1] as usize].lo(),
                "chain breaks at family {i}"
            );
        }
    }
}

#[test]
fn universal_vertex_fast_path_matches_graph_path() {
    for i in 0..1000u64 {
        let n = 1 + (i as usize % 16);
        let fam = gen_scheinerman(n, derive_trial_seed(0xFACE, i)).unwrap();
        assert_eq!(
            universal_vertex_exists(&fam),
            graph_from_intervals(&fam).has_universal_vertex(),
            "universal-vertex mismatch at family {i} (n = {n})"
        );
    }
}

#[test]
fn interval_degree_counting_matches_graph_degrees() {
    for i in 0..400u64 {
        let n = 1 + (i as usize % 48);
        let fam = gen_scheinerman(n, derive_trial_seed(0xDEAF, i)).unwrap();
        let g = graph_from_intervals(&fam);
        assert_eq!(interval_degrees(&fam), g.degrees(), "family {i}");
    }
}

#[test]
fn diameter_two_fast_path_matches_bfs() {
    for i in 0..1000u64 {
        let n = 2 + (i as usize % 30);
        let fam = gen_scheinerman(n, derive_trial_seed(0xD1A, i)).unwrap();
        let via_bfs = diameter(&graph_from_intervals(&fam)) == Diameter::Finite(2);
        assert_eq!(
            diameter_is_two(&fam),
            via_bfs,
            "diameter-2 mismatch at family {i} (n = {n})"
        );
    }
}

#[test]
fn enumerated_matchings_agree_with_brute_force() {
    // every matching for n <= 5: 1 + 3 + 15 + 105 + 945 instances
    for n in 1..=5usize {
        for (idx, fam) in enumerate_matchings(n).unwrap().enumerate() {
            let g = graph_from_intervals(&fam);
            assert_eq!(
                clique_number(&fam),
                brute_clique(&g).unwrap(),
                "omega at n={n} #{idx}"
            );
            assert_eq!(
                independence_number(&fam).size,
                brute_independence(&g).unwrap(),
                "alpha at n={n} #{idx}"
            );
            assert_eq!(
                chromatic_number(&fam),
                brute_chromatic(&g).unwrap(),
                "chi at n={n} #{idx}"
            );
        }
    }
}
