//! Statistical checks of the generators against closed forms and
//! quadrature oracles. All runs are seeded; the tolerances sit several
//! standard errors out, so failures indicate real distribution bugs rather
//! than noise.

use riglab::algorithms::interval_edge_count;
use riglab::core::graph_from_intervals;
use riglab::generators::{
    gen_dot_product, gen_gnp, gen_matching, gen_prisner, gen_scheinerman, gen_threshold,
};
use riglab::montecarlo::derive_trial_seed;
use riglab::oracle::{exact_edge_count_distribution, rational_parts};

fn edge_frequency<F>(trials: u64, mut has_edge: F) -> f64
where
    F: FnMut(u64) -> bool,
{
    let mut hits = 0u64;
    for t in 0..trials {
        if has_edge(t) {
            hits += 1;
        }
    }
    hits as f64 / trials as f64
}

#[test]
fn scheinerman_pair_intersects_with_probability_two_thirds() {
    let freq = edge_frequency(1_000_000, |t| {
        let fam = gen_scheinerman(2, derive_trial_seed(2024, t)).unwrap();
        fam[0].intersects(&fam[1])
    });
    assert!((freq - 2.0 / 3.0).abs() < 0.002, "freq = {freq}");
}

#[test]
fn matching_pair_intersects_with_probability_two_thirds() {
    // exact enumeration of the 3 matchings of {1,2,3,4} gives 2/3
    let freq = edge_frequency(1_000_000, |t| {
        let fam = gen_matching(2, derive_trial_seed(7, t)).unwrap();
        fam[0].intersects(&fam[1])
    });
    assert!((freq - 2.0 / 3.0).abs() < 0.002, "freq = {freq}");
}

#[test]
fn matching_sampler_matches_exact_distribution_at_n3() {
    let trials = 1_000_000u64;
    let mut histogram = [0u64; 4];
    for t in 0..trials {
        let fam = gen_matching(3, derive_trial_seed(99, t)).unwrap();
        histogram[interval_edge_count(&fam) as usize] += 1;
    }
    let exact = exact_edge_count_distribution(3).unwrap();
    for (k, &count) in histogram.iter().enumerate() {
        let (num, den) = rational_parts(&exact.probability(k));
        let expected = num as f64 / den as f64;
        let observed = count as f64 / trials as f64;
        assert!(
            (observed - expected).abs() < 0.005,
            "k = {k}: observed {observed}, exact {expected}"
        );
    }
}

#[test]
fn scheinerman_matches_matching_distribution_at_n3() {
    // the two models induce the same edge-count law
    let trials = 1_000_000u64;
    let mut histogram = [0u64; 4];
    for t in 0..trials {
        let fam = gen_scheinerman(3, derive_trial_seed(555, t)).unwrap();
        histogram[interval_edge_count(&fam) as usize] += 1;
    }
    let exact = exact_edge_count_distribution(3).unwrap();
    for (k, &count) in histogram.iter().enumerate() {
        let (num, den) = rational_parts(&exact.probability(k));
        let expected = num as f64 / den as f64;
        let observed = count as f64 / trials as f64;
        assert!(
            (observed - expected).abs() < 0.005,
            "k = {k}: observed {observed}, exact {expected}"
        );
    }
}

/// Midpoint-rule quadrature of P(|L1 - L2| <= 1) for L uniform on [0,a]^2,
/// the overlap probability of two Prisner unit intervals.
fn prisner_edge_quadrature(a: f64, steps: usize) -> f64 {
    if a == 0.0 {
        return 1.0;
    }
    let h = a / steps as f64;
    let mut hits = 0u64;
    for i in 0..steps {
        for j in 0..steps {
            let x = (i as f64 + 0.5) * h;
            let y = (j as f64 + 0.5) * h;
            if (x - y).abs() <= 1.0 {
                hits += 1;
            }
        }
    }
    hits as f64 / (steps * steps) as f64
}

#[test]
fn prisner_edge_probability_against_quadrature() {
    // closed form (2a-1)/a^2 for a = m-1 >= 1, probability 1 below that
    for (m, expected) in [(2.0, 1.0), (3.0, 0.75), (11.0, 0.19)] {
        let a = m - 1.0;
        let quad = prisner_edge_quadrature(a, 4000);
        assert!(
            (quad - expected).abs() < 1e-3,
            "quadrature {quad} vs {expected} at m = {m}"
        );
        let trials = 1_000_000u64;
        let freq = edge_frequency(trials, |t| {
            let fam = gen_prisner(2, m, derive_trial_seed(31, t)).unwrap();
            fam[0].intersects(&fam[1])
        });
        assert!(
            (freq - expected).abs() < 0.002,
            "m = {m}: freq {freq} vs {expected}"
        );
    }
}

#[test]
fn gnp_mean_edge_count_is_binomial() {
    // 1e4 seeds at n = 100, p = 2/3: mean within 3 standard errors of 3300
    let trials = 10_000u64;
    let mut counts = Vec::with_capacity(trials as usize);
    for t in 0..trials {
        let g = gen_gnp(100, 2.0 / 3.0, derive_trial_seed(12, t)).unwrap();
        counts.push(g.edge_count() as f64);
    }
    let mean = counts.iter().sum::<f64>() / trials as f64;
    let expected = 4950.0 * 2.0 / 3.0;
    // binomial sd = sqrt(C(100,2) * 2/9)
    let se = (4950.0f64 * 2.0 / 9.0).sqrt() / (trials as f64).sqrt();
    assert!(
        (mean - expected).abs() < 3.0 * se,
        "mean {mean}, expected {expected}, se {se}"
    );
}

#[test]
fn gnp_vertex_degree_is_binomial_at_n1000() {
    // degree of vertex 0 under G(1000, 2/3): mean 666, sd sqrt(222)
    let trials = 10_000u64;
    let mut total = 0u64;
    for t in 0..trials {
        let g = gen_gnp(1000, 2.0 / 3.0, derive_trial_seed(88, t)).unwrap();
        total += g.degree(0) as u64;
    }
    let mean = total as f64 / trials as f64;
    let expected = 999.0 * 2.0 / 3.0;
    let se = (999.0f64 * 2.0 / 9.0).sqrt() / (trials as f64).sqrt();
    assert!(
        (mean - expected).abs() < 3.0 * se,
        "mean {mean}, expected {expected}, 3se {}",
        3.0 * se
    );
}

#[test]
fn threshold_pair_edge_probability_is_half() {
    let freq = edge_frequency(1_000_000, |t| {
        gen_threshold(2, derive_trial_seed(64, t)).unwrap().edge_count() == 1
    });
    assert!((freq - 0.5).abs() < 0.002, "freq = {freq}");
}

#[test]
fn dot_product_pair_edge_probability_is_quarter() {
    let freq = edge_frequency(1_000_000, |t| {
        gen_dot_product(2, 1.0, derive_trial_seed(4096, t))
            .unwrap()
            .graph
            .edge_count()
            == 1
    });
    assert!((freq - 0.25).abs() < 0.002, "freq = {freq}");
}

#[test]
fn dot_product_single_run_edge_count_concentrates() {
    // For r = 1 the edge count N has E[N] = C(n,2)/4 and
    //   Var(N) = C(n,2) * 3/16 + 2 n C(n-1,2) / 48,
    // the covariance term coming from pairs of edges sharing a vertex:
    // Cov = E[x^2] E[x] E[x] - (1/4)^2 = 1/12 - 1/16 = 1/48. The latent
    // mixture makes the sd ~ 4568 at n = 1000, far above the pure
    // binomial sqrt(C(n,2) * 3/16) ~ 306.
    let n = 1000u64;
    let pairs = (n * (n - 1) / 2) as f64;
    let expected = pairs / 4.0;
    // ordered pairs of distinct edges sharing a vertex: 2 * n * C(n-1, 2)
    let shared = (n * (n - 1) * (n - 2)) as f64;
    let var = pairs * 3.0 / 16.0 + shared / 48.0;
    let sd = var.sqrt();
    let dp = gen_dot_product(n as usize, 1.0, derive_trial_seed(777, 0)).unwrap();
    let count = dp.graph.edge_count() as f64;
    assert!(
        (count - expected).abs() < 4.0 * sd,
        "count {count}, expected {expected}, 4sd {}",
        4.0 * sd
    );
}

#[test]
fn generated_families_build_identical_graphs_per_seed() {
    let seed = derive_trial_seed(5150, 3);
    let a = graph_from_intervals(&gen_scheinerman(128, seed).unwrap());
    let b = graph_from_intervals(&gen_scheinerman(128, seed).unwrap());
    assert_eq!(a, b);
}

#[test]
fn point_cover_means_match_the_parabola() {
    // fraction of intervals covering x converges to 2x - 2x^2
    let trials = 1_000u64;
    let n = 10_000usize;
    let mut sums = [0f64; 2];
    for t in 0..trials {
        let fam = gen_scheinerman(n, derive_trial_seed(2718, t)).unwrap();
        sums[0] += riglab::algorithms::count_containing(&fam, 0.5) as f64 / n as f64;
        sums[1] += riglab::algorithms::count_containing(&fam, 0.25) as f64 / n as f64;
    }
    let mean_half = sums[0] / trials as f64;
    let mean_quarter = sums[1] / trials as f64;
    assert!((mean_half - 0.5).abs() < 0.01, "x=0.5: {mean_half}");
    assert!((mean_quarter - 0.375).abs() < 0.01, "x=0.25: {mean_quarter}");
    // and the closed form agrees
    assert_eq!(riglab::theory::expected_point_cover(n, 0.5).unwrap(), 5000.0);
    assert_eq!(
        riglab::theory::expected_point_cover(n, 0.25).unwrap(),
        3750.0
    );
}
