//! The experiment catalog: per-trial statistics, reductions, theory
//! targets, and pass criteria.
//!
//! Discrepancy semantics per experiment (pass is always
//! `discrepancy <= tolerance`):
//!
//! - `edge-prob`: |p_hat - 2/3|; default tolerance 0.002
//! - `edge-count`: |mean - n(n-1)/3|; default tolerance 3*SE of the sample
//!   mean (resolved at run time and echoed); `extra.variance_over_n3`
//!   reports the variance scaling
//! - `degree-cdf`: KS distance of d(v_1)/n to the degree law; 0.02
//! - `max-degree-exact`: |P(Delta = n-1) - 2/3|; 0.005
//! - `max-degree-tail`: 1 - P(Delta >= n - n^0.6); 0.05
//! - `min-degree`: KS distance of delta/sqrt(n) to the Rayleigh law; 0.05
//! - `clique`: fraction of trials with omega/n outside [0.49, 0.54]; 0.05
//! - `chi-equals-omega`: number of trials with chi != omega; 0.5
//! - `independence`: |mean alpha/sqrt(n) - 2/sqrt(pi)|; 0.04
//! - `gnp-degrees`: number of trials with any degree outside
//!   (p +- epsilon)n; 0.5
//! - `model-equivalence`: max_k |empirical P(edges=k) - exact matching
//!   P(edges=k)|; 0.005
//! - `dotprod-edges`: |mean edges - C(n,2)/(1+r)^2|; 3*SE resolved at run
//!   time
//! - `dotprod-clustering`: max(0, -(lower CI bound of the clustering
//!   gap)); 1e-12, i.e. the gap's CI must exclude 0
//! - `dotprod-structure`: report-only (discrepancy 0); isolated-vertex and
//!   giant-component figures land in `extra`
//! - `rig-diameter`: max(0, 2/3 - P(diam = 2)); 0.01

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algorithms::{
    clique_number, chromatic_number, component_diameter, connected_components, diameter_is_two,
    independence_number, interval_degree_of, interval_degrees, interval_edge_count,
    universal_vertex_exists,
};
use crate::error::{Error, Result};
use crate::generators::{gen_dot_product, gen_gnp, gen_scheinerman};
use crate::oracle;
use crate::rng::{RngSeed, Stream};
use crate::theory;

use super::{
    derive_trial_seed, empirical_cdf, estimate_mean, estimate_proportion, ks_distance,
    mean_and_sd, EstimateWithCI, ExperimentReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    EdgeProb,
    EdgeCount,
    DegreeCdf,
    MaxDegreeExact,
    MaxDegreeTail,
    MinDegree,
    Clique,
    ChiEqualsOmega,
    Independence,
    GnpDegrees,
    ModelEquivalence,
    DotprodEdges,
    DotprodClustering,
    DotprodStructure,
    RigDiameter,
}

pub const EXPERIMENT_NAMES: [&str; 15] = [
    "edge-prob",
    "edge-count",
    "degree-cdf",
    "max-degree-exact",
    "max-degree-tail",
    "min-degree",
    "clique",
    "chi-equals-omega",
    "independence",
    "gnp-degrees",
    "model-equivalence",
    "dotprod-edges",
    "dotprod-clustering",
    "dotprod-structure",
    "rig-diameter",
];

impl Experiment {
    pub fn parse(name: &str) -> Result<Experiment> {
        serde_json::from_value(serde_json::Value::String(name.to_string())).map_err(|_| {
            Error::UnknownName {
                kind: "experiment",
                name: name.to_string(),
                valid: EXPERIMENT_NAMES.join(", "),
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::EdgeProb => "edge-prob",
            Experiment::EdgeCount => "edge-count",
            Experiment::DegreeCdf => "degree-cdf",
            Experiment::MaxDegreeExact => "max-degree-exact",
            Experiment::MaxDegreeTail => "max-degree-tail",
            Experiment::MinDegree => "min-degree",
            Experiment::Clique => "clique",
            Experiment::ChiEqualsOmega => "chi-equals-omega",
            Experiment::Independence => "independence",
            Experiment::GnpDegrees => "gnp-degrees",
            Experiment::ModelEquivalence => "model-equivalence",
            Experiment::DotprodEdges => "dotprod-edges",
            Experiment::DotprodClustering => "dotprod-clustering",
            Experiment::DotprodStructure => "dotprod-structure",
            Experiment::RigDiameter => "rig-diameter",
        }
    }

    /// The model a given experiment samples from.
    pub fn model_name(&self) -> &'static str {
        match self {
            Experiment::GnpDegrees => "gnp",
            Experiment::DotprodEdges
            | Experiment::DotprodClustering
            | Experiment::DotprodStructure => "dotprod",
            _ => "scheinerman",
        }
    }

    fn default_tolerance(&self) -> Option<f64> {
        match self {
            Experiment::EdgeProb => Some(0.002),
            Experiment::EdgeCount => None, // 3*SE, resolved per run
            Experiment::DegreeCdf => Some(0.02),
            Experiment::MaxDegreeExact => Some(0.005),
            Experiment::MaxDegreeTail => Some(0.05),
            Experiment::MinDegree => Some(0.05),
            Experiment::Clique => Some(0.05),
            Experiment::ChiEqualsOmega => Some(0.5),
            Experiment::Independence => Some(0.04),
            Experiment::GnpDegrees => Some(0.5),
            Experiment::ModelEquivalence => Some(0.005),
            Experiment::DotprodEdges => None, // 3*SE, resolved per run
            Experiment::DotprodClustering => Some(1e-12),
            Experiment::DotprodStructure => Some(1.0),
            Experiment::RigDiameter => Some(0.01),
        }
    }

    /// Whether the experiment keeps one statistic per trial (and is
    /// therefore subject to the sample retention cap).
    fn retains_samples(&self) -> bool {
        matches!(
            self,
            Experiment::EdgeCount
                | Experiment::DegreeCdf
                | Experiment::MinDegree
                | Experiment::Clique
                | Experiment::Independence
                | Experiment::DotprodEdges
        )
    }
}

/// Free knobs beyond (experiment, n, trials, seed, tolerance).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct Options {
    /// G(n,p) edge probability; default 2/3.
    pub p: Option<f64>,
    /// Dot-product exponent; default 1.
    pub r: Option<f64>,
    /// Degree band half-width for gnp-degrees; default 0.1.
    pub epsilon: Option<f64>,
    /// Confidence level (0.95 or 0.99); default 0.95.
    pub level: Option<f64>,
    /// KS evaluation grid size; default 512.
    pub grid: Option<usize>,
    /// Total sampled triples for dotprod-clustering; default 1e6.
    pub triples: Option<u64>,
    /// Per-trial sample retention cap; default 1e6.
    pub sample_cap: Option<u64>,
}

/// Declarative description of one verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: usize,
    pub trials: u64,
    pub master_seed: u64,
    /// Overrides the experiment's default pass tolerance.
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub options: Options,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, n: usize, trials: u64, master_seed: u64) -> Self {
        ExperimentConfig {
            experiment,
            n,
            trials,
            master_seed,
            tolerance: None,
            options: Options::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::domain("n must be at least 1"));
        }
        if self.trials < 1 {
            return Err(Error::domain("trials must be at least 1"));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::domain(format!("tolerance must be > 0, got {t}")));
            }
        }
        match self.experiment {
            Experiment::EdgeProb if self.n < 2 => {
                Err(Error::domain("edge-prob requires n >= 2"))
            }
            Experiment::ModelEquivalence if !(2..=oracle::MAX_ENUMERATION_N).contains(&self.n) => {
                Err(Error::domain(format!(
                    "model-equivalence compares against exact enumeration and requires 2 <= n <= {}",
                    oracle::MAX_ENUMERATION_N
                )))
            }
            _ => Ok(()),
        }
    }

    fn level(&self) -> f64 {
        self.options.level.unwrap_or(0.95)
    }

    fn grid(&self) -> usize {
        self.options.grid.unwrap_or(512)
    }

    fn sample_cap(&self) -> u64 {
        self.options.sample_cap.unwrap_or(1_000_000)
    }
}

/// Runs every trial on the rayon pool, in trial-index order of results.
fn run_trials<T, F>(cfg: &ExperimentConfig, trial_fn: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(RngSeed) -> Result<T> + Sync,
{
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let seed = derive_trial_seed(cfg.master_seed, t);
            trial_fn(seed).map_err(|e| Error::Trial {
                trial: t,
                stream: seed.stream,
                source: Box::new(e),
            })
        })
        .collect()
}

struct Outcome {
    estimate: EstimateWithCI,
    theory: Option<f64>,
    discrepancy: f64,
    tolerance: f64,
    extra: Option<serde_json::Value>,
    samples: Vec<f64>,
}

/// Executes the configured experiment and assembles its report.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    if cfg.experiment.retains_samples() && cfg.trials > cfg.sample_cap() {
        return Err(Error::domain(format!(
            "{} retains one value per trial; {} trials exceed the sample cap {} \
             (raise options.sample_cap if intended)",
            cfg.experiment.name(),
            cfg.trials,
            cfg.sample_cap()
        )));
    }
    let start = Instant::now();
    let outcome = match cfg.experiment {
        Experiment::EdgeProb => edge_prob(cfg)?,
        Experiment::EdgeCount => edge_count(cfg)?,
        Experiment::DegreeCdf => degree_cdf(cfg)?,
        Experiment::MaxDegreeExact => max_degree_exact(cfg)?,
        Experiment::MaxDegreeTail => max_degree_tail(cfg)?,
        Experiment::MinDegree => min_degree(cfg)?,
        Experiment::Clique => clique(cfg)?,
        Experiment::ChiEqualsOmega => chi_equals_omega(cfg)?,
        Experiment::Independence => independence(cfg)?,
        Experiment::GnpDegrees => gnp_degrees(cfg)?,
        Experiment::ModelEquivalence => model_equivalence(cfg)?,
        Experiment::DotprodEdges => dotprod_edges(cfg)?,
        Experiment::DotprodClustering => dotprod_clustering(cfg)?,
        Experiment::DotprodStructure => dotprod_structure(cfg)?,
        Experiment::RigDiameter => rig_diameter(cfg)?,
    };
    Ok(ExperimentReport {
        experiment: cfg.experiment.name().to_string(),
        model: cfg.experiment.model_name().to_string(),
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.master_seed,
        estimate: outcome.estimate.into(),
        theory: outcome.theory,
        discrepancy: outcome.discrepancy,
        tolerance: outcome.tolerance,
        pass: outcome.discrepancy <= outcome.tolerance,
        wall_time_s: start.elapsed().as_secs_f64(),
        extra: outcome.extra,
        samples: outcome.samples,
    })
}

fn resolve_tolerance(cfg: &ExperimentConfig, dynamic_default: Option<f64>) -> f64 {
    cfg.tolerance
        .or(cfg.experiment.default_tolerance())
        .or(dynamic_default)
        .expect("every experiment has a tolerance source")
}

fn count_true(flags: &[bool]) -> u64 {
    flags.iter().filter(|&&b| b).count() as u64
}

fn edge_prob(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let flags = run_trials(cfg, |seed| {
        let fam = gen_scheinerman(n, seed)?;
        Ok(fam[0].intersects(&fam[1]))
    })?;
    let estimate = estimate_proportion(count_true(&flags), cfg.trials, cfg.level())?;
    let theory = theory::edge_probability();
    let discrepancy = (estimate.point - theory).abs();
    Ok(Outcome {
        estimate,
        theory: Some(theory),
        discrepancy,
        tolerance: resolve_tolerance(cfg, None),
        extra: None,
        samples: Vec::new(),
    })
}

fn edge_count(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let counts: Vec<f64> = run_trials(cfg, |seed| {
        Ok(interval_edge_count(&gen_scheinerman(n, seed)?) as f64)
    })?;
    let estimate = estimate_mean(&counts, cfg.level())?;
    let (mean, sd) = mean_and_sd(&counts);
    let se = sd / (counts.len() as f64).sqrt();
    let theory = theory::expected_edges(n);
    let variance_over_n3 = sd * sd / (n as f64).powi(3);
    Ok(Outcome {
        estimate,
        theory: Some(theory),
        discrepancy: (mean - theory).abs(),
        tolerance: resolve_tolerance(cfg, Some(3.0 * se)),
        extra: Some(json!({
            "variance_over_n3": variance_over_n3,
            "sample_sd": sd,
            "se_of_mean": se,
        })),
        samples: counts,
    })
}

fn degree_cdf(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let samples: Vec<f64> = run_trials(cfg, |seed| {
        let fam = gen_scheinerman(n, seed)?;
        Ok(interval_degree_of(&fam, 0) as f64 / n as f64)
    })?;
    let ecdf = empirical_cdf(&samples);
    let d = ks_distance(
        &ecdf,
        |x| theory::degree_cdf_limit(x.clamp(0.0, 1.0)).expect("clamped into domain"),
        cfg.grid(),
    );
    let level = cfg.level();
    Ok(Outcome {
        estimate: EstimateWithCI {
            point: d,
            ci_low: d,
            ci_high: d,
            level,
            trials: cfg.trials,
        },
        theory: Some(0.0),
        discrepancy: d,
        tolerance: resolve_tolerance(cfg, None),
        extra: None,
        samples,
    })
}

fn max_degree_exact(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let flags = run_trials(cfg, |seed| {
        Ok(universal_vertex_exists(&gen_scheinerman(n, seed)?))
    })?;
    let estimate = estimate_proportion(count_true(&flags), cfg.trials, cfg.level())?;
    let theory = 2.0 / 3.0;
    Ok(Outcome {
        estimate,
        theory: Some(theory),
        discrepancy: (estimate.point - theory).abs(),
        tolerance: resolve_tolerance(cfg, None),
        extra: None,
        samples: Vec::new(),
    })
}

fn max_degree_tail(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    // slowly growing slack below the maximum possible degree
    let cut = n as f64 - (n as f64).powf(0.6);
    let flags = run_trials(cfg, |seed| {
        let fam = gen_scheinerman(n, seed)?;
        let max = interval_degrees(&fam).into_iter().max().expect("n >= 1");
        Ok(max as f64 >= cut)
    })?;
    let estimate = estimate_proportion(count_true(&flags), cfg.trials, cfg.level())?;
    Ok(Outcome {
        estimate,
        theory: Some(1.0),
        discrepancy: 1.0 - estimate.point,
        tolerance: resolve_tolerance(cfg, None),
        extra: Some(json!({ "degree_cut": cut })),
        samples: Vec::new(),
    })
}

fn min_degree(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let sqrt_n = (n as f64).sqrt();
    let samples: Vec<f64> = run_trials(cfg, |seed| {
        let fam = gen_scheinerman(n, seed)?;
        let min = interval_degrees(&fam).into_iter().min().expect("n >= 1");
        Ok(min as f64 / sqrt_n)
    })?;
    let ecdf = empirical_cdf(&samples);
    let d = ks_distance(
        &ecdf,
        |k| theory::min_degree_cdf_limit(k.max(0.0)).expect("k >= 0"),
        cfg.grid(),
    );
    let level = cfg.level();
    Ok(Outcome {
        estimate: EstimateWithCI {
            point: d,
            ci_low: d,
            ci_high: d,
            level,
            trials: cfg.trials,
        },
        theory: Some(0.0),
        discrepancy: d,
        tolerance: resolve_tolerance(cfg, None),
        extra: None,
        samples,
    })
}

const CLIQUE_BRACKET: (f64, f64) = (0.49, 0.54);

fn clique(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let samples: Vec<f64> = run_trials(cfg, |seed| {
        Ok(clique_number(&gen_scheinerman(n, seed)?) as f64 / n as f64)
    })?;
    let estimate = estimate_mean(&samples, cfg.level())?;
    let outside = samples
        .iter()
        .filter(|&&x| !(CLIQUE_BRACKET.0..=CLIQUE_BRACKET.1).contains(&x))
        .count() as u64;
    Ok(Outcome {
        estimate,
        theory: Some(0.5),
        discrepancy: outside as f64 / cfg.trials as f64,
        tolerance: resolve_tolerance(cfg, None),
        extra: Some(json!({
            "bracket": [CLIQUE_BRACKET.0, CLIQUE_BRACKET.1],
            "trials_outside_bracket": outside,
        })),
        samples,
    })
}

fn chi_equals_omega(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let flags = run_trials(cfg, |seed| {
        let fam = gen_scheinerman(n, seed)?;
        Ok(chromatic_number(&fam) == clique_number(&fam))
    })?;
    let equal = count_true(&flags);
    let mismatches = cfg.trials - equal;
    let estimate = estimate_proportion(equal, cfg.trials, cfg.level())?;
    Ok(Outcome {
        estimate,
        theory: Some(1.0),
        discrepancy: mismatches as f64,
        tolerance: resolve_tolerance(cfg, None),
        extra: Some(json!({ "mismatch_trials": mismatches })),
        samples: Vec::new(),
    })
}

fn independence(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let sqrt_n = (n as f64).sqrt();
    let samples: Vec<f64> = run_trials(cfg, |seed| {
        Ok(independence_number(&gen_scheinerman(n, seed)?).size as f64 / sqrt_n)
    })?;
    let estimate = estimate_mean(&samples, cfg.level())?;
    let theory = theory::independence_constant();
    Ok(Outcome {
        estimate,
        theory: Some(theory),
        discrepancy: (estimate.point - theory).abs(),
        tolerance: resolve_tolerance(cfg, None),
        extra: None,
        samples,
    })
}

fn gnp_degrees(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let p = cfg.options.p.unwrap_or(2.0 / 3.0);
    let epsilon = cfg.options.epsilon.unwrap_or(0.1);
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("gnp requires p in [0,1], got {p}")));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain(format!("epsilon must be > 0, got {epsilon}")));
    }
    let lo = (p - epsilon) * n as f64;
    let hi = (p + epsilon) * n as f64;
    let flags = run_trials(cfg, |seed| {
        let g = gen_gnp(n, p, seed)?;
        Ok(g.degrees()
            .iter()
            .all(|&d| (lo..=hi).contains(&(d as f64))))
    })?;
    let clean = count_true(&flags);
    let estimate = estimate_proportion(clean, cfg.trials, cfg.level())?;
    Ok(Outcome {
        estimate,
        theory: Some(1.0),
        discrepancy: (cfg.trials - clean) as f64,
        tolerance: resolve_tolerance(cfg, None),
        extra: Some(json!({ "band": [lo, hi], "p": p, "epsilon": epsilon })),
        samples: Vec::new(),
    })
}

fn model_equivalence(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let max_edges = n * (n - 1) / 2;
    let counts_per_trial: Vec<usize> = run_trials(cfg, |seed| {
        Ok(interval_edge_count(&gen_scheinerman(n, seed)?) as usize)
    })?;
    let mut histogram = vec![0u64; max_edges + 1];
    for k in counts_per_trial {
        histogram[k] += 1;
    }
    let exact = oracle::exact_edge_count_distribution(n)?;
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for (k, &count) in histogram.iter().enumerate() {
        let empirical = count as f64 / cfg.trials as f64;
        let (num, den) = oracle::rational_parts(&exact.probability(k));
        let exact_f = num as f64 / den as f64;
        worst = worst.max((empirical - exact_f).abs());
        rows.push(json!({
            "edges": k,
            "empirical": empirical,
            "exact": format!("{num}/{den}"),
        }));
    }
    let level = cfg.level();
    Ok(Outcome {
        estimate: EstimateWithCI {
            point: worst,
            ci_low: worst,
            ci_high: worst,
            level,
            trials: cfg.trials,
        },
        theory: Some(0.0),
        discrepancy: worst,
        tolerance: resolve_tolerance(cfg, None),
        extra: Some(json!({ "distribution": rows })),
        samples: Vec::new(),
    })
}

fn dotprod_edges(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let r = cfg.options.r.unwrap_or(1.0);
    let counts: Vec<f64> = run_trials(cfg, |seed| {
        Ok(gen_dot_product(n, r, seed)?.graph.edge_count() as f64)
    })?;
    let estimate = estimate_mean(&counts, cfg.level())?;
    let pairs = (n * (n - 1) / 2) as f64;
    let theory = pairs * theory::dot_edge_probability(r)?;
    let (mean, sd) = mean_and_sd(&counts);
    let se = sd / (counts.len() as f64).sqrt();
    Ok(Outcome {
        estimate,
        theory: Some(theory),
        discrepancy: (mean - theory).abs(),
        tolerance: resolve_tolerance(cfg, Some(3.0 * se)),
        extra: Some(json!({ "r": r, "se_of_mean": se })),
        samples: counts,
    })
}

fn dotprod_clustering(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    if n < 3 {
        return Err(Error::domain("dotprod-clustering requires n >= 3"));
    }
    let r = cfg.options.r.unwrap_or(1.0);
    let total_triples = cfg.options.triples.unwrap_or(1_000_000);
    let per_trial = total_triples.div_ceil(cfg.trials);
    struct TripleCounts {
        triples: u64,
        paths: u64,
        closed_paths: u64,
        marginal_edges: u64,
    }
    let counts = run_trials(cfg, |seed| {
        let dp = gen_dot_product(n, r, seed)?;
        let g = &dp.graph;
        // triple sampling draws from a derived substream so the generator's
        // draw sequence stays untouched
        let mut st = Stream::new(seed.substream(1).stream);
        let mut c = TripleCounts {
            triples: per_trial,
            paths: 0,
            closed_paths: 0,
            marginal_edges: 0,
        };
        for _ in 0..per_trial {
            let (a, b, v) = loop {
                let a = st.below(n as u64) as usize;
                let b = st.below(n as u64) as usize;
                let v = st.below(n as u64) as usize;
                if a != b && b != v && a != v {
                    break (a, b, v);
                }
            };
            let ac = g.has_edge(a, v);
            if ac {
                c.marginal_edges += 1;
            }
            if g.has_edge(a, b) && g.has_edge(b, v) {
                c.paths += 1;
                if ac {
                    c.closed_paths += 1;
                }
            }
        }
        Ok(c)
    })?;
    let triples: u64 = counts.iter().map(|c| c.triples).sum();
    let paths: u64 = counts.iter().map(|c| c.paths).sum();
    let closed: u64 = counts.iter().map(|c| c.closed_paths).sum();
    let marginal: u64 = counts.iter().map(|c| c.marginal_edges).sum();
    if paths == 0 {
        return Err(Error::domain(
            "no two-edge paths sampled; increase trials or triples",
        ));
    }
    let p_cond = closed as f64 / paths as f64;
    let p_marg = marginal as f64 / triples as f64;
    let gap = p_cond - p_marg;
    let level = cfg.level();
    let z = if level == 0.99 {
        2.5758293035489004
    } else {
        1.959963984540054
    };
    // conservative difference CI: independent-proportions standard error
    let se = (p_cond * (1.0 - p_cond) / paths as f64
        + p_marg * (1.0 - p_marg) / triples as f64)
        .sqrt();
    let ci_low = gap - z * se;
    let ci_high = gap + z * se;
    let expected_gap = {
        let cond = (r + 1.0) * (r + 1.0) / ((2.0 * r + 1.0) * (2.0 * r + 1.0));
        cond - theory::dot_edge_probability(r)?
    };
    Ok(Outcome {
        estimate: EstimateWithCI {
            point: gap,
            ci_low,
            ci_high,
            level,
            trials: cfg.trials,
        },
        theory: Some(expected_gap),
        discrepancy: (-ci_low).max(0.0),
        tolerance: resolve_tolerance(cfg, None),
        extra: Some(json!({
            "r": r,
            "sampled_triples": triples,
            "two_edge_paths": paths,
            "p_closure_given_path": p_cond,
            "p_edge_marginal": p_marg,
        })),
        samples: Vec::new(),
    })
}

fn dotprod_structure(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let r = cfg.options.r.unwrap_or(1.0);
    struct Structure {
        isolated: u64,
        giant_size: usize,
        giant_diameter: usize,
    }
    let rows = run_trials(cfg, |seed| {
        let dp = gen_dot_product(n, r, seed)?;
        let comps = connected_components(&dp.graph);
        let isolated = comps.iter().filter(|c| c.len() == 1).count() as u64;
        let giant = comps.iter().max_by_key(|c| c.len()).expect("n >= 1");
        Ok(Structure {
            isolated,
            giant_size: giant.len(),
            giant_diameter: component_diameter(&dp.graph, giant),
        })
    })?;
    let isolated: Vec<f64> = rows.iter().map(|s| s.isolated as f64).collect();
    let estimate = estimate_mean(&isolated, cfg.level())?;
    let mean_giant =
        rows.iter().map(|s| s.giant_size as f64).sum::<f64>() / rows.len() as f64;
    let mean_diam =
        rows.iter().map(|s| s.giant_diameter as f64).sum::<f64>() / rows.len() as f64;
    let max_diam = rows.iter().map(|s| s.giant_diameter).max().expect("trials >= 1");
    let diam_le_6 = rows.iter().filter(|s| s.giant_diameter <= 6).count() as f64;
    Ok(Outcome {
        estimate,
        theory: None,
        discrepancy: 0.0,
        tolerance: resolve_tolerance(cfg, None),
        extra: Some(json!({
            "r": r,
            "mean_isolated_vertices": estimate.point,
            "mean_giant_component_size": mean_giant,
            "mean_giant_diameter": mean_diam,
            "max_giant_diameter": max_diam,
            "fraction_giant_diameter_le_6": diam_le_6 / rows.len() as f64,
        })),
        samples: Vec::new(),
    })
}

fn rig_diameter(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let flags = run_trials(cfg, |seed| Ok(diameter_is_two(&gen_scheinerman(n, seed)?)))?;
    let estimate = estimate_proportion(count_true(&flags), cfg.trials, cfg.level())?;
    let theory = 2.0 / 3.0;
    Ok(Outcome {
        estimate,
        theory: Some(theory),
        discrepancy: (theory - estimate.point).max(0.0),
        tolerance: resolve_tolerance(cfg, None),
        extra: None,
        samples: Vec::new(),
    })
}

impl ExperimentReport {
    /// Equality of everything except the wall clock, for reproducibility
    /// checks.
    pub fn same_results(&self, other: &ExperimentReport) -> bool {
        let strip = |r: &ExperimentReport| {
            let mut v = serde_json::to_value(r).expect("report serializes");
            v.as_object_mut()
                .expect("report is an object")
                .remove("wall_time_s");
            v
        };
        strip(self) == strip(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(experiment: Experiment, n: usize, trials: u64, seed: u64) -> ExperimentConfig {
        ExperimentConfig::new(experiment, n, trials, seed)
    }

    #[test]
    fn experiment_names_round_trip() {
        for name in EXPERIMENT_NAMES {
            assert_eq!(Experiment::parse(name).unwrap().name(), name);
        }
        let err = Experiment::parse("nope");
        assert!(matches!(err, Err(Error::UnknownName { .. })));
    }

    #[test]
    fn config_validation() {
        assert!(run_experiment(&cfg(Experiment::EdgeProb, 1, 10, 0)).is_err());
        assert!(run_experiment(&cfg(Experiment::EdgeProb, 2, 0, 0)).is_err());
        assert!(run_experiment(&cfg(Experiment::ModelEquivalence, 9, 10, 0)).is_err());
        let mut c = cfg(Experiment::EdgeProb, 2, 10, 0);
        c.tolerance = Some(-1.0);
        assert!(run_experiment(&c).is_err());
    }

    #[test]
    fn sample_cap_guard() {
        let mut c = cfg(Experiment::EdgeCount, 4, 100, 0);
        c.options.sample_cap = Some(50);
        assert!(run_experiment(&c).is_err());
        c.options.sample_cap = Some(100);
        assert!(run_experiment(&c).is_ok());
    }

    #[test]
    fn pass_equals_discrepancy_within_tolerance() {
        let report = run_experiment(&cfg(Experiment::EdgeProb, 2, 2_000, 5)).unwrap();
        assert_eq!(report.pass, report.discrepancy <= report.tolerance);
        let mut c = cfg(Experiment::EdgeProb, 2, 2_000, 5);
        c.tolerance = Some(1e-9); // virtually guaranteed to fail
        let report = run_experiment(&c).unwrap();
        assert_eq!(report.pass, report.discrepancy <= report.tolerance);
        assert!(!report.pass);
    }

    #[test]
    fn chi_equals_omega_is_exact() {
        let report = run_experiment(&cfg(Experiment::ChiEqualsOmega, 300, 25, 7)).unwrap();
        assert!(report.pass);
        assert_eq!(report.discrepancy, 0.0);
        assert_eq!(report.estimate.point, 1.0);
    }

    #[test]
    fn reports_are_reproducible_serial_and_parallel() {
        let config = cfg(Experiment::EdgeCount, 50, 200, 99);
        let a = run_experiment(&config).unwrap();
        let b = run_experiment(&config).unwrap();
        assert!(a.same_results(&b));
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let c = single.install(|| run_experiment(&config)).unwrap();
        assert!(a.same_results(&c));
        assert_eq!(a.samples, c.samples);
    }

    #[test]
    fn edge_prob_indicator_variance_matches_bernoulli() {
        let trials = 100_000u64;
        let report = run_experiment(&cfg(Experiment::EdgeProb, 2, trials, 12)).unwrap();
        let p = report.estimate.point;
        // sample variance of a 0/1 indicator is p(1-p) * n/(n-1); it must
        // sit near the true Bernoulli variance 2/9 if trials are
        // independent
        let sample_var = p * (1.0 - p) * trials as f64 / (trials - 1) as f64;
        assert!((sample_var - 2.0 / 9.0).abs() < 0.1 * (2.0 / 9.0));
    }

    #[test]
    fn rig_diameter_small_smoke() {
        let report = run_experiment(&cfg(Experiment::RigDiameter, 60, 400, 3)).unwrap();
        // at n = 60 the diameter-2 fraction is already comfortably above
        // the 2/3 floor
        assert!(report.pass, "{}", report.human_line());
    }

    #[test]
    fn samples_csv_round_trip() {
        let report = run_experiment(&cfg(Experiment::EdgeCount, 10, 5, 1)).unwrap();
        let csv = report.samples_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("trial,value"));
        assert_eq!(lines.count(), 5);
        let no_samples = run_experiment(&cfg(Experiment::EdgeProb, 2, 5, 1)).unwrap();
        assert!(no_samples.samples_csv().is_none());
    }

    #[test]
    fn max_degree_tail_sits_near_one() {
        // at n = 200 the cut n - n^0.6 ~ 176 is almost always reached
        let report = run_experiment(&cfg(Experiment::MaxDegreeTail, 200, 200, 17)).unwrap();
        assert!(report.estimate.point >= 0.9, "{}", report.human_line());
        assert!(report.pass);
    }

    #[test]
    fn dotprod_structure_is_report_only() {
        let report = run_experiment(&cfg(Experiment::DotprodStructure, 60, 10, 23)).unwrap();
        assert!(report.pass);
        assert_eq!(report.discrepancy, 0.0);
        assert!(report.theory.is_none());
        let extra = report.extra.unwrap();
        assert!(extra["mean_giant_component_size"].as_f64().unwrap() > 0.0);
        assert!(extra["mean_isolated_vertices"].as_f64().unwrap() >= 0.0);
    }

    #[test]
    fn dotprod_clustering_gap_matches_closed_form() {
        let mut c = cfg(Experiment::DotprodClustering, 300, 40, 29);
        c.options.triples = Some(200_000);
        let report = run_experiment(&c).unwrap();
        assert!(report.pass, "{}", report.human_line());
        // gap for r = 1 is 4/9 - 1/4 = 7/36
        let expected = report.theory.unwrap();
        assert!((expected - 7.0 / 36.0).abs() < 1e-12);
        assert!((report.estimate.point - expected).abs() < 0.02);
    }

    #[test]
    fn gnp_degrees_band_is_clean_at_moderate_n() {
        let report = run_experiment(&cfg(Experiment::GnpDegrees, 400, 20, 31)).unwrap();
        assert!(report.pass);
        assert_eq!(report.discrepancy, 0.0);
    }

    #[test]
    fn report_json_schema_keys() {
        let report = run_experiment(&cfg(Experiment::EdgeProb, 2, 100, 1)).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        for key in [
            "experiment",
            "model",
            "n",
            "trials",
            "seed",
            "estimate",
            "theory",
            "discrepancy",
            "tolerance",
            "pass",
            "wall_time_s",
        ] {
            assert!(v.get(key).is_some(), "missing key {key}");
        }
        for key in ["point", "ci_low", "ci_high", "level"] {
            assert!(v["estimate"].get(key).is_some(), "missing estimate.{key}");
        }
        assert_eq!(v["model"], "scheinerman");
    }
}
