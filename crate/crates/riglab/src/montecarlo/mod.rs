//! Declarative, reproducible Monte Carlo experiments.
//!
//! Each experiment runs `trials` independent trials, every trial owning the
//! stream derived from (master seed, trial index). Trials are
//! embarrassingly parallel; per-trial summaries land in index order and the
//! reduction is sequential, so the report is byte-identical (wall time
//! aside) no matter the scheduling.

mod experiments;

pub use experiments::{run_experiment, Experiment, ExperimentConfig, Options, EXPERIMENT_NAMES};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{splitmix64_at, RngSeed};

/// Stream seed for one trial: the `trial`-th splitmix64 output of the
/// master seed. Injective over trial indices in practice (64-bit mix).
pub fn derive_trial_seed(master: u64, trial: u64) -> RngSeed {
    RngSeed {
        master,
        stream: splitmix64_at(master, trial),
    }
}

/// A point estimate with a confidence interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithCI {
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub level: f64,
    pub trials: u64,
}

/// Two-sided normal quantiles for the supported confidence levels.
fn z_for_level(level: f64) -> Result<f64> {
    if level == 0.95 {
        Ok(1.959963984540054)
    } else if level == 0.99 {
        Ok(2.5758293035489004)
    } else {
        Err(Error::domain(format!(
            "confidence level must be 0.95 or 0.99, got {level}"
        )))
    }
}

/// Wilson score interval for a binomial proportion. Chosen over Wald for
/// its coverage near 0 and 1, where several tail experiments live.
pub fn estimate_proportion(successes: u64, trials: u64, level: f64) -> Result<EstimateWithCI> {
    if trials == 0 {
        return Err(Error::domain("estimate_proportion requires trials >= 1"));
    }
    if successes > trials {
        return Err(Error::domain(format!(
            "successes {successes} exceed trials {trials}"
        )));
    }
    let z = z_for_level(level)?;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * ((p * (1.0 - p)) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // at the boundaries the Wilson bound is exactly the boundary; computing
    // it through the sqrt leaves an ulp of residue
    let ci_low = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let ci_high = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    Ok(EstimateWithCI {
        point: p,
        ci_low,
        ci_high,
        level,
        trials,
    })
}

/// Mean with a normal-approximation interval from the sample variance.
pub fn estimate_mean(samples: &[f64], level: f64) -> Result<EstimateWithCI> {
    if samples.is_empty() {
        return Err(Error::domain("estimate_mean requires samples"));
    }
    let z = z_for_level(level)?;
    let (mean, sd) = mean_and_sd(samples);
    let se = sd / (samples.len() as f64).sqrt();
    Ok(EstimateWithCI {
        point: mean,
        ci_low: mean - z * se,
        ci_high: mean + z * se,
        level,
        trials: samples.len() as u64,
    })
}

/// Sample mean and sample standard deviation (n - 1 denominator; 0 for a
/// single sample).
pub fn mean_and_sd(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = samples.iter().map(|&x| (x - mean) * (x - mean)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Right-continuous empirical CDF, evaluable anywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

/// Builds the step CDF of the given samples; input order is irrelevant.
pub fn empirical_cdf(values: &[f64]) -> EmpiricalCdf {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    EmpiricalCdf { sorted }
}

impl EmpiricalCdf {
    /// F(x) = (number of samples <= x) / n.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }
}

/// Sup-norm distance between an empirical CDF and a theoretical one,
/// evaluated at both one-sided limits of every sample point plus `grid`
/// evenly spaced points across the sample range.
pub fn ks_distance<F: Fn(f64) -> f64>(ecdf: &EmpiricalCdf, theory: F, grid: usize) -> f64 {
    let n = ecdf.sorted.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in ecdf.sorted.iter().enumerate() {
        let t = theory(x);
        sup = sup.max((t - i as f64 / n).abs());
        sup = sup.max(((i + 1) as f64 / n - t).abs());
    }
    if grid >= 2 && !ecdf.sorted.is_empty() {
        let lo = ecdf.sorted[0];
        let hi = *ecdf.sorted.last().expect("non-empty");
        for k in 0..grid {
            let x = lo + (hi - lo) * k as f64 / (grid - 1) as f64;
            sup = sup.max((ecdf.eval(x) - theory(x)).abs());
        }
    }
    sup
}

/// The `estimate` block of the report JSON.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateJson {
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub level: f64,
}

impl From<EstimateWithCI> for EstimateJson {
    fn from(e: EstimateWithCI) -> EstimateJson {
        EstimateJson {
            point: e.point,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            level: e.level,
        }
    }
}

/// Machine-readable outcome of one experiment run. `pass` always equals
/// `discrepancy <= tolerance`; `extra` carries per-experiment diagnostics
/// and `samples` (not serialized) the retained per-trial statistics for
/// CSV export.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub model: String,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub estimate: EstimateJson,
    pub theory: Option<f64>,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<serde_json::Value>,
    #[serde(skip)]
    pub samples: Vec<f64>,
}

impl ExperimentReport {
    /// One-line human verdict for stderr.
    pub fn human_line(&self) -> String {
        let theory = match self.theory {
            Some(t) => format!("{t:.6}"),
            None => "-".to_string(),
        };
        format!(
            "{}: estimate {:.6} [{:.6}, {:.6}] theory {} discrepancy {:.6} tolerance {:.6} {} ({:.2}s)",
            self.experiment,
            self.estimate.point,
            self.estimate.ci_low,
            self.estimate.ci_high,
            theory,
            self.discrepancy,
            self.tolerance,
            if self.pass { "PASS" } else { "FAIL" },
            self.wall_time_s
        )
    }

    /// Per-trial statistics as CSV (`trial,value` rows), when retained.
    pub fn samples_csv(&self) -> Option<String> {
        if self.samples.is_empty() {
            return None;
        }
        let mut out = String::from("trial,value\n");
        for (i, v) in self.samples.iter().enumerate() {
            out.push_str(&format!("{i},{v:.16e}\n"));
        }
        Some(out)
    }
}
