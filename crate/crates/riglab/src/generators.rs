//! Seeded random generators for all six graph models.
//!
//! Every generator is a pure function of (parameters, seed): the draw order
//! is fixed and documented per model, so identical seeds reproduce
//! identical families and graphs bit-exactly on any platform.

use serde::{Deserialize, Serialize};

use crate::core::{FamilySource, Graph, Interval, IntervalFamily};
use crate::error::{Error, Result};
pub use crate::rng::RngSeed;
use crate::rng::Stream;

/// Parameters of one model instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelParams {
    Scheinerman { n: usize },
    Matching { n: usize },
    Prisner { n: usize, m: f64 },
    Gnp { n: usize, p: f64 },
    DotProduct { n: usize, r: f64 },
    Threshold { n: usize },
}

impl ModelParams {
    pub fn n(&self) -> usize {
        match *self {
            ModelParams::Scheinerman { n }
            | ModelParams::Matching { n }
            | ModelParams::Prisner { n, .. }
            | ModelParams::Gnp { n, .. }
            | ModelParams::DotProduct { n, .. }
            | ModelParams::Threshold { n } => n,
        }
    }

    pub fn model_name(&self) -> &'static str {
        match self {
            ModelParams::Scheinerman { .. } => "scheinerman",
            ModelParams::Matching { .. } => "matching",
            ModelParams::Prisner { .. } => "prisner",
            ModelParams::Gnp { .. } => "gnp",
            ModelParams::DotProduct { .. } => "dotprod",
            ModelParams::Threshold { .. } => "threshold",
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n() < 1 {
            return Err(Error::domain("n must be at least 1"));
        }
        match *self {
            ModelParams::Prisner { m, .. } if !(m.is_finite() && m >= 1.0) => {
                Err(Error::domain(format!("prisner requires m >= 1, got {m}")))
            }
            ModelParams::Gnp { p, .. } if !(p.is_finite() && (0.0..=1.0).contains(&p)) => {
                Err(Error::domain(format!("gnp requires p in [0,1], got {p}")))
            }
            ModelParams::DotProduct { r, .. } if !(r.is_finite() && r >= 0.0) => {
                Err(Error::domain(format!("dotprod requires r >= 0, got {r}")))
            }
            _ => Ok(()),
        }
    }
}

/// n intervals with iid Uniform[0,1] endpoints, drawn in the fixed order
/// X_1, Y_1, X_2, Y_2, ... and normalized to [min, max].
///
/// Fails only on the measure-zero event that two of the 2n endpoint draws
/// collide at f64 precision.
pub fn gen_scheinerman(n: usize, seed: RngSeed) -> Result<IntervalFamily> {
    if n < 1 {
        return Err(Error::domain("n must be at least 1"));
    }
    let mut st = Stream::from_seed(seed);
    let mut intervals = Vec::with_capacity(n);
    for _ in 0..n {
        let x = st.uniform();
        let y = st.uniform();
        intervals.push(Interval::new(x, y).expect("uniform draws are finite"));
    }
    IntervalFamily::new(FamilySource::Scheinerman { n }, seed.stream, intervals)
}

/// The discrete equivalent model: endpoints 1..2n paired by a uniformly
/// random perfect matching, sampled by sequential pairing (match the
/// smallest free endpoint with a uniformly chosen free partner, repeat),
/// which is exactly uniform over the (2n-1)!! matchings.
pub fn gen_matching(n: usize, seed: RngSeed) -> Result<IntervalFamily> {
    if n < 1 {
        return Err(Error::domain("n must be at least 1"));
    }
    let mut st = Stream::from_seed(seed);
    let mut free: Vec<u32> = (1..=2 * n as u32).collect();
    let mut intervals = Vec::with_capacity(n);
    for _ in 0..n {
        let a = free.remove(0);
        let pick = st.below(free.len() as u64) as usize;
        let b = free.remove(pick);
        intervals.push(Interval::new(a as f64, b as f64).expect("integers are finite"));
    }
    IntervalFamily::new(FamilySource::Matching { n }, seed.stream, intervals)
}

/// n unit intervals [L_i, L_i + 1] with L_i iid Uniform[0, m-1], so every
/// interval lies inside [0, m]. At m = 1 all intervals coincide at [0, 1].
pub fn gen_prisner(n: usize, m: f64, seed: RngSeed) -> Result<IntervalFamily> {
    ModelParams::Prisner { n, m }.validate()?;
    let mut st = Stream::from_seed(seed);
    let span = m - 1.0;
    let mut intervals = Vec::with_capacity(n);
    for _ in 0..n {
        let lo = span * st.uniform();
        intervals.push(Interval::new(lo, lo + 1.0).expect("finite"));
    }
    IntervalFamily::new(FamilySource::Prisner { n, m }, seed.stream, intervals)
}

/// Erdős–Rényi G(n, p): each of the C(n,2) edges present independently
/// with probability p, decided in row-major pair order (0,1), (0,2), ...
pub fn gen_gnp(n: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    ModelParams::Gnp { n, p }.validate()?;
    let mut st = Stream::from_seed(seed);
    let mut g = Graph::new_empty(n)?;
    for i in 0..n {
        for j in (i + 1)..n {
            if st.bernoulli(p) {
                g.set_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Threshold graph: weights x_v iid Uniform[0,1] drawn in vertex order,
/// then the deterministic rule v ~ w iff x_v + x_w >= 1.
pub fn gen_threshold(n: usize, seed: RngSeed) -> Result<Graph> {
    if n < 1 {
        return Err(Error::domain("n must be at least 1"));
    }
    let mut st = Stream::from_seed(seed);
    let weights: Vec<f64> = (0..n).map(|_| st.uniform()).collect();
    let mut g = Graph::new_empty(n)?;
    for i in 0..n {
        for j in (i + 1)..n {
            if weights[i] + weights[j] >= 1.0 {
                g.set_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// A 1-D random dot-product graph together with its latent positions.
#[derive(Debug, Clone, PartialEq)]
pub struct DotProductGraph {
    pub graph: Graph,
    pub latent: Vec<f64>,
}

/// 1-D random dot-product graph with f(t) = t^r: latent x_v iid
/// Uniform[0,1] in vertex order, then each pair (i, j) in row-major order
/// draws one uniform and takes the edge iff it is below (x_i * x_j)^r.
///
/// One uniform is consumed per pair regardless of the outcome, so the draw
/// layout does not depend on the sampled values. Integer r is evaluated by
/// repeated multiplication to keep results platform-exact; fractional r
/// goes through powf.
pub fn gen_dot_product(n: usize, r: f64, seed: RngSeed) -> Result<DotProductGraph> {
    ModelParams::DotProduct { n, r }.validate()?;
    let mut st = Stream::from_seed(seed);
    let latent: Vec<f64> = (0..n).map(|_| st.uniform()).collect();
    let pow: Box<dyn Fn(f64) -> f64> = if r == 0.0 {
        Box::new(|_| 1.0)
    } else if r.fract() == 0.0 && r <= 127.0 {
        let k = r as i32;
        Box::new(move |t: f64| t.powi(k))
    } else {
        Box::new(move |t: f64| t.powf(r))
    };
    let mut g = Graph::new_empty(n)?;
    for i in 0..n {
        for j in (i + 1)..n {
            let p = pow(latent[i] * latent[j]);
            if st.uniform() < p {
                g.set_edge(i, j);
            }
        }
    }
    Ok(DotProductGraph { graph: g, latent })
}

/// Dimension-reserving front for the dot-product generator; only the
/// analyzed d = 1 case is implemented and anything else is rejected.
pub fn gen_dot_product_dim(n: usize, r: f64, d: usize, seed: RngSeed) -> Result<DotProductGraph> {
    if d != 1 {
        return Err(Error::domain(format!(
            "dot-product graphs support latent dimension 1 only, got d = {d}"
        )));
    }
    gen_dot_product(n, r, seed)
}
