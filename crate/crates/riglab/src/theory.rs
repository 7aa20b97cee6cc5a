//! Closed-form constants and limit laws as plain evaluatable functions,
//! plus tabulation into plot-ready curves.
//!
//! Everything here is double precision. Branch boundaries at 1/2 use the
//! simple branch; the two branches agree there to the last bit, so the
//! choice only pins determinism. Where an arccos term cancels analytically
//! at a domain endpoint but leaves an ulp of residue when evaluated
//! directly, the endpoint value is returned exactly.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Probability that any fixed pair of uniform random intervals intersects.
pub fn edge_probability() -> f64 {
    2.0 / 3.0
}

/// Expected number of edges among n uniform random intervals: n(n-1)/3.
pub fn expected_edges(n: usize) -> f64 {
    (n as f64) * (n as f64 - 1.0) / 3.0
}

/// CDF of the squared interval radius: P(rho^2 <= y) for an interval with
/// iid Uniform[0,1] endpoints.
///
/// `y <= 1/2`: the two corner quarter-circles are disjoint and the mass is
/// `y*pi/2`. `y > 1/2`: they overlap and the lens area is subtracted,
/// giving `y*(pi/2 - 2*acos(1/sqrt(2y))) + sqrt(2y-1)`.
///
/// The statement targets y in [0, 1]; values above 1 evaluate the second
/// branch as written (its natural extension, no longer a probability).
/// At y = 1 the formula collapses to exactly 1 and is returned as such.
pub fn radius_sq_cdf(y: f64) -> Result<f64> {
    if !y.is_finite() || y < 0.0 {
        return Err(Error::domain(format!(
            "radius_sq_cdf requires y >= 0, got {y}"
        )));
    }
    if y <= 0.5 {
        Ok(y * FRAC_PI_2)
    } else if y == 1.0 {
        Ok(1.0)
    } else {
        Ok(y * (FRAC_PI_2 - 2.0 * (1.0 / (2.0 * y).sqrt()).acos()) + (2.0 * y - 1.0).sqrt())
    }
}

/// Limiting CDF of the normalized degree: lim P(d(v) <= x*n).
///
/// For x >= 1/2 this is `1 - (1-x)*pi/2`; below 1/2 the corner circles of
/// the complementary radius event overlap and
/// `1 - (1-x)*(pi/2 - 2*acos(1/sqrt(2-2x))) - sqrt(1-2x)` applies.
/// Identically equal to `1 - radius_sq_cdf(1 - x)`.
pub fn degree_cdf_limit(x: f64) -> Result<f64> {
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "degree_cdf_limit requires x in [0,1], got {x}"
        )));
    }
    if x >= 0.5 {
        Ok(1.0 - (1.0 - x) * FRAC_PI_2)
    } else if x == 0.0 {
        Ok(0.0)
    } else {
        Ok(1.0
            - (1.0 - x) * (FRAC_PI_2 - 2.0 * (1.0 / (2.0 - 2.0 * x).sqrt()).acos())
            - (1.0 - 2.0 * x).sqrt())
    }
}

/// Limiting CDF of the normalized minimum degree:
/// lim P(delta < k*sqrt(n)) = 1 - exp(-k^2/2), the Rayleigh law.
pub fn min_degree_cdf_limit(k: f64) -> Result<f64> {
    if !k.is_finite() || k < 0.0 {
        return Err(Error::domain(format!(
            "min_degree_cdf_limit requires k >= 0, got {k}"
        )));
    }
    Ok(-((-k * k / 2.0).exp_m1()))
}

/// Limit of alpha(G)/sqrt(n): 2/sqrt(pi).
pub fn independence_constant() -> f64 {
    2.0 / PI.sqrt()
}

/// Edge probability of the 1-D dot-product model with f(t) = t^r:
/// 1/(1+r)^2.
pub fn dot_edge_probability(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::domain(format!(
            "dot_edge_probability requires r >= 0, got {r}"
        )));
    }
    Ok(1.0 / ((1.0 + r) * (1.0 + r)))
}

/// Expected number of the n random intervals covering the point x:
/// n*(2x - 2x^2), maximized at x = 1/2 where it equals n/2.
pub fn expected_point_cover(n: usize, x: f64) -> Result<f64> {
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "expected_point_cover requires x in [0,1], got {x}"
        )));
    }
    Ok(n as f64 * 2.0 * x * (1.0 - x))
}

/// The tabulated laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    DegreeCdf,
    RadiusCdf,
    MinDegreeCdf,
}

pub const CURVE_NAMES: [&str; 3] = ["degree-cdf", "radius-cdf", "min-degree-cdf"];

impl CurveKind {
    pub fn parse(name: &str) -> Result<CurveKind> {
        match name {
            "degree-cdf" => Ok(CurveKind::DegreeCdf),
            "radius-cdf" => Ok(CurveKind::RadiusCdf),
            "min-degree-cdf" => Ok(CurveKind::MinDegreeCdf),
            _ => Err(Error::UnknownName {
                kind: "curve",
                name: name.to_string(),
                valid: CURVE_NAMES.join(", "),
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::DegreeCdf => "degree-cdf",
            CurveKind::RadiusCdf => "radius-cdf",
            CurveKind::MinDegreeCdf => "min-degree-cdf",
        }
    }

    /// Natural tabulation domain. The minimum-degree law lives on [0, inf);
    /// [0, 6] carries all but ~1.5e-8 of its mass.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            CurveKind::DegreeCdf | CurveKind::RadiusCdf => (0.0, 1.0),
            CurveKind::MinDegreeCdf => (0.0, 6.0),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            CurveKind::DegreeCdf => degree_cdf_limit(x),
            CurveKind::RadiusCdf => radius_sq_cdf(x),
            CurveKind::MinDegreeCdf => min_degree_cdf_limit(x),
        }
    }
}

/// A tabulated closed-form function: strictly increasing x, nondecreasing F.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryCurve {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl TheoryCurve {
    /// CSV with header `x,F` and 17-significant-digit reals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,F\n");
        for &(x, f) in &self.points {
            writeln!(out, "{x:.16e},{f:.16e}").expect("writing to String cannot fail");
        }
        out
    }
}

/// Evenly spaced tabulation of a law on its natural domain with exact
/// endpoints.
pub fn tabulate(kind: CurveKind, points: usize) -> Result<TheoryCurve> {
    if points < 2 {
        return Err(Error::domain(format!(
            "tabulation needs at least 2 points, got {points}"
        )));
    }
    let (lo, hi) = kind.domain();
    let step = (hi - lo) / (points - 1) as f64;
    let mut out = Vec::with_capacity(points);
    for i in 0..points {
        let x = if i == points - 1 { hi } else { lo + i as f64 * step };
        out.push((x, kind.eval(x)?));
    }
    Ok(TheoryCurve {
        name: kind.name().to_string(),
        points: out,
    })
}
