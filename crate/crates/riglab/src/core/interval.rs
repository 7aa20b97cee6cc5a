use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` of the real line with `lo <= hi` always.
///
/// Endpoint order is normalized at construction: `Interval::new(a, b)`
/// stores `lo = min(a, b)`, `hi = max(a, b)`. Intersection follows the
/// closed-interval convention, so intervals sharing a single endpoint
/// intersect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Builds the interval with endpoints `{a, b}` in either order.
    pub fn new(a: f64, b: f64) -> Result<Interval> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::domain(format!(
                "interval endpoints must be finite, got ({a}, {b})"
            )));
        }
        Ok(Interval {
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Non-empty intersection test: `max(lo) <= min(hi)`.
    #[inline]
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo.max(other.lo) <= self.hi.min(other.hi)
    }

    /// Strict interval-order comparison: `self` ends before `other` begins.
    /// Intersecting intervals are incomparable in this order.
    #[inline]
    pub fn precedes(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    /// Distance from the corner structure of the unit square:
    /// `sqrt(lo^2 + (1 - hi)^2)` for an interval inside `[0, 1]`.
    ///
    /// One minus the square of this value is the probability that an
    /// independent uniform interval intersects `self`.
    pub fn radius(&self) -> Result<f64> {
        if self.lo < 0.0 || self.hi > 1.0 {
            return Err(Error::domain(format!(
                "radius requires an interval inside [0,1], got [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok((self.lo * self.lo + (1.0 - self.hi) * (1.0 - self.hi)).sqrt())
    }
}

impl TryFrom<(f64, f64)> for Interval {
    type Error = Error;

    fn try_from((lo, hi): (f64, f64)) -> Result<Interval> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Parse(format!(
                "interval endpoints must be finite numbers, got [{lo}, {hi}]"
            )));
        }
        if lo > hi {
            return Err(Error::Parse(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }
}

impl From<Interval> for (f64, f64) {
    fn from(iv: Interval) -> (f64, f64) {
        (iv.lo, iv.hi)
    }
}
