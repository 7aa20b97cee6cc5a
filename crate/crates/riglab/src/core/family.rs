use serde::{Deserialize, Serialize};

use crate::core::interval::Interval;
use crate::error::{Error, Result};

/// Provenance of an interval family: which model drew it and with which
/// parameters. Serialized flat into the family JSON as
/// `"model": <name>, "params": {...}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", content = "params", rename_all = "lowercase")]
pub enum FamilySource {
    /// n intervals with iid Uniform[0,1] endpoints.
    Scheinerman { n: usize },
    /// Endpoints 1..2n paired by a uniformly random perfect matching.
    Matching { n: usize },
    /// n unit intervals with left endpoints iid Uniform[0, m-1].
    Prisner { n: usize, m: f64 },
}

impl FamilySource {
    pub fn n(&self) -> usize {
        match *self {
            FamilySource::Scheinerman { n }
            | FamilySource::Matching { n }
            | FamilySource::Prisner { n, .. } => n,
        }
    }

    pub fn model_name(&self) -> &'static str {
        match self {
            FamilySource::Scheinerman { .. } => "scheinerman",
            FamilySource::Matching { .. } => "matching",
            FamilySource::Prisner { .. } => "prisner",
        }
    }

    /// Whether the backing theory assumes all 2n endpoints distinct.
    ///
    /// Scheinerman draws are continuous (ties have probability zero) and
    /// matching endpoints are distinct integers by construction, so a tie is
    /// a hard error for both. Prisner unit intervals may tie legitimately:
    /// at m = 1 every left endpoint is forced to 0.
    fn requires_distinct_endpoints(&self) -> bool {
        !matches!(self, FamilySource::Prisner { .. })
    }
}

/// An ordered list of n intervals plus the provenance that drew them; the
/// sample point of the model's probability space.
///
/// Immutable after construction. Construction enforces that the length
/// matches the declared n and, for the continuous-theory models, that all
/// 2n endpoints are pairwise distinct rather than silently tie-breaking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct IntervalFamily {
    source: FamilySource,
    seed: u64,
    intervals: Vec<Interval>,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    #[serde(flatten)]
    source: FamilySource,
    seed: u64,
    intervals: Vec<Interval>,
}

impl IntervalFamily {
    pub fn new(source: FamilySource, seed: u64, intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::domain("interval family must be non-empty"));
        }
        if intervals.len() != source.n() {
            return Err(Error::domain(format!(
                "family declares n = {} but holds {} intervals",
                source.n(),
                intervals.len()
            )));
        }
        if source.requires_distinct_endpoints() {
            let mut endpoints: Vec<f64> = Vec::with_capacity(2 * intervals.len());
            for iv in &intervals {
                endpoints.push(iv.lo());
                endpoints.push(iv.hi());
            }
            endpoints.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            for pair in endpoints.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::DuplicateEndpoint { value: pair[0] });
                }
            }
        }
        Ok(IntervalFamily {
            source,
            seed,
            intervals,
        })
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn source(&self) -> FamilySource {
        self.source
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl std::ops::Index<usize> for IntervalFamily {
    type Output = Interval;

    fn index(&self, i: usize) -> &Interval {
        &self.intervals[i]
    }
}

impl TryFrom<FamilyRepr> for IntervalFamily {
    type Error = Error;

    fn try_from(repr: FamilyRepr) -> Result<Self> {
        IntervalFamily::new(repr.source, repr.seed, repr.intervals)
    }
}

impl From<IntervalFamily> for FamilyRepr {
    fn from(f: IntervalFamily) -> FamilyRepr {
        FamilyRepr {
            source: f.source,
            seed: f.seed,
            intervals: f.intervals,
        }
    }
}

/// Parses a family from its JSON form, re-validating all invariants.
pub fn family_from_json(text: &str) -> Result<IntervalFamily> {
    Ok(serde_json::from_str(text)?)
}

/// Serializes a family to its JSON form. Endpoints are written as
/// shortest-round-trip decimals, so parse(write(f)) == f bit-exactly.
pub fn family_to_json(family: &IntervalFamily) -> String {
    serde_json::to_string(family).expect("family serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn rejects_wrong_length() {
        let err = IntervalFamily::new(
            FamilySource::Scheinerman { n: 3 },
            0,
            vec![iv(0.1, 0.2), iv(0.3, 0.4)],
        );
        assert!(err.is_err());
    }

    #[test]
    fn rejects_empty() {
        assert!(IntervalFamily::new(FamilySource::Scheinerman { n: 0 }, 0, vec![]).is_err());
    }

    #[test]
    fn rejects_duplicate_endpoints_for_continuous_models() {
        let err = IntervalFamily::new(
            FamilySource::Scheinerman { n: 2 },
            0,
            vec![iv(0.1, 0.3), iv(0.3, 0.5)],
        );
        assert!(matches!(err, Err(Error::DuplicateEndpoint { value }) if value == 0.3));
        // a degenerate point interval duplicates its own endpoint
        let err = IntervalFamily::new(FamilySource::Scheinerman { n: 1 }, 0, vec![iv(0.5, 0.5)]);
        assert!(err.is_err());
    }

    #[test]
    fn prisner_families_may_tie() {
        let fam = IntervalFamily::new(
            FamilySource::Prisner { n: 2, m: 1.0 },
            0,
            vec![iv(0.0, 1.0), iv(0.0, 1.0)],
        );
        assert!(fam.is_ok());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let fam = IntervalFamily::new(
            FamilySource::Scheinerman { n: 2 },
            42,
            vec![iv(0.1, 0.30000000000000004), iv(0.2, 0.9)],
        )
        .unwrap();
        let text = family_to_json(&fam);
        let back = family_from_json(&text).unwrap();
        assert_eq!(fam, back);
        assert_eq!(text, family_to_json(&back));
        // spot-check the wire shape
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["model"], "scheinerman");
        assert_eq!(v["params"]["n"], 2);
        assert_eq!(v["seed"], 42);
        assert!(v["intervals"].as_array().unwrap().len() == 2);
    }

    #[test]
    fn json_rejects_invalid_families() {
        // duplicate endpoint 0.3 across intervals
        let bad = r#"{"model":"scheinerman","params":{"n":2},"seed":1,"intervals":[[0.1,0.3],[0.3,0.5]]}"#;
        assert!(family_from_json(bad).is_err());
        // declared n mismatch
        let bad = r#"{"model":"matching","params":{"n":3},"seed":1,"intervals":[[1.0,2.0]]}"#;
        assert!(family_from_json(bad).is_err());
    }
}
