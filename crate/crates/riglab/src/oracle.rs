//! Brute-force and exact-enumeration ground truth for small instances.
//!
//! The matching enumerations run in exact rational arithmetic; floating
//! point never enters them. Guards refuse instance sizes where exhaustion
//! stops being instant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::core::{
    graph_from_intervals_naive, FamilySource, Graph, Interval, IntervalFamily,
};
use crate::error::{Error, Result};

/// Largest n for which all (2n-1)!! perfect matchings are enumerated
/// (135135 at n = 7).
pub const MAX_ENUMERATION_N: usize = 7;
const MAX_BRUTE_CLIQUE_N: usize = 20;
const MAX_BRUTE_CHROMATIC_N: usize = 12;

/// (2n-1)!!, the number of perfect matchings on 2n points.
pub fn double_factorial_odd(n: usize) -> u64 {
    (0..n).map(|i| 2 * i as u64 + 1).product()
}

/// Iterator over every perfect matching of {1, ..., 2n}, each presented as
/// an interval family.
///
/// Canonical order: the smallest free endpoint is always matched first and
/// its partner runs over the remaining free endpoints in ascending order,
/// depth-first. Iteration is therefore deterministic and resumable from a
/// choice vector.
pub struct Matchings {
    n: usize,
    // choices[d] = index of the partner among the free points remaining
    // after removing the smallest; None once exhausted
    choices: Option<Vec<usize>>,
}

pub fn enumerate_matchings(n: usize) -> Result<Matchings> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge {
            what: "matching enumeration",
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    Ok(Matchings {
        n,
        choices: Some(vec![0; n]),
    })
}

impl Matchings {
    fn family_for(&self, choices: &[usize]) -> IntervalFamily {
        let mut free: Vec<u32> = (1..=2 * self.n as u32).collect();
        let mut intervals = Vec::with_capacity(self.n);
        for &c in choices {
            let a = free.remove(0);
            let b = free.remove(c);
            intervals.push(
                Interval::new(a as f64, b as f64).expect("integer endpoints are finite"),
            );
        }
        IntervalFamily::new(FamilySource::Matching { n: self.n }, 0, intervals)
            .expect("matching endpoints are distinct")
    }
}

impl Iterator for Matchings {
    type Item = IntervalFamily;

    fn next(&mut self) -> Option<IntervalFamily> {
        let snapshot = self.choices.as_ref()?.clone();
        let out = self.family_for(&snapshot);
        // odometer increment; choice d ranges over 2(n-d)-1 partners
        let n = self.n;
        let choices = self.choices.as_mut().expect("checked above");
        let mut d = n;
        loop {
            if d == 0 {
                self.choices = None;
                break;
            }
            d -= 1;
            let limit = 2 * (n - d) - 1;
            if choices[d] + 1 < limit {
                choices[d] += 1;
                for c in choices[d + 1..].iter_mut() {
                    *c = 0;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Exact distribution of an integer statistic over the uniform matching
/// space; probabilities are exact rationals summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistribution {
    outcomes: BTreeMap<usize, BigRational>,
}

impl ExactDistribution {
    fn from_counts(counts: BTreeMap<usize, u64>, total: u64) -> ExactDistribution {
        let denom = BigInt::from(total);
        let outcomes = counts
            .into_iter()
            .map(|(k, c)| (k, BigRational::new(BigInt::from(c), denom.clone())))
            .collect();
        ExactDistribution { outcomes }
    }

    pub fn probability(&self, k: usize) -> BigRational {
        self.outcomes.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn outcomes(&self) -> &BTreeMap<usize, BigRational> {
        &self.outcomes
    }

    pub fn total_probability(&self) -> BigRational {
        self.outcomes.values().sum()
    }

    pub fn mean(&self) -> BigRational {
        self.outcomes
            .iter()
            .map(|(&k, p)| BigRational::from(BigInt::from(k)) * p)
            .sum()
    }

    pub fn variance(&self) -> BigRational {
        let mean = self.mean();
        let second: BigRational = self
            .outcomes
            .iter()
            .map(|(&k, p)| BigRational::from(BigInt::from(k * k)) * p)
            .sum();
        second - mean.clone() * mean
    }
}

/// Exact P(some vertex is universal) over all matchings of {1,...,2n}.
pub fn exact_prob_universal(n: usize) -> Result<BigRational> {
    let mut hits: u64 = 0;
    let mut total: u64 = 0;
    for family in enumerate_matchings(n)? {
        total += 1;
        let g = graph_from_intervals_naive(&family);
        if g.has_universal_vertex() {
            hits += 1;
        }
    }
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
}

/// Exact distribution of the edge count over all matchings of {1,...,2n}.
pub fn exact_edge_count_distribution(n: usize) -> Result<ExactDistribution> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut total: u64 = 0;
    for family in enumerate_matchings(n)? {
        total += 1;
        let g = graph_from_intervals_naive(&family);
        *counts.entry(g.edge_count() as usize).or_insert(0) += 1;
    }
    Ok(ExactDistribution::from_counts(counts, total))
}

fn row_mask(g: &Graph, i: usize) -> u32 {
    let mut mask = 0u32;
    for j in 0..g.n() {
        if g.has_edge(i, j) {
            mask |= 1 << j;
        }
    }
    mask
}

/// Exact clique number by branch and bound over vertex subsets; refuses
/// n > 20.
pub fn brute_clique(g: &Graph) -> Result<usize> {
    if g.n() > MAX_BRUTE_CLIQUE_N {
        return Err(Error::TooLarge {
            what: "brute-force clique",
            n: g.n(),
            max: MAX_BRUTE_CLIQUE_N,
        });
    }
    let adj: Vec<u32> = (0..g.n()).map(|i| row_mask(g, i)).collect();
    let mut best = 0usize;
    let full: u32 = if g.n() == 32 { u32::MAX } else { (1 << g.n()) - 1 };
    fn extend(adj: &[u32], candidates: u32, size: usize, best: &mut usize) {
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        if candidates == 0 {
            *best = (*best).max(size);
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            extend(adj, rest & adj[v], size + 1, best);
        }
        *best = (*best).max(size);
    }
    extend(&adj, full, 0, &mut best);
    Ok(best.max(1))
}

/// Exact independence number: clique number of the complement.
pub fn brute_independence(g: &Graph) -> Result<usize> {
    if g.n() > MAX_BRUTE_CLIQUE_N {
        return Err(Error::TooLarge {
            what: "brute-force independence",
            n: g.n(),
            max: MAX_BRUTE_CLIQUE_N,
        });
    }
    let n = g.n();
    let complement = Graph::from_edges(
        n,
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !g.has_edge(i, j)),
    )?;
    brute_clique(&complement)
}

/// Exact chromatic number by iterative deepening over the color count with
/// a used-colors-plus-one symmetry cap; refuses n > 12.
pub fn brute_chromatic(g: &Graph) -> Result<usize> {
    if g.n() > MAX_BRUTE_CHROMATIC_N {
        return Err(Error::TooLarge {
            what: "brute-force chromatic",
            n: g.n(),
            max: MAX_BRUTE_CHROMATIC_N,
        });
    }
    fn colorable(g: &Graph, k: usize, colors: &mut [usize], v: usize, used: usize) -> bool {
        if v == g.n() {
            return true;
        }
        let cap = (used + 1).min(k);
        for c in 0..cap {
            if (0..v).all(|u| !g.has_edge(u, v) || colors[u] != c) {
                colors[v] = c;
                if colorable(g, k, colors, v + 1, used.max(c + 1)) {
                    return true;
                }
            }
        }
        false
    }
    for k in 1..=g.n() {
        let mut colors = vec![usize::MAX; g.n()];
        if colorable(g, k, &mut colors, 0, 0) {
            return Ok(k);
        }
    }
    unreachable!("every graph is n-colorable")
}

/// Rational as an (i64, i64) pair for JSON emission; safe for every value
/// the n <= 7 enumerations can produce.
pub fn rational_parts(r: &BigRational) -> (i64, i64) {
    let num = r.numer().to_i64().expect("oracle rationals fit in i64");
    let den = r.denom().to_i64().expect("oracle rationals fit in i64");
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn matching_counts_follow_double_factorial() {
        assert_eq!(double_factorial_odd(2), 3);
        assert_eq!(double_factorial_odd(4), 105);
        for n in 1..=6 {
            let count = enumerate_matchings(n).unwrap().count() as u64;
            assert_eq!(count, double_factorial_odd(n), "n = {n}");
        }
    }

    #[test]
    fn enumeration_guard() {
        assert!(enumerate_matchings(0).is_err());
        assert!(enumerate_matchings(8).is_err());
        assert!(enumerate_matchings(7).is_ok());
    }

    #[test]
    fn enumeration_is_canonical_and_exhaustive() {
        // n = 2: the three matchings of {1,2,3,4} in canonical order
        let fams: Vec<Vec<(f64, f64)>> = enumerate_matchings(2)
            .unwrap()
            .map(|f| f.intervals().iter().map(|iv| (iv.lo(), iv.hi())).collect())
            .collect();
        assert_eq!(
            fams,
            vec![
                vec![(1.0, 2.0), (3.0, 4.0)],
                vec![(1.0, 3.0), (2.0, 4.0)],
                vec![(1.0, 4.0), (2.0, 3.0)],
            ]
        );
        // every matching distinct, endpoints exactly 1..2n
        let all: Vec<_> = enumerate_matchings(4).unwrap().collect();
        for f in &all {
            let mut eps: Vec<u32> = f
                .intervals()
                .iter()
                .flat_map(|iv| [iv.lo() as u32, iv.hi() as u32])
                .collect();
            eps.sort_unstable();
            assert_eq!(eps, (1..=8).collect::<Vec<_>>());
        }
        let mut keys: Vec<String> = all.iter().map(|f| format!("{f:?}")).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 105);
    }

    #[test]
    fn universal_probability_is_exactly_two_thirds() {
        // of the 3 matchings of {1,2,3,4}, (1,3)(2,4) and (1,4)(2,3)
        // intersect; (1,2)(3,4) does not
        assert_eq!(exact_prob_universal(2).unwrap(), ratio(2, 3));
        assert_eq!(exact_prob_universal(3).unwrap(), ratio(2, 3));
        assert_eq!(exact_prob_universal(4).unwrap(), ratio(2, 3));
        // n = 1: the lone vertex has degree 0 = n - 1
        assert_eq!(exact_prob_universal(1).unwrap(), ratio(1, 1));
    }

    #[test]
    fn edge_count_distribution_n3_frozen() {
        // hand enumeration of the 15 matchings of {1,...,6}:
        // counts 1, 4, 4, 6 for edge counts 0, 1, 2, 3
        let dist = exact_edge_count_distribution(3).unwrap();
        assert_eq!(dist.probability(0), ratio(1, 15));
        assert_eq!(dist.probability(1), ratio(4, 15));
        assert_eq!(dist.probability(2), ratio(4, 15));
        assert_eq!(dist.probability(3), ratio(6, 15));
        assert_eq!(dist.total_probability(), ratio(1, 1));
        assert_eq!(dist.mean(), ratio(2, 1));
        assert_eq!(dist.variance(), ratio(14, 15));
    }

    #[test]
    fn edge_count_mean_matches_formula_exactly() {
        for n in 2..=6usize {
            let dist = exact_edge_count_distribution(n).unwrap();
            let expected = ratio((n * (n - 1)) as i64, 3);
            assert_eq!(dist.mean(), expected, "n = {n}");
            assert_eq!(dist.total_probability(), ratio(1, 1));
        }
        // n = 2 mean 2/3 doubles as the exact edge probability
        assert_eq!(exact_edge_count_distribution(2).unwrap().mean(), ratio(2, 3));
    }

    #[test]
    fn brute_clique_cases() {
        let empty = Graph::from_edges(4, Vec::<(usize, usize)>::new()).unwrap();
        assert_eq!(brute_clique(&empty).unwrap(), 1);
        let complete = Graph::complete(4).unwrap();
        assert_eq!(brute_clique(&complete).unwrap(), 4);
        let five_cycle =
            Graph::from_edges(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(brute_clique(&five_cycle).unwrap(), 2);
        let too_big = Graph::from_edges(21, vec![(0, 1)]).unwrap();
        assert!(brute_clique(&too_big).is_err());
    }

    #[test]
    fn brute_independence_cases() {
        let empty = Graph::from_edges(4, Vec::<(usize, usize)>::new()).unwrap();
        assert_eq!(brute_independence(&empty).unwrap(), 4);
        let complete = Graph::complete(4).unwrap();
        assert_eq!(brute_independence(&complete).unwrap(), 1);
        let star = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(brute_independence(&star).unwrap(), 3);
    }

    #[test]
    fn brute_chromatic_cases() {
        let empty = Graph::from_edges(4, Vec::<(usize, usize)>::new()).unwrap();
        assert_eq!(brute_chromatic(&empty).unwrap(), 1);
        let complete = Graph::complete(4).unwrap();
        assert_eq!(brute_chromatic(&complete).unwrap(), 4);
        let path = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(brute_chromatic(&path).unwrap(), 2);
        let odd_cycle =
            Graph::from_edges(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(brute_chromatic(&odd_cycle).unwrap(), 3);
        let too_big = Graph::from_edges(13, vec![(0, 1)]).unwrap();
        assert!(brute_chromatic(&too_big).is_err());
    }

    #[test]
    fn rational_parts_reduce() {
        let r = BigRational::from_f64(0.0).unwrap() + ratio(10, 15);
        assert_eq!(rational_parts(&r), (2, 3));
    }
}
