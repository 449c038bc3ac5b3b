//! Perfect hash families: maps `[n] -> [r]` such that every `r`-subset of
//! `[n]` is mapped bijectively onto `[r]` by at least one member.
//!
//! Construction is a seeded greedy cover; every family handed out is
//! certified by exhaustive enumeration of the `r`-subsets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub const MAX_NODES: usize = 16;
pub const DEFAULT_SEED: u64 = 0xAF2_1995;
/// Candidate maps drawn per greedy round.
const CANDIDATES_PER_ROUND: usize = 32;

/// Maps are stored node-by-node with values in `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HashFamily {
    pub n: usize,
    pub r: usize,
    pub maps: Vec<Vec<usize>>,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified,
    /// 1-based nodes of an `r`-subset on which no map is injective.
    Uncovered(Vec<usize>),
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified)
    }
}

fn check_params(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return domain(format!("need 1 <= r <= n, got n = {n}, r = {r}"));
    }
    if n > MAX_NODES {
        return Err(Error::SizeGuard(format!("n = {n} exceeds the limit of {MAX_NODES}")));
    }
    Ok(())
}

/// All `r`-subsets of `0..n` as bitmasks, in increasing numeric order.
fn subsets(n: usize, r: usize) -> Vec<u32> {
    (0u32..(1u32 << n)).filter(|m| m.count_ones() as usize == r).collect()
}

/// Whether `map` (values `1..=r`) is injective on the node set `mask`.
fn injective_on(map: &[usize], mask: u32) -> bool {
    let mut seen = 0u32;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let bit = 1u32 << (map[v] - 1);
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    true
}

impl HashFamily {
    /// Wraps explicit maps after checking their shape; certification is
    /// computed, not trusted.
    pub fn new(n: usize, r: usize, maps: Vec<Vec<usize>>) -> Result<Self> {
        check_params(n, r)?;
        if maps.is_empty() {
            return domain("a hash family needs at least one map");
        }
        for map in &maps {
            if map.len() != n {
                return Err(Error::Dimension(format!("map of length {} for n = {n}", map.len())));
            }
            if map.iter().any(|&v| v == 0 || v > r) {
                return domain(format!("map value outside 1..={r}"));
            }
        }
        let mut family = HashFamily { n, r, maps, certified: false };
        family.certified = family.certify().is_certified();
        Ok(family)
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Exhaustive check over all `r`-subsets; reports the first uncovered one.
    pub fn certify(&self) -> Certification {
        for w in subsets(self.n, self.r) {
            if !self.maps.iter().any(|m| injective_on(m, w)) {
                let nodes = (0..self.n).filter(|&v| w & (1 << v) != 0).map(|v| v + 1).collect();
                return Certification::Uncovered(nodes);
            }
        }
        Certification::Certified
    }

    /// Whether map `i` is injective on the given 1-based nodes.
    pub fn is_bijective_on(&self, i: usize, nodes: &[usize]) -> bool {
        let mask = nodes.iter().fold(0u32, |m, &v| m | 1 << (v - 1));
        nodes.len() == self.r && injective_on(&self.maps[i], mask)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Parses and re-certifies; a `certified: true` claim that fails the
    /// exhaustive check is rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: HashFamily = serde_json::from_str(text)?;
        let checked = HashFamily::new(raw.n, raw.r, raw.maps)?;
        if raw.certified && !checked.certified {
            return domain("family claims certification but misses an r-subset");
        }
        Ok(checked)
    }
}

/// Certified family built with the default seed.
pub fn build_family(n: usize, r: usize) -> Result<HashFamily> {
    build_family_seeded(n, r, DEFAULT_SEED)
}

pub fn build_family_seeded(n: usize, r: usize, seed: u64) -> Result<HashFamily> {
    Ok(build_family_traced(n, r, seed)?.0)
}

/// Greedy construction, also returning the number of uncovered subsets left
/// after each accepted map.
///
/// Each round draws candidate maps that are bijective on a random uncovered
/// subset and arbitrary elsewhere, and keeps the one covering the most
/// uncovered subsets (lowest candidate index on ties).
pub fn build_family_traced(n: usize, r: usize, seed: u64) -> Result<(HashFamily, Vec<usize>)> {
    check_params(n, r)?;
    if n == r {
        let family = HashFamily::new(n, r, vec![(1..=n).collect()])?;
        return Ok((family, vec![0]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ r as u64);
    let mut uncovered = subsets(n, r);
    let mut maps = Vec::new();
    let mut trace = Vec::new();
    let colors: Vec<usize> = (1..=r).collect();
    while !uncovered.is_empty() {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for _ in 0..CANDIDATES_PER_ROUND {
            let target = uncovered[rng.gen_range(0..uncovered.len())];
            let mut shuffled = colors.clone();
            shuffled.shuffle(&mut rng);
            let mut next_color = shuffled.into_iter();
            let map: Vec<usize> = (0..n)
                .map(|v| {
                    if target & (1 << v) != 0 {
                        next_color.next().expect("target has exactly r nodes")
                    } else {
                        rng.gen_range(1..=r)
                    }
                })
                .collect();
            let covered = uncovered.iter().filter(|&&w| injective_on(&map, w)).count();
            if best.as_ref().is_none_or(|(c, _)| covered > *c) {
                best = Some((covered, map));
            }
        }
        let (_, map) = best.expect("at least one candidate per round");
        uncovered.retain(|&w| !injective_on(&map, w));
        trace.push(uncovered.len());
        maps.push(map);
    }
    let family = HashFamily::new(n, r, maps)?;
    debug_assert!(family.certified);
    Ok((family, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_when_n_equals_r() {
        for n in 1..=6 {
            let f = build_family(n, n).unwrap();
            assert_eq!(f.maps, vec![(1..=n).collect::<Vec<_>>()]);
            assert!(f.certified);
        }
    }

    /// Exhaustive search over pairs of maps [4] -> [2].
    #[test]
    fn four_nodes_two_colors_needs_two_maps() {
        let all: Vec<Vec<usize>> = (0..16u32)
            .map(|code| (0..4).map(|v| ((code >> v) & 1) as usize + 1).collect())
            .collect();
        let single = all
            .iter()
            .any(|m| HashFamily::new(4, 2, vec![m.clone()]).unwrap().certified);
        assert!(!single);
        let pair = all.iter().any(|a| {
            all.iter()
                .any(|b| HashFamily::new(4, 2, vec![a.clone(), b.clone()]).unwrap().certified)
        });
        assert!(pair);
        let greedy = build_family(4, 2).unwrap();
        assert!(greedy.certified);
        assert!(greedy.len() >= 2);
    }

    #[test]
    fn three_matching_partitions_cover_k4() {
        let maps = vec![vec![1, 1, 2, 2], vec![1, 2, 1, 2], vec![1, 2, 2, 1]];
        assert!(HashFamily::new(4, 2, maps).unwrap().certified);
    }

    #[test]
    fn constant_map_fails_with_witness() {
        let f = HashFamily::new(5, 2, vec![vec![1; 5]]).unwrap();
        assert!(!f.certified);
        match f.certify() {
            Certification::Uncovered(w) => assert_eq!(w.len(), 2),
            Certification::Certified => panic!("constant map cannot be perfect"),
        }
    }

    #[test]
    fn greedy_small_cases() {
        let f = build_family(6, 2).unwrap();
        assert!(f.certify().is_certified());
        let f = build_family(6, 4).unwrap();
        assert!(f.certify().is_certified());
    }

    #[test]
    fn coverage_strictly_decreases() {
        for (n, r) in [(6, 3), (8, 4), (9, 5)] {
            let (f, trace) = build_family_traced(n, r, DEFAULT_SEED).unwrap();
            assert_eq!(trace.len(), f.len());
            let total = subsets(n, r).len();
            let mut prev = total;
            for &left in &trace {
                assert!(left < prev);
                prev = left;
            }
            assert_eq!(prev, 0);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(build_family(8, 3).unwrap(), build_family(8, 3).unwrap());
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(build_family(3, 4), Err(Error::Domain(_))));
        assert!(matches!(build_family(17, 2), Err(Error::SizeGuard(_))));
        assert!(HashFamily::new(3, 2, vec![vec![1, 2, 3]]).is_err());
        assert!(HashFamily::new(3, 2, vec![]).is_err());
    }

    #[test]
    fn json_rejects_false_certification_claim() {
        let json = r#"{"n":3,"r":2,"maps":[[1,1,1]],"certified":true}"#;
        assert!(HashFamily::from_json(json).is_err());
        let ok = build_family(5, 3).unwrap();
        assert_eq!(HashFamily::from_json(&ok.to_json().unwrap()).unwrap(), ok);
    }
}
