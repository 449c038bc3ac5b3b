//! Concrete extended formulations for spanning trees, `ℓ`-matchings and
//! `ℓ`-cycles of the complete graph.

pub mod cycle;
pub mod matching;
pub mod spanning_tree;

pub use cycle::{build_cycle_dp_block, build_cycle_ef, DPDigraph};
pub use matching::build_matching_ef;
pub use spanning_tree::{build_spanning_tree_ef, spanning_tree_section};

use crate::balas::union_extension;
use crate::error::{domain, Result};
use crate::graph::{enumerate_cycles, enumerate_matchings, enumerate_spanning_trees, CompleteGraphContext, EdgeSubset};
use crate::hashfam::{build_family_seeded, HashFamily};
use crate::polyhedra::ExtendedFormulation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    SpanningTree,
    Matching,
    Cycle,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::SpanningTree => "spanning-tree",
            Kind::Matching => "matching",
            Kind::Cycle => "cycle",
        }
    }
}

/// A formulation with the pieces it was assembled from.
#[derive(Debug, Clone)]
pub struct Built {
    pub formulation: ExtendedFormulation,
    /// Hash family used, if any.
    pub family: Option<HashFamily>,
    /// Blocks entering the outermost union (1 for spanning trees).
    pub blocks: usize,
}

fn require_ell(kind: Kind, ell: Option<usize>) -> Result<usize> {
    ell.map_or_else(|| domain(format!("{} formulations need ℓ", kind.name())), Ok)
}

/// Builds the formulation of the given kind; `seed` drives the hash family.
pub fn build(kind: Kind, n: usize, ell: Option<usize>, seed: u64) -> Result<Built> {
    match kind {
        Kind::SpanningTree => Ok(Built { formulation: build_spanning_tree_ef(n)?, family: None, blocks: 1 }),
        Kind::Matching => {
            let ell = require_ell(kind, ell)?;
            if ell == 0 || 2 * ell > n {
                return domain(format!("need 1 <= ℓ <= n/2, got n = {n}, ℓ = {ell}"));
            }
            let family = build_family_seeded(n, 2 * ell, seed)?;
            let blocks: Vec<ExtendedFormulation> =
                matching::matching_blocks(n, ell, &family)?.into_iter().map(|b| b.formulation).collect();
            Ok(Built { blocks: blocks.len(), formulation: union_extension(&blocks)?, family: Some(family) })
        }
        Kind::Cycle => {
            let ell = require_ell(kind, ell)?;
            if ell < 3 || ell > n {
                return domain(format!("need 3 <= ℓ <= n, got n = {n}, ℓ = {ell}"));
            }
            let family = build_family_seeded(n, ell, seed)?;
            let blocks: Vec<ExtendedFormulation> =
                cycle::cycle_blocks(n, ell, &family)?.into_iter().map(|b| b.formulation).collect();
            Ok(Built { blocks: blocks.len(), formulation: union_extension(&blocks)?, family: Some(family) })
        }
    }
}

/// The combinatorial objects whose characteristic vectors span the target
/// polytope, by enumeration.
pub fn oracle_objects(kind: Kind, n: usize, ell: Option<usize>) -> Result<Vec<EdgeSubset>> {
    let ctx = CompleteGraphContext::new(n)?;
    match kind {
        Kind::SpanningTree => enumerate_spanning_trees(&ctx),
        Kind::Matching => enumerate_matchings(&ctx, require_ell(kind, ell)?),
        Kind::Cycle => enumerate_cycles(&ctx, require_ell(kind, ell)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hashfam::DEFAULT_SEED;

    #[test]
    fn build_reports_blocks() {
        let st = build(Kind::SpanningTree, 4, None, DEFAULT_SEED).unwrap();
        assert_eq!((st.blocks, st.formulation.size()), (1, 30));
        let m = build(Kind::Matching, 4, Some(2), DEFAULT_SEED).unwrap();
        let surviving = m.family.unwrap().maps.iter().filter(|map| (1..=4).all(|s| map.contains(&s))).count();
        assert_eq!(m.blocks, surviving);
        assert!(build(Kind::Cycle, 4, None, DEFAULT_SEED).is_err());
        assert!(build(Kind::Cycle, 4, Some(5), DEFAULT_SEED).is_err());
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(oracle_objects(Kind::SpanningTree, 4, None).unwrap().len(), 16);
        assert_eq!(oracle_objects(Kind::Matching, 5, Some(2)).unwrap().len(), 15);
        assert_eq!(oracle_objects(Kind::Cycle, 5, Some(5)).unwrap().len(), 12);
    }
}
