//! Extension of the polytope of matchings with exactly `ℓ` edges in `K_n`,
//! as a disjunctive union over the maps of a perfect hash family with
//! `r = 2ℓ`.
//!
//! For a map `φ` with non-empty buckets `V_s = φ⁻¹(s)`, the block is the
//! perfect matching polytope of the graph obtained by shrinking each bucket:
//! `x_e = 0` inside buckets, `x(δ(V_s)) = 1`, `x >= 0` and the odd-set cuts
//! `x(δ(V_S)) >= 1` for every odd `S ⊆ [2ℓ]`.

use crate::balas::union_extension;
use crate::error::{domain, Result};
use crate::graph::CompleteGraphContext;
use crate::hashfam::HashFamily;
use crate::lp::Row;
use crate::polyhedra::ExtendedFormulation;
use crate::rational::Rational;

/// A block together with the index of the hash map it came from.
#[derive(Debug, Clone)]
pub struct Block {
    pub map_index: usize,
    pub formulation: ExtendedFormulation,
}

fn check(n: usize, ell: usize, family: &HashFamily) -> Result<()> {
    if ell == 0 || 2 * ell > n {
        return domain(format!("need 1 <= ℓ <= n/2, got n = {n}, ℓ = {ell}"));
    }
    if family.n != n || family.r != 2 * ell {
        return domain(format!(
            "hash family is for (n, r) = ({}, {}), expected ({n}, {})",
            family.n,
            family.r,
            2 * ell
        ));
    }
    if !family.certified || !family.certify().is_certified() {
        return domain("hash family is not certified");
    }
    Ok(())
}

/// Odd subsets of `[r]` as bitmasks, ascending.
pub fn odd_subsets(r: usize) -> impl Iterator<Item = u32> {
    (1u32..(1u32 << r)).filter(|s| s.count_ones() % 2 == 1)
}

/// Block for one map (values `1..=2ℓ`), or `None` if a bucket is empty.
pub fn matching_block(ctx: &CompleteGraphContext, ell: usize, map: &[usize]) -> Option<ExtendedFormulation> {
    let r = 2 * ell;
    let n = ctx.n();
    if (1..=r).any(|s| !map.contains(&s)) {
        return None;
    }
    let m = ctx.edge_count();
    let mut ef = ExtendedFormulation::with_leading_projection(m, m);
    let indicator = |edges: &[usize]| {
        let mut coeffs = vec![Rational::zero(); m];
        for &e in edges {
            coeffs[e] = Rational::one();
        }
        coeffs
    };
    let cut = |colors: u32| {
        let inside: Vec<bool> = map.iter().map(|&c| colors & (1 << (c - 1)) != 0).collect();
        ctx.cut_edges0(&inside)
    };
    for e in 0..m {
        let (a, b) = ctx.pair0(e);
        if map[a] == map[b] {
            ef.equations.push(Row::new(indicator(&[e]), Rational::zero()));
        }
    }
    for s in 0..r {
        ef.equations.push(Row::new(indicator(&cut(1 << s)), Rational::one()));
    }
    ef.add_nonnegativity();
    for colors in odd_subsets(r) {
        let coeffs = indicator(&cut(colors)).into_iter().map(|a| -a).collect();
        ef.inequalities.push(Row::new(coeffs, -Rational::one()));
    }
    debug_assert_eq!(ef.dim, n * (n - 1) / 2);
    Some(ef)
}

/// Blocks for every map without an empty bucket, in family order.
pub fn matching_blocks(n: usize, ell: usize, family: &HashFamily) -> Result<Vec<Block>> {
    check(n, ell, family)?;
    let ctx = CompleteGraphContext::new(n)?;
    let blocks: Vec<Block> = family
        .maps
        .iter()
        .enumerate()
        .filter_map(|(map_index, map)| {
            matching_block(&ctx, ell, map).map(|formulation| Block { map_index, formulation })
        })
        .collect();
    if blocks.is_empty() {
        return domain("every map of the family has an empty bucket");
    }
    Ok(blocks)
}

pub fn build_matching_ef(n: usize, ell: usize, family: &HashFamily) -> Result<ExtendedFormulation> {
    let blocks = matching_blocks(n, ell, family)?;
    let forms: Vec<ExtendedFormulation> = blocks.into_iter().map(|b| b.formulation).collect();
    union_extension(&forms)
}
