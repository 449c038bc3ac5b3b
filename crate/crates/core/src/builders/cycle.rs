//! Extension of the polytope of cycles of length `ℓ` in `K_n`.
//!
//! For a map `φ : [n] -> [ℓ]` and a node `v*` with `φ(v*) = ℓ`, cycles through
//! `v*` that are colorful under `φ` correspond to `s`-`t` paths in a
//! color-coding digraph whose inner nodes are pairs `(A, v)` with
//! `A ⊆ [ℓ-1]` and `φ(v) ∈ A`. The unit flow polytope of that digraph,
//! projected arc-by-arc onto edges of `K_n`, gives one block per `(φ, v*)`.
//! Blocks are joined by a disjunctive union over `v*`, then over maps.

use std::collections::HashMap;

use crate::balas::union_extension;
use crate::error::{domain, Result};
use crate::graph::{CompleteGraphContext, EdgeSubset};
use crate::hashfam::HashFamily;
use crate::lp::Row;
use crate::polyhedra::ExtendedFormulation;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DpNode {
    Source,
    Sink,
    /// Color set (bit `c-1` for color `c`) and a 0-based graph node.
    Inner { colors: u32, node: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpArc {
    pub from: DpNode,
    pub to: DpNode,
    /// Position of the `K_n` edge this arc is charged to.
    pub edge: usize,
}

/// The color-coding digraph for one map and one anchor node.
#[derive(Debug, Clone)]
pub struct DPDigraph {
    pub ell: usize,
    /// 0-based anchor node.
    pub anchor: usize,
    pub nodes: Vec<DpNode>,
    pub arcs: Vec<DpArc>,
}

impl DPDigraph {
    /// `map` has values `1..=ℓ`; `anchor` is 1-based with `map[anchor-1] = ℓ`.
    pub fn new(ctx: &CompleteGraphContext, ell: usize, map: &[usize], anchor: usize) -> Result<Self> {
        let n = ctx.n();
        if ell < 3 || ell > n {
            return domain(format!("cycle length must satisfy 3 <= ℓ <= n, got ℓ = {ell}, n = {n}"));
        }
        if map.len() != n || map.iter().any(|&c| c == 0 || c > ell) {
            return domain("map must send [n] into [ℓ]");
        }
        if anchor == 0 || anchor > n || map[anchor - 1] != ell {
            return domain(format!("anchor {anchor} is not colored ℓ = {ell}"));
        }
        let star = anchor - 1;
        let full: u32 = (1 << (ell - 1)) - 1;
        let bit = |v: usize| 1u32 << (map[v] - 1);
        let colored: Vec<usize> = (0..n).filter(|&v| map[v] < ell).collect();

        let mut nodes = Vec::new();
        for colors in 1..=full {
            for &v in &colored {
                if colors & bit(v) != 0 {
                    nodes.push(DpNode::Inner { colors, node: v });
                }
            }
        }
        let mut arcs = Vec::new();
        for &v in &colored {
            arcs.push(DpArc {
                from: DpNode::Source,
                to: DpNode::Inner { colors: bit(v), node: v },
                edge: ctx.index0(star, v),
            });
        }
        for &v in &colored {
            arcs.push(DpArc {
                from: DpNode::Inner { colors: full, node: v },
                to: DpNode::Sink,
                edge: ctx.index0(star, v),
            });
        }
        for &node in &nodes {
            let DpNode::Inner { colors, node: v } = node else { unreachable!() };
            for &w in &colored {
                if colors & bit(w) == 0 {
                    arcs.push(DpArc {
                        from: node,
                        to: DpNode::Inner { colors: colors | bit(w), node: w },
                        edge: ctx.index0(v, w),
                    });
                }
            }
        }
        Ok(DPDigraph { ell, anchor: star, nodes, arcs })
    }

    pub fn source_arcs(&self) -> usize {
        self.arcs.iter().filter(|a| a.from == DpNode::Source).count()
    }

    pub fn sink_arcs(&self) -> usize {
        self.arcs.iter().filter(|a| a.to == DpNode::Sink).count()
    }

    /// All `s`-`t` paths as lists of arc indices, in depth-first order.
    pub fn st_paths(&self) -> Vec<Vec<usize>> {
        let mut out_arcs: HashMap<DpNode, Vec<usize>> = HashMap::new();
        for (k, arc) in self.arcs.iter().enumerate() {
            out_arcs.entry(arc.from).or_default().push(k);
        }
        let mut paths = Vec::new();
        let mut stack = vec![(DpNode::Source, Vec::new())];
        while let Some((at, path)) = stack.pop() {
            if at == DpNode::Sink {
                paths.push(path);
                continue;
            }
            for &k in out_arcs.get(&at).into_iter().flatten().rev() {
                let mut next = path.clone();
                next.push(k);
                stack.push((self.arcs[k].to, next));
            }
        }
        paths
    }

    /// Unit `s`-`t` flow polytope with nonnegativity, projected onto `K_n`
    /// edges.
    pub fn flow_formulation(&self, ctx: &CompleteGraphContext) -> ExtendedFormulation {
        let dim = self.arcs.len();
        let mut ef = ExtendedFormulation::empty(dim, ctx.edge_count());
        for (k, arc) in self.arcs.iter().enumerate() {
            ef.projection_matrix[arc.edge][k] = Rational::one();
        }
        let mut out_of_source = vec![Rational::zero(); dim];
        for (k, arc) in self.arcs.iter().enumerate() {
            if arc.from == DpNode::Source {
                out_of_source[k] = Rational::one();
            }
        }
        ef.equations.push(Row::new(out_of_source, Rational::one()));
        let position: HashMap<DpNode, usize> =
            self.nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut balance = vec![vec![Rational::zero(); dim]; self.nodes.len()];
        for (k, arc) in self.arcs.iter().enumerate() {
            if let Some(&i) = position.get(&arc.to) {
                balance[i][k] += Rational::one();
            }
            if let Some(&i) = position.get(&arc.from) {
                balance[i][k] -= Rational::one();
            }
        }
        ef.equations.extend(balance.into_iter().map(|c| Row::new(c, Rational::zero())));
        ef.add_nonnegativity();
        ef
    }

    /// Edge set covered by a path of arc indices.
    pub fn path_edges(&self, ctx: &CompleteGraphContext, path: &[usize]) -> EdgeSubset {
        EdgeSubset::new(*ctx, path.iter().map(|&k| self.arcs[k].edge).collect())
            .expect("arc edges are valid positions")
    }
}

pub fn build_cycle_dp_block(n: usize, ell: usize, map: &[usize], anchor: usize) -> Result<ExtendedFormulation> {
    let ctx = CompleteGraphContext::new(n)?;
    Ok(DPDigraph::new(&ctx, ell, map, anchor)?.flow_formulation(&ctx))
}

/// Per-map block: the union over anchors (ascending) of the flow blocks.
#[derive(Debug, Clone)]
pub struct Block {
    pub map_index: usize,
    pub anchors: Vec<usize>,
    pub formulation: ExtendedFormulation,
}

fn check(n: usize, ell: usize, family: &HashFamily) -> Result<()> {
    if ell < 3 || ell > n {
        return domain(format!("need 3 <= ℓ <= n, got n = {n}, ℓ = {ell}"));
    }
    if family.n != n || family.r != ell {
        return domain(format!(
            "hash family is for (n, r) = ({}, {}), expected ({n}, {ell})",
            family.n, family.r
        ));
    }
    if !family.certified || !family.certify().is_certified() {
        return domain("hash family is not certified");
    }
    Ok(())
}

/// Blocks for every map without an empty color class, in family order.
pub fn cycle_blocks(n: usize, ell: usize, family: &HashFamily) -> Result<Vec<Block>> {
    check(n, ell, family)?;
    let ctx = CompleteGraphContext::new(n)?;
    let mut blocks = Vec::new();
    for (map_index, map) in family.maps.iter().enumerate() {
        if (1..=ell).any(|c| !map.contains(&c)) {
            continue;
        }
        let anchors: Vec<usize> = (1..=n).filter(|&v| map[v - 1] == ell).collect();
        let inner = anchors
            .iter()
            .map(|&a| Ok(DPDigraph::new(&ctx, ell, map, a)?.flow_formulation(&ctx)))
            .collect::<Result<Vec<_>>>()?;
        let formulation = union_extension(&inner)?;
        blocks.push(Block { map_index, anchors, formulation });
    }
    if blocks.is_empty() {
        return domain("every map of the family has an empty color class");
    }
    Ok(blocks)
}

pub fn build_cycle_ef(n: usize, ell: usize, family: &HashFamily) -> Result<ExtendedFormulation> {
    let forms: Vec<ExtendedFormulation> =
        cycle_blocks(n, ell, family)?.into_iter().map(|b| b.formulation).collect();
    union_extension(&forms)
}
