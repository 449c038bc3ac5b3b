//! Compact formulation of the spanning tree polytope of `K_n`.
//!
//! Variables are `x_e` for every edge followed by `z_{e,v,u}` for every edge
//! `e`, endpoint `v ∈ e` (smaller endpoint first) and node `u ∉ e` (ascending).
//! Constraints: `y >= 0`, `x(E) = n - 1`,
//! `x_{vw} - z_{vw,v,u} - z_{vw,w,u} = 0` for distinct `v, w, u`, and
//! `x_{vw} + Σ_u z_{vu,u,w} = 1` for ordered pairs `(v, w)`.

use crate::error::{domain, Result};
use crate::graph::{is_spanning_tree, CompleteGraphContext, EdgeSubset};
use crate::lp::Row;
use crate::polyhedra::ExtendedFormulation;
use crate::rational::Rational;

/// Variable indexing for the spanning tree formulation (0-based nodes).
#[derive(Debug, Clone, Copy)]
pub struct SpanningTreeLayout {
    ctx: CompleteGraphContext,
}

impl SpanningTreeLayout {
    pub fn new(ctx: CompleteGraphContext) -> Self {
        SpanningTreeLayout { ctx }
    }

    pub fn edge_vars(&self) -> usize {
        self.ctx.edge_count()
    }

    pub fn dim(&self) -> usize {
        let n = self.ctx.n();
        self.edge_vars() + n * (n - 1) * n.saturating_sub(2)
    }

    pub fn x(&self, v: usize, w: usize) -> usize {
        self.ctx.index0(v, w)
    }

    /// `z_{{v,w},v,u}`
    pub fn z(&self, v: usize, w: usize, u: usize) -> usize {
        debug_assert!(u != v && u != w && v != w);
        let n = self.ctx.n();
        let e = self.ctx.index0(v, w);
        let side = usize::from(v > w);
        let (lo, hi) = if v < w { (v, w) } else { (w, v) };
        let rank = u - usize::from(u > lo) - usize::from(u > hi);
        self.edge_vars() + e * 2 * (n - 2) + side * (n - 2) + rank
    }
}

pub fn build_spanning_tree_ef(n: usize) -> Result<ExtendedFormulation> {
    if n < 2 {
        return domain(format!("spanning tree formulation needs n >= 2, got {n}"));
    }
    let ctx = CompleteGraphContext::new(n)?;
    let layout = SpanningTreeLayout::new(ctx);
    let dim = layout.dim();
    let mut ef = ExtendedFormulation::with_leading_projection(dim, layout.edge_vars());
    ef.add_nonnegativity();

    let row = |entries: &[(usize, i64)], rhs: i64| {
        let mut coeffs = vec![Rational::zero(); dim];
        for &(j, a) in entries {
            coeffs[j] += Rational::from_int(a);
        }
        Row::new(coeffs, Rational::from_int(rhs))
    };

    let all_x: Vec<(usize, i64)> = (0..layout.edge_vars()).map(|e| (e, 1)).collect();
    ef.equations.push(row(&all_x, n as i64 - 1));
    for e in 0..ctx.edge_count() {
        let (v, w) = ctx.pair0(e);
        for u in (0..n).filter(|&u| u != v && u != w) {
            ef.equations.push(row(
                &[(layout.x(v, w), 1), (layout.z(v, w, u), -1), (layout.z(w, v, u), -1)],
                0,
            ));
        }
    }
    for v in 0..n {
        for w in (0..n).filter(|&w| w != v) {
            let mut entries = vec![(layout.x(v, w), 1)];
            entries.extend((0..n).filter(|&u| u != v && u != w).map(|u| (layout.z(u, v, w), 1)));
            ef.equations.push(row(&entries, 1));
        }
    }
    Ok(ef)
}

/// The point `(χ^T, z^T)` with `z_{e,v,u} = 1` iff `e ∈ T` and `u` lies in
/// the component of `v` in `T \ e`.
pub fn spanning_tree_section(ctx: &CompleteGraphContext, tree: &EdgeSubset) -> Result<Vec<Rational>> {
    if tree.context() != *ctx || !is_spanning_tree(tree) {
        return domain("section requires a spanning tree of the given graph");
    }
    let n = ctx.n();
    let layout = SpanningTreeLayout::new(*ctx);
    let mut y = vec![Rational::zero(); layout.dim()];
    let mut adjacency = vec![Vec::new(); n];
    for &e in tree.edges() {
        let (a, b) = ctx.pair0(e);
        adjacency[a].push(b);
        adjacency[b].push(a);
        y[e] = Rational::one();
    }
    for &e in tree.edges() {
        let (a, b) = ctx.pair0(e);
        for (v, w) in [(a, b), (b, a)] {
            // component of v after removing {v, w}
            let mut seen = vec![false; n];
            seen[v] = true;
            seen[w] = true;
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for &nb in &adjacency[x] {
                    if !seen[nb] {
                        seen[nb] = true;
                        stack.push(nb);
                        y[layout.z(v, w, nb)] = Rational::one();
                    }
                }
            }
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{brute_force_optimum, enumerate_spanning_trees};
    use crate::polyhedra::random_objectives;

    #[test]
    fn counts_for_four_nodes() {
        let ef = build_spanning_tree_ef(4).unwrap();
        assert_eq!(ef.dim, 30);
        assert_eq!(ef.size(), 30);
        assert_eq!(ef.equations.len(), 25);
        assert_eq!(ef.ambient_dim(), 6);
    }

    #[test]
    fn triangle_unit_weights() {
        let ef = build_spanning_tree_ef(3).unwrap();
        let c = vec![Rational::one(); 3];
        assert_eq!(ef.optimize(&c).unwrap().value, Rational::from_int(2));
    }

    #[test]
    fn section_on_path() {
        let ctx = CompleteGraphContext::new(3).unwrap();
        let tree = EdgeSubset::from_pairs(ctx, &[(1, 2), (2, 3)]).unwrap();
        let y = spanning_tree_section(&ctx, &tree).unwrap();
        let layout = SpanningTreeLayout::new(ctx);
        assert!(y[layout.z(1, 0, 2)].is_one());
        assert!(y[layout.z(0, 1, 2)].is_zero());
        let eq3 = &y[layout.x(0, 2)] + &y[layout.z(1, 0, 2)];
        assert!(eq3.is_one());
    }

    #[test]
    fn sections_feasible_and_project_to_tree() {
        for n in 2..=6 {
            let ctx = CompleteGraphContext::new(n).unwrap();
            let ef = build_spanning_tree_ef(n).unwrap();
            for tree in enumerate_spanning_trees(&ctx).unwrap() {
                let y = spanning_tree_section(&ctx, &tree).unwrap();
                assert!(ef.contains(&y), "n = {n}, tree {:?}", tree.pairs());
                assert_eq!(ef.project(&y), tree.characteristic_vector());
            }
        }
    }

    #[test]
    fn optimum_matches_brute_force() {
        for n in 3..=5 {
            let ctx = CompleteGraphContext::new(n).unwrap();
            let trees = enumerate_spanning_trees(&ctx).unwrap();
            let ef = build_spanning_tree_ef(n).unwrap();
            for c in random_objectives(ctx.edge_count(), 5, n as u64) {
                let (best, _) = brute_force_optimum(&trees, &c).unwrap();
                assert_eq!(ef.optimize(&c).unwrap().value, best);
            }
        }
    }

    #[test]
    fn rejects_non_trees() {
        assert!(build_spanning_tree_ef(1).is_err());
        let ctx = CompleteGraphContext::new(4).unwrap();
        let cycle = EdgeSubset::from_pairs(ctx, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(spanning_tree_section(&ctx, &cycle).is_err());
    }
}
