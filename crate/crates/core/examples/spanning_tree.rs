//! The cubic-size spanning tree formulation: build it, lift a tree to its
//! section point, and compare LP optima with brute force over all trees.

use efforge::builders::{build_spanning_tree_ef, spanning_tree_section};
use efforge::graph::{brute_force_optimum, enumerate_spanning_trees, CompleteGraphContext};
use efforge::polyhedra::{random_objectives, DEFAULT_SEED};

fn main() -> efforge::Result<()> {
    let n = 5;
    let ctx = CompleteGraphContext::new(n)?;
    let ef = build_spanning_tree_ef(n)?;
    println!("K_{n}: {} variables, {} equations, size {}", ef.dim, ef.equations.len(), ef.size());

    let trees = enumerate_spanning_trees(&ctx)?;
    let lifted = spanning_tree_section(&ctx, &trees[0])?;
    println!("section of {:?} feasible: {}", trees[0].pairs(), ef.contains(&lifted));

    for c in random_objectives(ctx.edge_count(), 5, DEFAULT_SEED) {
        let lp = ef.optimize(&c)?.value;
        let (best, tree) = brute_force_optimum(&trees, &c)?;
        println!("LP {lp:>4}  brute force {best:>4}  e.g. {:?}", tree.pairs());
    }
    Ok(())
}
