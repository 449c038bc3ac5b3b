//! Hamiltonian cycles of K_5 through the color-coding flow formulation,
//! compared with brute force over all 12 tours.

use efforge::builders::cycle::DPDigraph;
use efforge::builders::{build, Kind};
use efforge::graph::{brute_force_optimum, enumerate_cycles, CompleteGraphContext};
use efforge::hashfam;
use efforge::polyhedra::{random_objectives, DEFAULT_SEED};

fn main() -> efforge::Result<()> {
    let n = 5;
    let ctx = CompleteGraphContext::new(n)?;
    let dp = DPDigraph::new(&ctx, n, &[1, 2, 3, 4, 5], 5)?;
    println!("digraph for the identity coloring: {} nodes, {} arcs, {} s-t paths", dp.nodes.len(), dp.arcs.len(), dp.st_paths().len());

    let built = build(Kind::Cycle, n, Some(n), hashfam::DEFAULT_SEED)?;
    let tours = enumerate_cycles(&ctx, n)?;
    for c in random_objectives(ctx.edge_count(), 5, DEFAULT_SEED) {
        let lp = built.formulation.optimize(&c)?;
        let (best, tour) = brute_force_optimum(&tours, &c)?;
        println!("LP {:>4}  brute force {best:>4}  tour {:?}", lp.value, tour.pairs());
    }
    Ok(())
}
