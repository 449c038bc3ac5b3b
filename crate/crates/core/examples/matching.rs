//! Extension of the polytope of 2-matchings in K_5 built from a perfect hash
//! family, verified against all 15 matchings.

use efforge::builders::{build, oracle_objects, Kind};
use efforge::hashfam;
use efforge::polyhedra::{random_objectives, DEFAULT_SEED};

fn main() -> efforge::Result<()> {
    let (n, ell) = (5, 2);
    let built = build(Kind::Matching, n, Some(ell), hashfam::DEFAULT_SEED)?;
    let ef = &built.formulation;
    println!(
        "{} hash maps, {} blocks, size {}, {} variables",
        built.family.as_ref().map_or(0, |f| f.len()),
        built.blocks,
        ef.size(),
        ef.dim
    );

    let vertices: Vec<_> =
        oracle_objects(Kind::Matching, n, Some(ell))?.iter().map(|m| m.characteristic_vector()).collect();
    let report = ef.verify_projection_equals(&vertices, &random_objectives(ef.ambient_dim(), 20, DEFAULT_SEED))?;
    println!(
        "{} vertices in the projection, {} of {} objectives agree",
        report.vertices_checked - report.vertex_failures.len(),
        report.objective_checks.iter().filter(|c| c.passed()).count(),
        report.objective_checks.len()
    );
    Ok(())
}
