//! Slack representation of a formulation: same size, nonnegativity as the
//! only inequalities, same projection.

use efforge::lp::Row;
use efforge::polyhedra::{unit_objectives, ExtendedFormulation};
use efforge::rational::int_vec;
use efforge::Rational;

fn main() -> efforge::Result<()> {
    // square [0,1]^2 with a redundant row x1 + x2 <= 3
    let mut square = ExtendedFormulation::with_leading_projection(2, 2);
    for (coeffs, rhs) in [([1, 0], 1), ([0, 1], 1), ([-1, 0], 0), ([0, -1], 0), ([1, 1], 3)] {
        square.inequalities.push(Row::new(int_vec(&coeffs), Rational::from_int(rhs)));
    }
    let slack = square.slack_representation()?;
    println!("original size {}, slack size {}", square.size(), slack.size());
    println!("slack equations: {}", slack.equations.len());
    for c in unit_objectives(2) {
        println!(
            "c = {:?}: {} vs {}",
            c,
            square.optimize(&c)?.value,
            slack.optimize(&c)?.value
        );
    }
    Ok(())
}
