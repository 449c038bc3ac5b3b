//! Solve a small LP exactly and check the returned dual certificate.
//!
//! ```text
//! maximize   3 y1 + 2 y2
//! subject to y1 + y2 <= 4
//!            y1 + 3 y2 <= 6
//!            y1 <= 3,  y >= 0
//! ```

use efforge::lp::{self, LinearProgram, LpResult, Sense};
use efforge::rational::int_vec;
use efforge::Rational;

fn main() -> efforge::Result<()> {
    let mut model = LinearProgram::new(2)
        .with_objective(Sense::Maximize, int_vec(&[3, 2]))
        .nonnegative();
    model.add_inequality(int_vec(&[1, 1]), Rational::from_int(4));
    model.add_inequality(int_vec(&[1, 3]), Rational::from_int(6));
    model.add_inequality(int_vec(&[1, 0]), Rational::from_int(3));

    match lp::solve(&model)? {
        LpResult::Optimal(sol) => {
            println!("optimum {} at {:?}", sol.value, sol.point);
            println!("row duals {:?}", sol.dual.inequalities);
            println!("dual certificate valid: {}", sol.dual.verify(&model, &sol.value));
        }
        other => println!("no optimum: {other:?}"),
    }

    let mut hull = LinearProgram::new(3).nonnegative();
    hull.add_equation(int_vec(&[1, 1, 1]), Rational::one());
    hull.add_inequality(int_vec(&[1, 0, 0]), Rational::zero());
    let aff = lp::affine_hull(&hull)?;
    println!("segment {{y1 = 0, y2 + y3 = 1}} has dimension {}", aff.dimension());
    Ok(())
}
