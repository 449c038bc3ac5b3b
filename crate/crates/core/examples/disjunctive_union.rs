//! Disjunctive union of two interval extensions and of three points.

use efforge::balas::union_extension;
use efforge::lp::Row;
use efforge::polyhedra::ExtendedFormulation;
use efforge::rational::int_vec;
use efforge::Rational;

fn interval(lo: i64, hi: i64) -> ExtendedFormulation {
    let mut ef = ExtendedFormulation::with_leading_projection(1, 1);
    ef.inequalities.push(Row::new(int_vec(&[1]), Rational::from_int(hi)));
    ef.inequalities.push(Row::new(int_vec(&[-1]), Rational::from_int(-lo)));
    ef
}

fn point(x: i64, y: i64) -> ExtendedFormulation {
    let mut ef = ExtendedFormulation::empty(0, 2);
    ef.projection_offset = int_vec(&[x, y]);
    ef
}

fn main() -> efforge::Result<()> {
    let union = union_extension(&[interval(0, 1), interval(2, 3)])?;
    println!("[0,1] ∪ [2,3]: size {}, {} variables", union.size(), union.dim);
    println!("max x = {}", union.optimize(&int_vec(&[1]))?.value);
    println!("min x = {}", -union.optimize(&int_vec(&[-1]))?.value);

    let triangle = union_extension(&[point(0, 0), point(1, 0), point(0, 1)])?;
    let best = triangle.optimize(&int_vec(&[1, 1]))?;
    println!("triangle: max x1 + x2 = {} at {:?}", best.value, best.point);
    Ok(())
}
