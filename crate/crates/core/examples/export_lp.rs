//! Export the spanning tree formulation of K_3 as a plain-text LP model.

use efforge::builders::build_spanning_tree_ef;
use efforge::lpformat::write_lp;
use efforge::rational::int_vec;

fn main() -> efforge::Result<()> {
    let ef = build_spanning_tree_ef(3)?;
    print!("{}", write_lp(&ef, &int_vec(&[2, 1, 1]))?);
    Ok(())
}
