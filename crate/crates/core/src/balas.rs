//! Disjunctive union of extensions.
//!
//! Given bounded, non-empty extensions `(Q_i, p_i)` of polytopes `P_i` in a
//! common ambient space, the system
//!
//! ```text
//! A_i y_i <= λ_i b_i,  B_i y_i = λ_i c_i,  λ >= 0,  Σ λ_i = 1
//! ```
//!
//! with projection `Σ (T_i y_i + λ_i t_i)` is an extension of
//! `conv(P_1 ∪ … ∪ P_q)` of size `Σ (size_i + 1)`.

use crate::error::{domain, Error, Result};
use crate::lp::Row;
use crate::polyhedra::{nonnegativity_row, ExtendedFormulation};
use crate::rational::Rational;

/// Where each block's variables live inside the union.
///
/// Variables are laid out as `y_1, …, y_q, λ_1, …, λ_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionLayout {
    pub block_offsets: Vec<usize>,
    pub block_dims: Vec<usize>,
    pub lambda_offset: usize,
}

impl UnionLayout {
    pub fn blocks(&self) -> usize {
        self.block_dims.len()
    }

    pub fn lambda(&self, i: usize) -> usize {
        self.lambda_offset + i
    }

    pub fn dim(&self) -> usize {
        self.lambda_offset + self.blocks()
    }

    /// The union point with `λ_i = 1` and `y_i = y`, everything else zero.
    pub fn lift(&self, i: usize, y: &[Rational]) -> Vec<Rational> {
        assert_eq!(y.len(), self.block_dims[i], "block point has the wrong dimension");
        let mut point = vec![Rational::zero(); self.dim()];
        point[self.block_offsets[i]..self.block_offsets[i] + y.len()].clone_from_slice(y);
        point[self.lambda(i)] = Rational::one();
        point
    }
}

pub fn union_extension(blocks: &[ExtendedFormulation]) -> Result<ExtendedFormulation> {
    Ok(union_extension_with_layout(blocks)?.0)
}

/// Homogenized union; every block must be feasible and bounded.
pub fn union_extension_with_layout(
    blocks: &[ExtendedFormulation],
) -> Result<(ExtendedFormulation, UnionLayout)> {
    let Some(first) = blocks.first() else {
        return domain("union of an empty block list");
    };
    let ambient = first.ambient_dim();
    for (i, block) in blocks.iter().enumerate() {
        block.validate()?;
        if block.ambient_dim() != ambient {
            return Err(Error::Dimension(format!(
                "block {i} projects to dimension {} instead of {ambient}",
                block.ambient_dim()
            )));
        }
        if !block.is_feasible()? {
            return Err(Error::Infeasible(format!("block {i} is empty; drop it before the union")));
        }
        if !block.is_bounded()? {
            return Err(Error::Unbounded(format!(
                "block {i} is unbounded; homogenization requires polytopes"
            )));
        }
    }

    let q = blocks.len();
    let mut block_offsets = Vec::with_capacity(q);
    let mut offset = 0;
    for block in blocks {
        block_offsets.push(offset);
        offset += block.dim;
    }
    let layout = UnionLayout {
        block_offsets,
        block_dims: blocks.iter().map(|b| b.dim).collect(),
        lambda_offset: offset,
    };
    let dim = layout.dim();

    let homogenize = |i: usize, row: &Row| -> Row {
        let mut coeffs = vec![Rational::zero(); dim];
        let start = layout.block_offsets[i];
        coeffs[start..start + row.coeffs.len()].clone_from_slice(&row.coeffs);
        coeffs[layout.lambda(i)] = -&row.rhs;
        Row::new(coeffs, Rational::zero())
    };

    let mut out = ExtendedFormulation::empty(dim, ambient);
    for (i, block) in blocks.iter().enumerate() {
        out.equations.extend(block.equations.iter().map(|r| homogenize(i, r)));
        out.inequalities.extend(block.inequalities.iter().map(|r| homogenize(i, r)));
        let start = layout.block_offsets[i];
        for (k, row) in block.projection_matrix.iter().enumerate() {
            out.projection_matrix[k][start..start + block.dim].clone_from_slice(row);
            out.projection_matrix[k][layout.lambda(i)] = block.projection_offset[k].clone();
        }
    }
    for i in 0..q {
        out.inequalities.push(nonnegativity_row(dim, layout.lambda(i)));
    }
    let mut sum = vec![Rational::zero(); dim];
    for i in 0..q {
        sum[layout.lambda(i)] = Rational::one();
    }
    out.equations.push(Row::new(sum, Rational::one()));
    debug_assert_eq!(out.size(), blocks.iter().map(|b| b.size() + 1).sum::<usize>());
    Ok((out, layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{self, Sense};
    use crate::rational::int_vec;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    /// `{x = v}` in one variable with identity projection.
    fn point_1d(v: i64) -> ExtendedFormulation {
        let mut ef = ExtendedFormulation::with_leading_projection(1, 1);
        ef.equations.push(Row::new(vec![r(1)], r(v)));
        ef
    }

    fn interval(lo: i64, hi: i64) -> ExtendedFormulation {
        let mut ef = ExtendedFormulation::with_leading_projection(1, 1);
        ef.inequalities.push(Row::new(vec![r(1)], r(hi)));
        ef.inequalities.push(Row::new(vec![r(-1)], r(-lo)));
        ef
    }

    /// A point in the plane as a 0-variable extension with offset `p`.
    fn point_2d(x: i64, y: i64) -> ExtendedFormulation {
        let mut ef = ExtendedFormulation::empty(0, 2);
        ef.projection_offset = int_vec(&[x, y]);
        ef
    }

    #[test]
    fn two_points_give_segment() {
        let u = union_extension(&[point_1d(0), point_1d(1)]).unwrap();
        assert_eq!(u.size(), 2);
        assert_eq!(u.optimize(&[r(1)]).unwrap().value, r(1));
        assert_eq!(u.optimize(&[r(-1)]).unwrap().value, r(0));
    }

    #[test]
    fn two_intervals() {
        let u = union_extension(&[interval(0, 1), interval(2, 3)]).unwrap();
        assert_eq!(u.size(), 6);
        assert_eq!(u.optimize(&[r(1)]).unwrap().value, r(3));
        assert_eq!(u.optimize(&[r(-1)]).unwrap().value, r(0));
        assert!(u.contains_in_fiber(&[Rational::new(3, 2)]).unwrap());
        assert!(!u.contains_in_fiber(&[r(4)]).unwrap());
    }

    #[test]
    fn three_points_give_triangle() {
        let u = union_extension(&[point_2d(0, 0), point_2d(1, 0), point_2d(0, 1)]).unwrap();
        assert_eq!(u.size(), 3);
        assert_eq!(u.optimize(&int_vec(&[1, 1])).unwrap().value, r(1));
        assert_eq!(u.optimize(&int_vec(&[-1, -1])).unwrap().value, r(0));
        let verts = vec![int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[0, 1])];
        let objs = crate::polyhedra::random_objectives(2, 20, 7);
        assert!(u.verify_projection_equals(&verts, &objs).unwrap().passed());
    }

    #[test]
    fn size_law() {
        let blocks = vec![interval(0, 1), point_1d(5), interval(-2, 7)];
        let u = union_extension(&blocks).unwrap();
        assert_eq!(u.size(), blocks.iter().map(|b| b.size() + 1).sum::<usize>());
    }

    #[test]
    fn zero_multiplier_forces_zero_copy() {
        let blocks = vec![interval(0, 1), interval(2, 3), point_1d(-4)];
        let (u, layout) = union_extension_with_layout(&blocks).unwrap();
        for i in 0..blocks.len() {
            let mut lp = u.to_lp();
            let mut fix = vec![Rational::zero(); u.dim];
            fix[layout.lambda(i)] = r(1);
            lp.add_equation(fix, r(0));
            for j in 0..layout.block_dims[i] {
                let var = layout.block_offsets[i] + j;
                for sign in [1, -1] {
                    let c = crate::polyhedra::unit(u.dim, var, r(sign));
                    let sol = lp::solve(&lp.clone().with_objective(Sense::Maximize, c))
                        .unwrap()
                        .optimal()
                        .unwrap();
                    assert!(sol.value.is_zero());
                }
            }
        }
    }

    #[test]
    fn lifted_block_points_are_feasible() {
        let blocks = vec![interval(0, 1), interval(2, 3)];
        let (u, layout) = union_extension_with_layout(&blocks).unwrap();
        let y = layout.lift(1, &[Rational::new(5, 2)]);
        assert!(u.contains(&y));
        assert_eq!(u.project(&y), vec![Rational::new(5, 2)]);
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(matches!(union_extension(&[]), Err(Error::Domain(_))));
        let mut empty = interval(0, 1);
        empty.inequalities.push(Row::new(vec![r(1)], r(-1)));
        assert!(matches!(union_extension(&[interval(0, 1), empty]), Err(Error::Infeasible(_))));
        let mut ray = ExtendedFormulation::with_leading_projection(1, 1);
        ray.add_nonnegativity();
        assert!(matches!(union_extension(&[ray]), Err(Error::Unbounded(_))));
        assert!(matches!(
            union_extension(&[interval(0, 1), point_2d(0, 0)]),
            Err(Error::Dimension(_))
        ));
    }
}
