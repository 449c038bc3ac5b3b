//! Plain-text LP export of an extended formulation.
//!
//! Line layout: the objective, then one line per inequality, then one line
//! per equation. Coefficients are exact decimals when the denominator is a
//! product of powers of 2 and 5; otherwise they are written as `p/q` and the
//! file starts with a `\ fraction-extended` marker line.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::lp::Row;
use crate::polyhedra::ExtendedFormulation;
use crate::rational::{dot, Rational};

pub const FRACTION_MARKER: &str = "\\ fraction-extended";

struct Renderer {
    fractions: bool,
}

impl Renderer {
    fn number(&mut self, value: &Rational) -> String {
        value.to_exact_decimal().unwrap_or_else(|| {
            self.fractions = true;
            value.to_fraction_string()
        })
    }

    fn terms(&mut self, coeffs: &[Rational]) -> String {
        let mut out = String::new();
        for (j, a) in coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let sign = if a.is_negative() { '-' } else { '+' };
            let magnitude = self.number(&a.abs());
            if !out.is_empty() {
                out.push(' ');
            }
            write!(out, "{sign}{magnitude} y{}", j + 1).expect("writing to a string");
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn row(&mut self, name: &str, row: &Row, relation: &str) -> String {
        let lhs = self.terms(&row.coeffs);
        let rhs = self.number(&row.rhs);
        format!("{name}: {lhs} {relation} {rhs}")
    }
}

/// Model maximizing `c · p(y)` over the formulation.
pub fn write_lp(ef: &ExtendedFormulation, objective: &[Rational]) -> Result<String> {
    ef.validate()?;
    if objective.len() != ef.ambient_dim() {
        return Err(Error::Dimension(format!(
            "objective of length {} for ambient dimension {}",
            objective.len(),
            ef.ambient_dim()
        )));
    }
    let lifted: Vec<Rational> = (0..ef.dim)
        .map(|j| objective.iter().zip(&ef.projection_matrix).map(|(c, row)| c * &row[j]).sum())
        .collect();
    let constant = dot(objective, &ef.projection_offset);

    let mut r = Renderer { fractions: false };
    let mut lines = Vec::with_capacity(1 + ef.size() + ef.equations.len());
    let mut head = format!("max: {}", r.terms(&lifted));
    if !constant.is_zero() {
        let sign = if constant.is_negative() { '-' } else { '+' };
        let magnitude = r.number(&constant.abs());
        write!(head, " {sign}{magnitude}").expect("writing to a string");
    }
    lines.push(head);
    for (i, row) in ef.inequalities.iter().enumerate() {
        lines.push(r.row(&format!("c{}", i + 1), row, "<="));
    }
    for (i, row) in ef.equations.iter().enumerate() {
        lines.push(r.row(&format!("e{}", i + 1), row, "="));
    }
    let mut text = String::new();
    if r.fractions {
        text.push_str(FRACTION_MARKER);
        text.push('\n');
    }
    for line in lines {
        text.push_str(&line);
        text.push('\n');
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int_vec;

    fn segment() -> ExtendedFormulation {
        let mut ef = ExtendedFormulation::with_leading_projection(1, 1);
        ef.inequalities.push(Row::new(int_vec(&[1]), Rational::one()));
        ef.add_nonnegativity();
        ef
    }

    #[test]
    fn segment_is_three_lines() {
        let text = write_lp(&segment(), &int_vec(&[1])).unwrap();
        assert_eq!(text, "max: +1 y1\nc1: +1 y1 <= 1\nc2: -1 y1 <= 0\n");
    }

    #[test]
    fn decimals_and_fractions() {
        let mut ef = segment();
        ef.inequalities[0].coeffs[0] = Rational::new(3, 4);
        let text = write_lp(&ef, &int_vec(&[2])).unwrap();
        assert!(text.contains("+0.75 y1 <= 1"));
        assert!(!text.starts_with(FRACTION_MARKER));
        ef.inequalities[0].rhs = Rational::new(1, 3);
        let text = write_lp(&ef, &int_vec(&[2])).unwrap();
        assert!(text.starts_with(FRACTION_MARKER));
        assert!(text.contains("<= 1/3"));
    }

    #[test]
    fn offset_becomes_constant() {
        let mut ef = segment();
        ef.projection_offset[0] = Rational::new(-1, 2);
        let text = write_lp(&ef, &int_vec(&[3])).unwrap();
        assert!(text.starts_with("max: +3 y1 -1.5\n"));
    }

    #[test]
    fn objective_length_checked() {
        assert!(write_lp(&segment(), &int_vec(&[1, 2])).is_err());
    }
}
