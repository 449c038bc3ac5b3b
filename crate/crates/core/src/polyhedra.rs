//! Extended formulations: a polyhedron `Q = {y : A_eq y = b_eq, A y <= b}`
//! together with an affine projection `p(y) = T y + t` into the ambient space.
//!
//! The size of a formulation is its number of inequality rows; nonnegativity
//! constraints are stored as ordinary rows `-y_j <= 0` and therefore counted,
//! equations are not.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, LinearProgram, LpResult, Row, Sense};
use crate::rational::{dot, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedFormulation {
    pub dim: usize,
    pub equations: Vec<Row>,
    /// Rows meaning `coeffs · y <= rhs`.
    pub inequalities: Vec<Row>,
    /// `m × dim` matrix `T`.
    pub projection_matrix: Vec<Vec<Rational>>,
    /// Length-`m` offset `t`.
    pub projection_offset: Vec<Rational>,
}

/// Optimum of a linear objective over the projection `p(Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientOptimum {
    pub value: Rational,
    /// Witness `x = p(y)`.
    pub point: Vec<Rational>,
    /// The extension point `y` the witness comes from.
    pub lifted: Vec<Rational>,
}

pub(crate) fn unit(dim: usize, j: usize, value: Rational) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[j] = value;
    v
}

/// `-y_j <= 0`
pub fn nonnegativity_row(dim: usize, j: usize) -> Row {
    Row::new(unit(dim, j, -Rational::one()), Rational::zero())
}

impl ExtendedFormulation {
    /// Formulation with no constraints and a zero projection.
    pub fn empty(dim: usize, ambient: usize) -> Self {
        ExtendedFormulation {
            dim,
            equations: Vec::new(),
            inequalities: Vec::new(),
            projection_matrix: vec![vec![Rational::zero(); dim]; ambient],
            projection_offset: vec![Rational::zero(); ambient],
        }
    }

    /// Coordinate projection onto the first `ambient` variables.
    pub fn with_leading_projection(dim: usize, ambient: usize) -> Self {
        let mut ef = Self::empty(dim, ambient);
        for i in 0..ambient {
            ef.projection_matrix[i][i] = Rational::one();
        }
        ef
    }

    pub fn size(&self) -> usize {
        self.inequalities.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.projection_offset.len()
    }

    pub fn add_nonnegativity(&mut self) {
        for j in 0..self.dim {
            self.inequalities.push(nonnegativity_row(self.dim, j));
        }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.ambient_dim();
        if self.projection_matrix.len() != m {
            return Err(Error::Dimension(format!(
                "projection has {} rows but offset length {m}",
                self.projection_matrix.len()
            )));
        }
        for row in &self.projection_matrix {
            if row.len() != self.dim {
                return Err(Error::Dimension(format!(
                    "projection row of length {} in dimension {}",
                    row.len(),
                    self.dim
                )));
            }
        }
        for row in self.equations.iter().chain(&self.inequalities) {
            if row.coeffs.len() != self.dim {
                return Err(Error::Dimension(format!(
                    "constraint row of length {} in dimension {}",
                    row.coeffs.len(),
                    self.dim
                )));
            }
        }
        Ok(())
    }

    /// `p(y) = T y + t`
    pub fn project(&self, y: &[Rational]) -> Vec<Rational> {
        self.projection_matrix
            .iter()
            .zip(&self.projection_offset)
            .map(|(row, t)| dot(row, y) + t)
            .collect()
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        y.len() == self.dim
            && self.equations.iter().all(|r| r.eval(y) == r.rhs)
            && self.inequalities.iter().all(|r| r.eval(y) <= r.rhs)
    }

    /// The constraint system as an LP with a zero objective.
    ///
    /// Single-variable rows `a y_j <= b` with `a < 0` become lower bounds,
    /// which the simplex handles without slack rows.
    pub fn to_lp(&self) -> LinearProgram {
        let mut lp = LinearProgram::new(self.dim);
        lp.equations = self.equations.clone();
        for row in &self.inequalities {
            let mut support = row.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero());
            if let (Some((j, a)), None) = (support.next(), support.next()) {
                if a.is_negative() {
                    let bound = &row.rhs / a;
                    let slot = &mut lp.lower_bounds[j];
                    if slot.as_ref().is_none_or(|cur| bound > *cur) {
                        *slot = Some(bound);
                    }
                    continue;
                }
            }
            lp.inequalities.push(row.clone());
        }
        lp
    }

    /// `max { <c, x> : x in p(Q) }` via `max <Tᵀc, y> + <c, t>`.
    pub fn optimize(&self, objective: &[Rational]) -> Result<AmbientOptimum> {
        if objective.len() != self.ambient_dim() {
            return Err(Error::Dimension(format!(
                "objective of length {} for ambient dimension {}",
                objective.len(),
                self.ambient_dim()
            )));
        }
        let mut lifted_obj = vec![Rational::zero(); self.dim];
        for (c, row) in objective.iter().zip(&self.projection_matrix) {
            if c.is_zero() {
                continue;
            }
            for (acc, a) in lifted_obj.iter_mut().zip(row) {
                if !a.is_zero() {
                    *acc += c * a;
                }
            }
        }
        let lp = self.to_lp().with_objective(Sense::Maximize, lifted_obj);
        match lp::solve(&lp)? {
            LpResult::Optimal(sol) => {
                let point = self.project(&sol.point);
                let value = sol.value + dot(objective, &self.projection_offset);
                Ok(AmbientOptimum { value, point, lifted: sol.point })
            }
            LpResult::Infeasible => Err(Error::Infeasible("the extension is empty".into())),
            LpResult::Unbounded => Err(Error::Unbounded("objective unbounded over the extension".into())),
        }
    }

    /// Whether some `y in Q` has `p(y) = x`.
    pub fn contains_in_fiber(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.fiber_point(x)?.is_some())
    }

    /// A point of `Q ∩ p⁻¹(x)`, if any.
    pub fn fiber_point(&self, x: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if x.len() != self.ambient_dim() {
            return Err(Error::Dimension(format!(
                "point of length {} for ambient dimension {}",
                x.len(),
                self.ambient_dim()
            )));
        }
        let mut lp = self.to_lp();
        for ((row, t), xi) in self.projection_matrix.iter().zip(&self.projection_offset).zip(x) {
            lp.add_equation(row.clone(), xi - t);
        }
        lp::is_feasible(&lp)
    }

    pub fn is_feasible(&self) -> Result<bool> {
        Ok(lp::is_feasible(&self.to_lp())?.is_some())
    }

    /// Whether `Q` is bounded, decided through its recession cone
    /// `C = {A y <= 0, A_eq y = 0}`.
    ///
    /// `C = {0}` iff the constraint matrix has full column rank and
    /// `w = -Σ A_i` (nonnegative on `C`, zero only at the origin then)
    /// has `max { <w, y> : y in C, <w, y> <= 1 } = 0`.
    pub fn is_bounded(&self) -> Result<bool> {
        let all: Vec<Vec<Rational>> = self
            .equations
            .iter()
            .chain(&self.inequalities)
            .map(|r| r.coeffs.clone())
            .collect();
        if linalg::rank(&all, self.dim) < self.dim {
            return Ok(false);
        }
        let mut w = vec![Rational::zero(); self.dim];
        for row in &self.inequalities {
            for (acc, a) in w.iter_mut().zip(&row.coeffs) {
                *acc -= a;
            }
        }
        let cone = ExtendedFormulation {
            dim: self.dim,
            equations: self
                .equations
                .iter()
                .map(|r| Row::new(r.coeffs.clone(), Rational::zero()))
                .collect(),
            inequalities: self
                .inequalities
                .iter()
                .map(|r| Row::new(r.coeffs.clone(), Rational::zero()))
                .chain(std::iter::once(Row::new(w.clone(), Rational::one())))
                .collect(),
            projection_matrix: Vec::new(),
            projection_offset: Vec::new(),
        };
        let lp = cone.to_lp().with_objective(Sense::Maximize, w);
        match lp::solve(&lp)? {
            LpResult::Optimal(sol) => Ok(sol.value.is_zero()),
            _ => Ok(false),
        }
    }

    /// Whether the inequality rows are exactly `-y_j <= 0` for `j = 0..dim`.
    pub fn is_subspace_form(&self) -> bool {
        self.inequalities.len() == self.dim
            && self
                .inequalities
                .iter()
                .enumerate()
                .all(|(j, r)| *r == nonnegativity_row(self.dim, j))
    }

    /// Subspace extension of the same projection, with one nonnegative
    /// coordinate per irredundant inequality of `Q` (the slack `b - A y`).
    ///
    /// Rows are not normalized to unit length; positive scaling does not
    /// change the slack polyhedron.
    pub fn slack_representation(&self) -> Result<SubspaceExtension> {
        self.validate()?;
        let mut full = LinearProgram::new(self.dim);
        full.equations = self.equations.clone();
        full.inequalities = self.inequalities.clone();
        let reduced = lp::remove_redundant(&full)?;
        let base = lp::is_feasible(&reduced)?
            .ok_or_else(|| Error::Infeasible("the extension is empty".into()))?;

        let f = reduced.inequalities.len();
        let m = self.ambient_dim();
        let eq_matrix: Vec<Vec<Rational>> =
            reduced.equations.iter().map(|r| r.coeffs.clone()).collect();
        // columns of `directions` span the direction space of aff(Q)
        let directions = linalg::rref(&eq_matrix, self.dim).null_space();
        let k = directions.len();
        let directions_t = linalg::transpose(&directions, self.dim); // dim × k
        let a: Vec<Vec<Rational>> = reduced.inequalities.iter().map(|r| r.coeffs.clone()).collect();
        let z0: Vec<Rational> = reduced
            .inequalities
            .iter()
            .map(|r| &r.rhs - r.eval(&base))
            .collect();
        let slack_dirs = if k == 0 {
            vec![Vec::new(); f]
        } else {
            linalg::mat_mul(&a, &directions_t, k) // f × k
        };

        let mut equations = Vec::new();
        let left_null = linalg::rref(&linalg::transpose(&slack_dirs, k), f).null_space();
        for l in left_null {
            let rhs = dot(&l, &z0);
            equations.push(Row::new(l, rhs));
        }

        // y = base + N G (z0 - z) recovers a preimage up to the lineality space
        let ginv = linalg::generalized_inverse(&slack_dirs, k); // k × f
        let ng = if k == 0 {
            vec![vec![Rational::zero(); f]; self.dim]
        } else {
            linalg::mat_mul(&directions_t, &ginv, f) // dim × f
        };
        let tng = linalg::mat_mul(&self.projection_matrix, &ng, f); // m × f
        let projection_matrix: Vec<Vec<Rational>> = tng
            .iter()
            .map(|row| row.iter().map(|v| -v).collect())
            .collect();
        let base_image = self.project(&base);
        let projection_offset: Vec<Rational> = (0..m)
            .map(|i| &base_image[i] + dot(&tng[i], &z0))
            .collect();

        let mut out = ExtendedFormulation {
            dim: f,
            equations,
            inequalities: Vec::new(),
            projection_matrix,
            projection_offset,
        };
        out.add_nonnegativity();
        SubspaceExtension::new(out)
    }

    /// Checks `conv(vertices) ⊆ p(Q)` by fiber feasibility of every vertex and
    /// compares `max <c, x>` over `p(Q)` with the vertex maximum for every
    /// objective in the suite.
    pub fn verify_projection_equals(
        &self,
        vertices: &[Vec<Rational>],
        objectives: &[Vec<Rational>],
    ) -> Result<VerificationReport> {
        self.validate()?;
        if vertices.is_empty() {
            return Err(Error::Domain("vertex list must not be empty".into()));
        }
        let vertex_results: Vec<Result<bool>> =
            vertices.par_iter().map(|x| self.contains_in_fiber(x)).collect();
        let mut vertex_failures = Vec::new();
        for (i, r) in vertex_results.into_iter().enumerate() {
            if !r? {
                vertex_failures.push(i);
            }
        }

        let objective_results: Vec<Result<ObjectiveCheck>> = objectives
            .par_iter()
            .enumerate()
            .map(|(index, c)| {
                let oracle_value = vertices
                    .iter()
                    .map(|x| dot(c, x))
                    .max()
                    .expect("vertex list is non-empty");
                let formulation_value = match self.optimize(c) {
                    Ok(opt) => Some(opt.value),
                    Err(Error::Infeasible(_)) | Err(Error::Unbounded(_)) => None,
                    Err(e) => return Err(e),
                };
                Ok(ObjectiveCheck {
                    index,
                    objective: c.clone(),
                    formulation_value,
                    oracle_value,
                })
            })
            .collect();
        let mut objective_checks = Vec::with_capacity(objectives.len());
        for r in objective_results {
            objective_checks.push(r?);
        }
        Ok(VerificationReport { vertices_checked: vertices.len(), vertex_failures, objective_checks })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let ef: ExtendedFormulation = serde_json::from_str(text)?;
        ef.validate()?;
        Ok(ef)
    }
}

/// An extension whose only inequalities are `y >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceExtension(ExtendedFormulation);

impl SubspaceExtension {
    pub fn new(ef: ExtendedFormulation) -> Result<Self> {
        ef.validate()?;
        if !ef.is_subspace_form() {
            return Err(Error::Domain(
                "inequalities are not exactly the nonnegativity constraints".into(),
            ));
        }
        Ok(SubspaceExtension(ef))
    }

    pub fn formulation(&self) -> &ExtendedFormulation {
        &self.0
    }

    pub fn into_formulation(self) -> ExtendedFormulation {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }
}

impl std::ops::Deref for SubspaceExtension {
    type Target = ExtendedFormulation;
    fn deref(&self) -> &ExtendedFormulation {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveCheck {
    pub index: usize,
    pub objective: Vec<Rational>,
    /// `None` when the formulation is empty or unbounded in this direction.
    pub formulation_value: Option<Rational>,
    pub oracle_value: Rational,
}

impl ObjectiveCheck {
    pub fn passed(&self) -> bool {
        self.formulation_value.as_ref() == Some(&self.oracle_value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub vertices_checked: usize,
    /// Indices of vertices with an empty fiber.
    pub vertex_failures: Vec<usize>,
    pub objective_checks: Vec<ObjectiveCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.vertex_failures.is_empty() && self.objective_checks.iter().all(ObjectiveCheck::passed)
    }

    pub fn objective_failures(&self) -> impl Iterator<Item = &ObjectiveCheck> {
        self.objective_checks.iter().filter(|c| !c.passed())
    }
}

/// Default seed for objective suites.
pub const DEFAULT_SEED: u64 = 0x5EED_2010;

/// `count` pseudo-random integer objectives with entries in `[-10, 10]`.
pub fn random_objectives(dim: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..dim).map(|_| Rational::from_int(rng.gen_range(-10..=10))).collect())
        .collect()
}

/// `+e_j` and `-e_j` for every coordinate.
pub fn unit_objectives(dim: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .flat_map(|j| {
            [unit(dim, j, Rational::one()), unit(dim, j, -Rational::one())]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int_vec;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    pub(crate) fn segment() -> ExtendedFormulation {
        let mut ef = ExtendedFormulation::with_leading_projection(1, 1);
        ef.add_nonnegativity();
        ef.inequalities.push(Row::new(int_vec(&[1]), r(1)));
        ef
    }

    fn triangle() -> ExtendedFormulation {
        let mut ef = ExtendedFormulation::with_leading_projection(2, 2);
        ef.add_nonnegativity();
        ef.inequalities.push(Row::new(int_vec(&[1, 1]), r(1)));
        ef
    }

    #[test]
    fn optimize_segment() {
        let opt = segment().optimize(&int_vec(&[1])).unwrap();
        assert_eq!(opt.value, 1);
        assert_eq!(opt.point, int_vec(&[1]));
        assert_eq!(segment().optimize(&int_vec(&[-1])).unwrap().value, 0);
    }

    #[test]
    fn optimize_reports_empty_extension() {
        let mut ef = segment();
        ef.inequalities.push(Row::new(int_vec(&[-1]), r(-2)));
        assert!(matches!(ef.optimize(&int_vec(&[1])), Err(Error::Infeasible(_))));
    }

    #[test]
    fn slack_of_segment() {
        let sub = segment().slack_representation().unwrap();
        assert_eq!(sub.dim, 2);
        assert_eq!(sub.size(), 2);
        assert_eq!(sub.equations, vec![Row::new(int_vec(&[1, 1]), r(1))]);
        assert_eq!(sub.projection_matrix, vec![int_vec(&[1, 0])]);
        assert_eq!(sub.projection_offset, int_vec(&[0]));
    }

    #[test]
    fn slack_of_triangle_matches_optima() {
        let tri = triangle();
        let sub = tri.slack_representation().unwrap();
        assert_eq!(sub.dim, 3);
        let hull = lp::affine_hull(&sub.to_lp()).unwrap();
        assert_eq!(hull.dimension(), 2);
        for c in [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1]] {
            let c = int_vec(&c);
            assert_eq!(tri.optimize(&c).unwrap().value, sub.optimize(&c).unwrap().value);
        }
    }

    #[test]
    fn slack_of_subspace_extension_keeps_size() {
        let sub = triangle().slack_representation().unwrap();
        let again = sub.slack_representation().unwrap();
        assert_eq!(again.size(), sub.size());
    }

    #[test]
    fn fiber_examples() {
        let tri = triangle();
        assert!(tri.contains_in_fiber(&[Rational::new(1, 2), Rational::new(1, 2)]).unwrap());
        assert!(!tri.contains_in_fiber(&int_vec(&[1, 1])).unwrap());
        assert!(tri.contains_in_fiber(&int_vec(&[1])).is_err());
    }

    #[test]
    fn boundedness() {
        assert!(segment().is_bounded().unwrap());
        let mut ray = ExtendedFormulation::with_leading_projection(1, 1);
        ray.add_nonnegativity();
        assert!(!ray.is_bounded().unwrap());
        let mut point = ExtendedFormulation::with_leading_projection(1, 1);
        point.equations.push(Row::new(int_vec(&[1]), r(1)));
        assert!(point.is_bounded().unwrap());
        let mut strip = ExtendedFormulation::with_leading_projection(2, 2);
        strip.add_nonnegativity();
        strip.inequalities.push(Row::new(int_vec(&[1, 0]), r(1)));
        assert!(!strip.is_bounded().unwrap());
    }

    #[test]
    fn json_uses_fraction_strings() {
        let json = segment().to_json().unwrap();
        assert!(json.starts_with(r#"{"dim":1,"equations":[],"inequalities":[{"coeffs":["-1/1"],"rhs":"0/1"}"#));
        assert_eq!(ExtendedFormulation::from_json(&json).unwrap(), segment());
    }

    #[test]
    fn objective_suites_are_deterministic() {
        assert_eq!(random_objectives(5, 3, 7), random_objectives(5, 3, 7));
        assert_ne!(random_objectives(5, 3, 7), random_objectives(5, 3, 8));
        assert_eq!(unit_objectives(3).len(), 6);
    }
}
