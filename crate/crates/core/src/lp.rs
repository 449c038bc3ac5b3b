//! Exact linear programming over [`Rational`].
//!
//! Two-phase primal simplex on a dense tableau with Bland's rule for both the
//! entering and the leaving variable. Every optimal answer carries a dual
//! certificate that can be checked independently with [`DualCertificate::verify`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, Rational};

/// Largest variable count the dense tableau accepts.
pub const MAX_VARIABLES: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// One linear row `coeffs · y (= | <=) rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Row { coeffs, rhs }
    }

    pub fn eval(&self, y: &[Rational]) -> Rational {
        dot(&self.coeffs, y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub equations: Vec<Row>,
    /// Rows meaning `coeffs · y <= rhs`.
    pub inequalities: Vec<Row>,
    /// `Some(l)` means `y_j >= l`; `None` leaves `y_j` free.
    pub lower_bounds: Vec<Option<Rational>>,
}

impl LinearProgram {
    /// Feasibility problem with free variables and a zero objective.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            sense: Sense::Maximize,
            objective: vec![Rational::zero(); num_vars],
            equations: Vec::new(),
            inequalities: Vec::new(),
            lower_bounds: vec![None; num_vars],
        }
    }

    pub fn with_objective(mut self, sense: Sense, objective: Vec<Rational>) -> Self {
        self.sense = sense;
        self.objective = objective;
        self
    }

    pub fn nonnegative(mut self) -> Self {
        self.lower_bounds = vec![Some(Rational::zero()); self.num_vars];
        self
    }

    pub fn add_equation(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.equations.push(Row::new(coeffs, rhs));
    }

    pub fn add_inequality(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.inequalities.push(Row::new(coeffs, rhs));
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_vars > MAX_VARIABLES {
            return Err(Error::SizeGuard(format!(
                "{} variables exceed the dense limit of {MAX_VARIABLES}",
                self.num_vars
            )));
        }
        let bad = |what: &str, len: usize| {
            Err(Error::Dimension(format!("{what} has length {len}, expected {}", self.num_vars)))
        };
        if self.objective.len() != self.num_vars {
            return bad("objective", self.objective.len());
        }
        if self.lower_bounds.len() != self.num_vars {
            return bad("lower bounds", self.lower_bounds.len());
        }
        for row in self.equations.iter().chain(&self.inequalities) {
            if row.coeffs.len() != self.num_vars {
                return bad("constraint row", row.coeffs.len());
            }
        }
        Ok(())
    }

    /// Exact membership test for a point.
    pub fn is_satisfied_by(&self, y: &[Rational]) -> bool {
        y.len() == self.num_vars
            && self.equations.iter().all(|r| r.eval(y) == r.rhs)
            && self.inequalities.iter().all(|r| r.eval(y) <= r.rhs)
            && self
                .lower_bounds
                .iter()
                .zip(y)
                .all(|(l, v)| l.as_ref().is_none_or(|l| v >= l))
    }

    /// The same constraint set with every lower bound rewritten as an
    /// inequality row `-y_j <= -l`.
    pub fn with_bounds_as_rows(&self) -> LinearProgram {
        let mut out = self.clone();
        for (j, bound) in self.lower_bounds.iter().enumerate() {
            if let Some(l) = bound {
                let mut coeffs = vec![Rational::zero(); self.num_vars];
                coeffs[j] = -Rational::one();
                out.inequalities.push(Row::new(coeffs, -l));
            }
        }
        out.lower_bounds = vec![None; self.num_vars];
        out
    }
}

/// Multipliers proving optimality, stated for the maximization form.
///
/// With objective `c` (negated when minimizing), the multipliers satisfy
/// `Eᵀu + Gᵀw − r = c`, `w ≥ 0`, `r ≥ 0` (and `r_j = 0` for free variables),
/// and `f·u + h·w − l·r` equals the (maximization-form) optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    pub equations: Vec<Rational>,
    pub inequalities: Vec<Rational>,
    pub bounds: Vec<Rational>,
}

impl DualCertificate {
    /// Checks dual feasibility and equality of objective values, exactly.
    pub fn verify(&self, lp: &LinearProgram, value: &Rational) -> bool {
        if self.equations.len() != lp.equations.len()
            || self.inequalities.len() != lp.inequalities.len()
            || self.bounds.len() != lp.num_vars
        {
            return false;
        }
        if self.inequalities.iter().any(Rational::is_negative)
            || self.bounds.iter().any(Rational::is_negative)
        {
            return false;
        }
        let flip = lp.sense == Sense::Minimize;
        let mut combo = vec![Rational::zero(); lp.num_vars];
        let mut dual_value = Rational::zero();
        for (row, mult) in lp
            .equations
            .iter()
            .zip(&self.equations)
            .chain(lp.inequalities.iter().zip(&self.inequalities))
        {
            if mult.is_zero() {
                continue;
            }
            for (acc, a) in combo.iter_mut().zip(&row.coeffs) {
                if !a.is_zero() {
                    *acc += mult * a;
                }
            }
            dual_value += mult * &row.rhs;
        }
        for (j, r) in self.bounds.iter().enumerate() {
            match &lp.lower_bounds[j] {
                Some(l) => {
                    combo[j] -= r;
                    dual_value -= r * l;
                }
                None if !r.is_zero() => return false,
                None => {}
            }
        }
        let target: Vec<Rational> = if flip {
            lp.objective.iter().map(|c| -c).collect()
        } else {
            lp.objective.clone()
        };
        let primal = if flip { -value } else { value.clone() };
        combo == target && dual_value == primal
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: Vec<Rational>,
    pub dual: DualCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpResult::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpResult::Infeasible)
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, LpResult::Unbounded)
    }
}

/// How an original variable maps onto tableau columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    Shifted(usize),
    Split(usize, usize),
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let mut prow = std::mem::take(&mut self.rows[r]);
        let inv = prow[c].recip();
        if !inv.is_one() {
            for v in prow.iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            self.rhs[r] *= &inv;
        }
        let support: Vec<usize> = prow
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, _)| j)
            .collect();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            let row = &mut self.rows[i];
            for &j in &support {
                row[j] -= &factor * &prow[j];
            }
            if !prhs.is_zero() {
                self.rhs[i] -= &factor * &prhs;
            }
        }
        if !self.reduced[c].is_zero() {
            let factor = self.reduced[c].clone();
            for &j in &support {
                self.reduced[j] -= &factor * &prow[j];
            }
            self.value -= &factor * &prhs;
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Runs Bland's rule to optimality. Returns `false` on unboundedness.
    fn run(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(enter) = (0..self.reduced.len())
                .find(|&j| allowed[j] && self.reduced[j].is_negative())
            else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }

    fn reset_objective(&mut self, costs: &[Rational]) {
        let mut reduced: Vec<Rational> = costs.iter().map(|c| -c).collect();
        let mut value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (r, a) in reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *r += cb * a;
                }
            }
            value += cb * &self.rhs[i];
        }
        self.reduced = reduced;
        self.value = value;
    }
}

/// Solves the program exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpResult> {
    lp.validate()?;
    let n = lp.num_vars;
    let maximize_costs: Vec<Rational> = match lp.sense {
        Sense::Maximize => lp.objective.clone(),
        Sense::Minimize => lp.objective.iter().map(|c| -c).collect(),
    };

    let mut var_map = Vec::with_capacity(n);
    let mut ncols = 0;
    for bound in &lp.lower_bounds {
        if bound.is_some() {
            var_map.push(VarMap::Shifted(ncols));
            ncols += 1;
        } else {
            var_map.push(VarMap::Split(ncols, ncols + 1));
            ncols += 2;
        }
    }
    let shift: Vec<Rational> = lp
        .lower_bounds
        .iter()
        .map(|b| b.clone().unwrap_or_else(Rational::zero))
        .collect();
    let structural = ncols;

    let m_eq = lp.equations.len();
    let m = m_eq + lp.inequalities.len();
    let slack_base = structural;
    ncols += lp.inequalities.len();

    // Row-wise data before artificials are known.
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut negated = Vec::with_capacity(m);
    for (k, row) in lp.equations.iter().chain(&lp.inequalities).enumerate() {
        let mut entries = Vec::new();
        for (j, a) in row.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match var_map[j] {
                VarMap::Shifted(c) => entries.push((c, a.clone())),
                VarMap::Split(p, q) => {
                    entries.push((p, a.clone()));
                    entries.push((q, -a));
                }
            }
        }
        if k >= m_eq {
            entries.push((slack_base + (k - m_eq), Rational::one()));
        }
        let b = &row.rhs - dot(&row.coeffs, &shift);
        let flip = b.is_negative();
        if flip {
            for e in entries.iter_mut() {
                e.1 = -&e.1;
            }
        }
        rhs.push(if flip { -b } else { b });
        negated.push(flip);
        rows.push(entries);
    }

    // Identity column per row: the slack when it already has coefficient +1,
    // otherwise a fresh artificial.
    let mut id_col = Vec::with_capacity(m);
    let art_base = ncols;
    for k in 0..m {
        if k >= m_eq && !negated[k] {
            id_col.push(slack_base + (k - m_eq));
        } else {
            id_col.push(ncols);
            rows[k].push((ncols, Rational::one()));
            ncols += 1;
        }
    }
    let is_artificial: Vec<bool> = (0..ncols).map(|j| j >= art_base).collect();

    let mut dense = vec![vec![Rational::zero(); ncols]; m];
    for (k, entries) in rows.into_iter().enumerate() {
        for (j, v) in entries {
            dense[k][j] += v;
        }
    }
    let mut tab = Tableau {
        rows: dense,
        rhs,
        basis: id_col.clone(),
        reduced: vec![Rational::zero(); ncols],
        value: Rational::zero(),
    };

    if ncols > art_base {
        let phase1: Vec<Rational> = (0..ncols)
            .map(|j| if is_artificial[j] { -Rational::one() } else { Rational::zero() })
            .collect();
        tab.reset_objective(&phase1);
        let all = vec![true; ncols];
        tab.run(&all);
        if tab.value.is_negative() {
            return Ok(LpResult::Infeasible);
        }
        for r in 0..m {
            if !is_artificial[tab.basis[r]] {
                continue;
            }
            if let Some(j) = (0..art_base).find(|&j| !tab.rows[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }

    let mut costs = vec![Rational::zero(); ncols];
    for (j, map) in var_map.iter().enumerate() {
        match *map {
            VarMap::Shifted(c) => costs[c] = maximize_costs[j].clone(),
            VarMap::Split(p, q) => {
                costs[p] = maximize_costs[j].clone();
                costs[q] = -&maximize_costs[j];
            }
        }
    }
    tab.reset_objective(&costs);
    let allowed: Vec<bool> = is_artificial.iter().map(|a| !a).collect();
    if !tab.run(&allowed) {
        return Ok(LpResult::Unbounded);
    }

    let mut col_value = vec![Rational::zero(); ncols];
    for (i, &b) in tab.basis.iter().enumerate() {
        col_value[b] = tab.rhs[i].clone();
    }
    let point: Vec<Rational> = var_map
        .iter()
        .enumerate()
        .map(|(j, map)| match *map {
            VarMap::Shifted(c) => &shift[j] + &col_value[c],
            VarMap::Split(p, q) => &col_value[p] - &col_value[q],
        })
        .collect();
    let max_value = dot(&maximize_costs, &point);
    let value = match lp.sense {
        Sense::Maximize => max_value,
        Sense::Minimize => -max_value,
    };

    let row_dual: Vec<Rational> = (0..m)
        .map(|k| {
            let pi = tab.reduced[id_col[k]].clone();
            if negated[k] {
                -pi
            } else {
                pi
            }
        })
        .collect();
    let bounds: Vec<Rational> = var_map
        .iter()
        .map(|map| match *map {
            VarMap::Shifted(c) => tab.reduced[c].clone(),
            VarMap::Split(..) => Rational::zero(),
        })
        .collect();
    let dual = DualCertificate {
        equations: row_dual[..m_eq].to_vec(),
        inequalities: row_dual[m_eq..].to_vec(),
        bounds,
    };
    Ok(LpResult::Optimal(LpSolution { value, point, dual }))
}

/// Feasibility check; returns a feasible point when one exists.
pub fn is_feasible(lp: &LinearProgram) -> Result<Option<Vec<Rational>>> {
    let mut probe = lp.clone();
    probe.objective = vec![Rational::zero(); lp.num_vars];
    probe.sense = Sense::Maximize;
    Ok(solve(&probe)?.optimal().map(|s| s.point))
}

/// Affine hull of a feasible constraint system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineHull {
    pub point: Vec<Rational>,
    /// Linearly independent directions spanning the hull's direction space.
    pub directions: Vec<Vec<Rational>>,
    /// Equations (explicit and implicit) cutting out the hull.
    pub equations: Vec<Row>,
}

impl AffineHull {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }
}

/// Indices of inequality rows that hold with equality on the whole feasible
/// set, plus one feasible point. Expects bounds already rewritten as rows.
fn implicit_equalities(lp: &LinearProgram) -> Result<(Vec<bool>, Vec<Rational>)> {
    let base = is_feasible(lp)?
        .ok_or_else(|| Error::Infeasible("constraint system has no solution".into()))?;
    let rows = &lp.inequalities;
    let mut decided = vec![false; rows.len()];
    let mut implicit = vec![false; rows.len()];
    let mark_slack = |y: &[Rational], decided: &mut [bool]| {
        for (i, row) in rows.iter().enumerate() {
            if !decided[i] && row.eval(y) < row.rhs {
                decided[i] = true;
            }
        }
    };
    mark_slack(&base, &mut decided);
    for i in 0..rows.len() {
        if decided[i] {
            continue;
        }
        let mut probe = lp.clone();
        probe.sense = Sense::Minimize;
        probe.objective = rows[i].coeffs.clone();
        match solve(&probe)? {
            LpResult::Optimal(sol) => {
                if sol.value == rows[i].rhs {
                    implicit[i] = true;
                    decided[i] = true;
                } else {
                    mark_slack(&sol.point, &mut decided);
                }
            }
            LpResult::Unbounded => decided[i] = true,
            LpResult::Infeasible => unreachable!("system was feasible"),
        }
    }
    Ok((implicit, base))
}

/// Point plus direction basis of the solution set's affine hull.
pub fn affine_hull(lp: &LinearProgram) -> Result<AffineHull> {
    lp.validate()?;
    let lp = lp.with_bounds_as_rows();
    let (implicit, point) = implicit_equalities(&lp)?;
    let mut equations = lp.equations.clone();
    for (row, &imp) in lp.inequalities.iter().zip(&implicit) {
        if imp {
            equations.push(row.clone());
        }
    }
    let matrix: Vec<Vec<Rational>> = equations.iter().map(|r| r.coeffs.clone()).collect();
    let directions = linalg::rref(&matrix, lp.num_vars).null_space();
    Ok(AffineHull { point, directions, equations })
}

/// Irredundant description of the same solution set.
///
/// Bounds are rewritten as rows, implicit equalities become equations
/// (dropping ones dependent on the equations already present), and every
/// remaining inequality is tested by LP and removed when implied by the rest,
/// in row order.
pub fn remove_redundant(lp: &LinearProgram) -> Result<LinearProgram> {
    lp.validate()?;
    let lp = lp.with_bounds_as_rows();
    let (implicit, _) = implicit_equalities(&lp)?;

    let mut equations: Vec<Row> = Vec::new();
    let mut rank = 0;
    let candidates = lp
        .equations
        .iter()
        .chain(lp.inequalities.iter().zip(&implicit).filter(|(_, &i)| i).map(|(r, _)| r));
    for row in candidates {
        let mut trial: Vec<Vec<Rational>> = equations.iter().map(|r| r.coeffs.clone()).collect();
        trial.push(row.coeffs.clone());
        let r = linalg::rank(&trial, lp.num_vars);
        if r > rank {
            rank = r;
            equations.push(row.clone());
        }
    }

    let mut keep: Vec<Row> = lp
        .inequalities
        .iter()
        .zip(&implicit)
        .filter(|(_, &i)| !i)
        .map(|(r, _)| r.clone())
        .collect();
    let mut i = 0;
    while i < keep.len() {
        let mut probe = LinearProgram::new(lp.num_vars);
        probe.equations = equations.clone();
        probe.inequalities = keep
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, r)| r.clone())
            .collect();
        probe.sense = Sense::Maximize;
        probe.objective = keep[i].coeffs.clone();
        let redundant = match solve(&probe)? {
            LpResult::Optimal(sol) => sol.value <= keep[i].rhs,
            LpResult::Unbounded => false,
            LpResult::Infeasible => unreachable!("relaxation of a feasible system"),
        };
        if redundant {
            keep.remove(i);
        } else {
            i += 1;
        }
    }

    Ok(LinearProgram {
        num_vars: lp.num_vars,
        sense: lp.sense,
        objective: lp.objective.clone(),
        equations,
        inequalities: keep,
        lower_bounds: vec![None; lp.num_vars],
    })
}
