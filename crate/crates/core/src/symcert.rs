//! Certificates against small coordinate-symmetric subspace extensions of
//! the `(2k+1)`-matching polytope.
//!
//! Two disjoint node sets `V_*`, `V^*` of size `2k+1` are fixed; `M*_i` is the
//! set of perfect matchings on `V_* ∪ V^*` with exactly `i` crossing edges.
//! Weights `λ_i` on the classes are chosen so that the slack combination of
//! `x(E(V_*)) <= k` equals `-1` while every pattern combination stays
//! nonnegative.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lp::{self, LinearProgram, LpResult, Sense};
use crate::rational::Rational;

pub const MAX_K: usize = 8;
/// Largest `k` for which concrete matchings are enumerated.
pub const MAX_CONCRETE_K: usize = 2;

/// `γ` with `Σ f(i) γ_i = f(0)` for every polynomial of degree `< |I|`.
pub fn lagrange_at_zero(points: &[Rational]) -> Result<Vec<Rational>> {
    for (a, p) in points.iter().enumerate() {
        if points[a + 1..].contains(p) {
            return domain(format!("interpolation points must be distinct, {p} repeats"));
        }
    }
    Ok(points
        .iter()
        .enumerate()
        .map(|(a, p)| {
            points
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != a)
                .map(|(_, q)| -q / (p - q))
                .product()
        })
        .collect())
}

fn factorial(n: u64) -> Rational {
    (1..=n as i64).map(Rational::from_int).product()
}

fn double_factorial(n: i64) -> Rational {
    (1..=n).rev().step_by(2).map(Rational::from_int).product()
}

/// `C(h, a)` as a falling factorial over `a!`, for any rational `h`.
pub fn binomial(h: &Rational, a: u64) -> Rational {
    let mut acc = Rational::one();
    for j in 0..a as i64 {
        acc = acc * (h - Rational::from_int(j)) / Rational::from_int(j + 1);
    }
    acc
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    if k > MAX_K {
        return Err(Error::SizeGuard(format!("k = {k} exceeds the limit of {MAX_K}")));
    }
    Ok(())
}

fn check_class(k: usize, i: usize) -> Result<()> {
    if i.is_multiple_of(2) || i > 2 * k + 1 {
        return domain(format!("class index must be odd in 1..={}, got {i}", 2 * k + 1));
    }
    Ok(())
}

/// `|M*_i| = C(2k+1, i)² · i! · ((2k-i)!!)²`
pub fn count_cross_class(k: usize, i: usize) -> Result<u64> {
    check_k(k)?;
    check_class(k, i)?;
    let side = 2 * k as u64 + 1;
    let c = binomial(&Rational::from_int(side as i64), i as u64);
    let inner = double_factorial(2 * k as i64 - i as i64);
    let count = &c * &c * factorial(i as u64) * &inner * &inner;
    Ok(count.to_i64().expect("class counts fit for k <= MAX_K") as u64)
}

/// Edge counts of a partial matching inside `V_*`, crossing, inside `V^*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternTriple {
    pub a_star: usize,
    pub a_crossstar: usize,
    pub a_upstar: usize,
}

impl PatternTriple {
    pub fn new(a_star: usize, a_crossstar: usize, a_upstar: usize) -> Self {
        PatternTriple { a_star, a_crossstar, a_upstar }
    }

    pub fn total(&self) -> usize {
        self.a_star + self.a_crossstar + self.a_upstar
    }
}

/// All patterns with `total <= k`, lexicographic.
pub fn patterns(k: usize) -> Vec<PatternTriple> {
    let mut out = Vec::new();
    for a in 0..=k {
        for b in 0..=k - a {
            for c in 0..=k - a - b {
                out.push(PatternTriple::new(a, b, c));
            }
        }
    }
    out
}

/// Number of ways to pick `a` disjoint edges among `m` nodes.
fn partial_matchings(m: u64, a: u64) -> Rational {
    if 2 * a > m {
        return Rational::zero();
    }
    binomial(&Rational::from_int(m as i64), 2 * a) * double_factorial(2 * a as i64 - 1)
}

/// `|Ā|`: matchings on `V_* ∪ V^*` realizing the pattern.
pub fn pattern_class_size(k: usize, p: PatternTriple) -> Rational {
    let side = 2 * k as u64 + 1;
    let (a, b, c) = (p.a_star as u64, p.a_crossstar as u64, p.a_upstar as u64);
    if 2 * a + b > side || 2 * c + b > side {
        return Rational::zero();
    }
    partial_matchings(side, a)
        * partial_matchings(side, c)
        * binomial(&Rational::from_int((side - 2 * a) as i64), b)
        * binomial(&Rational::from_int((side - 2 * c) as i64), b)
        * factorial(b)
}

/// `g_A(i) = |M*_i| / |Ā| · C((2k+1-i)/2, a_*) · C(i, a_**) · C((2k+1-i)/2, a^*)`
pub fn count_containing(k: usize, i: usize, p: PatternTriple) -> Result<Rational> {
    check_k(k)?;
    check_class(k, i)?;
    if p.total() > k {
        return domain(format!("pattern {p:?} has more than k = {k} edges"));
    }
    let count = Rational::from_int(count_cross_class(k, i)? as i64);
    Ok(count * class_polynomial(k, p, &Rational::from_int(i as i64)))
}

/// `g_A(i) / |M*_i|` as a polynomial in `i`, evaluated at `t`.
fn class_polynomial(k: usize, p: PatternTriple, t: &Rational) -> Rational {
    let half = (Rational::from_int(2 * k as i64 + 1) - t) / Rational::from_int(2);
    binomial(&half, p.a_star as u64) * binomial(t, p.a_crossstar as u64) * binomial(&half, p.a_upstar as u64)
        / pattern_class_size(k, p)
}

/// Slack polynomial of `x(E(V_*)) <= k` per class: `f_0(i) = (i-1)/2`.
pub fn slack_polynomial(i: &Rational) -> Rational {
    (i - Rational::one()) / Rational::from_int(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub i: usize,
    pub count: u64,
    pub gamma: Rational,
    pub lambda: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCheck {
    pub a_star: usize,
    pub a_crossstar: usize,
    pub a_upstar: usize,
    pub value: Rational,
    pub pass: bool,
}

/// Outcome of the enumeration over concrete partial matchings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcreteChecks {
    pub matchings_checked: usize,
    pub negative_values: usize,
    /// Concrete containment counts that disagree with the pattern formula.
    pub count_mismatches: usize,
}

impl ConcreteChecks {
    pub fn passed(&self) -> bool {
        self.negative_values == 0 && self.count_mismatches == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCertificate {
    pub k: usize,
    pub n: usize,
    pub slack_scale: Rational,
    pub f0_at_zero: Rational,
    pub rho: Rational,
    pub classes: Vec<ClassEntry>,
    pub patterns: Vec<PatternCheck>,
    pub slack_equation: Rational,
    pub concrete: Option<ConcreteChecks>,
    pub verdict: bool,
}

impl SymmetryCertificate {
    pub fn lambdas(&self) -> Vec<Rational> {
        self.classes.iter().map(|c| c.lambda.clone()).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn build_certificate(k: usize, n: usize) -> Result<SymmetryCertificate> {
    build_certificate_scaled(k, n, &Rational::one())
}

/// Certificate for the slack covector multiplied by `scale > 0`.
pub fn build_certificate_scaled(k: usize, n: usize, scale: &Rational) -> Result<SymmetryCertificate> {
    check_k(k)?;
    if n < 4 * k + 2 {
        return domain(format!("need n >= 4k + 2 = {}, got n = {n}", 4 * k + 2));
    }
    if !scale.is_positive() {
        return domain("slack scale must be positive");
    }
    let indices: Vec<usize> = (1..=2 * k + 1).step_by(2).collect();
    let points: Vec<Rational> = indices.iter().map(|&i| Rational::from_int(i as i64)).collect();
    let gamma = lagrange_at_zero(&points)?;
    let f0_at_zero = scale * slack_polynomial(&Rational::zero());
    let rho = -f0_at_zero.recip();

    let mut classes = Vec::with_capacity(indices.len());
    for (&i, g) in indices.iter().zip(&gamma) {
        let count = count_cross_class(k, i)?;
        let lambda = &rho * g / Rational::from_int(count as i64);
        classes.push(ClassEntry { i, count, gamma: g.clone(), lambda });
    }
    let slack_equation: Rational = classes
        .iter()
        .map(|c| {
            scale * slack_polynomial(&Rational::from_int(c.i as i64)) * Rational::from_int(c.count as i64) * &c.lambda
        })
        .sum();

    let mut checks = Vec::new();
    for p in patterns(k) {
        let mut value = Rational::zero();
        for c in &classes {
            value += count_containing(k, c.i, p)? * &c.lambda;
        }
        let pass = !value.is_negative();
        checks.push(PatternCheck {
            a_star: p.a_star,
            a_crossstar: p.a_crossstar,
            a_upstar: p.a_upstar,
            value,
            pass,
        });
    }

    let concrete = if k <= MAX_CONCRETE_K {
        let lambdas: Vec<Rational> = classes.iter().map(|c| c.lambda.clone()).collect();
        Some(concrete_checks(k, &lambdas)?)
    } else {
        None
    };
    let verdict = slack_equation == -1
        && checks.iter().all(|c| c.pass)
        && concrete.as_ref().is_none_or(ConcreteChecks::passed);
    Ok(SymmetryCertificate {
        k,
        n,
        slack_scale: scale.clone(),
        f0_at_zero,
        rho,
        classes,
        patterns: checks,
        slack_equation,
        concrete,
        verdict,
    })
}

/// Perfect matchings of `K_{4k+2}` and partial matchings with at most `k`
/// edges, as edge bitmasks. Nodes `0..=2k` form `V_*`, the rest `V^*`.
pub(crate) struct MatchingUniverse {
    pub nodes: usize,
    pub side: usize,
    pub perfect: Vec<u128>,
}

impl MatchingUniverse {
    pub fn new(k: usize) -> Self {
        let nodes = 4 * k + 2;
        let mut perfect = Vec::new();
        let mut stack = vec![(0u32, 0u128)];
        while let Some((used, edges)) = stack.pop() {
            let Some(v) = (0..nodes).find(|&v| used & (1 << v) == 0) else {
                perfect.push(edges);
                continue;
            };
            for w in (v + 1..nodes).rev() {
                if used & (1 << w) == 0 {
                    stack.push((used | 1 << v | 1 << w, edges | 1 << Self::edge(nodes, v, w)));
                }
            }
        }
        MatchingUniverse { nodes, side: 2 * k + 1, perfect }
    }

    pub fn edge(nodes: usize, v: usize, w: usize) -> usize {
        let (a, b) = if v < w { (v, w) } else { (w, v) };
        a * (2 * nodes - a - 1) / 2 + (b - a - 1)
    }

    fn is_cross(&self, v: usize, w: usize) -> bool {
        (v < self.side) != (w < self.side)
    }

    pub fn cross_count(&self, m: u128) -> usize {
        let mut count = 0;
        for v in 0..self.nodes {
            for w in v + 1..self.nodes {
                if m & (1 << Self::edge(self.nodes, v, w)) != 0 && self.is_cross(v, w) {
                    count += 1;
                }
            }
        }
        count
    }

    /// All matchings with at most `max` edges, with their patterns.
    pub fn partial(&self, max: usize) -> Vec<(u128, PatternTriple)> {
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u32, 0u128, PatternTriple::new(0, 0, 0))];
        while let Some((from, used, edges, p)) = stack.pop() {
            out.push((edges, p));
            if p.total() == max {
                continue;
            }
            for v in from..self.nodes {
                if used & (1 << v) != 0 {
                    continue;
                }
                for w in v + 1..self.nodes {
                    if used & (1 << w) != 0 {
                        continue;
                    }
                    let mut q = p;
                    match (v < self.side, w < self.side) {
                        (true, true) => q.a_star += 1,
                        (false, false) => q.a_upstar += 1,
                        _ => q.a_crossstar += 1,
                    }
                    stack.push((v + 1, used | 1 << v | 1 << w, edges | 1 << Self::edge(self.nodes, v, w), q));
                }
            }
        }
        out
    }
}

fn concrete_checks(k: usize, lambdas: &[Rational]) -> Result<ConcreteChecks> {
    let universe = MatchingUniverse::new(k);
    let classes: Vec<usize> = universe.perfect.iter().map(|&m| universe.cross_count(m)).collect();
    let partial = universe.partial(k);
    let outcomes: Vec<Result<(bool, bool)>> = partial
        .par_iter()
        .map(|&(a, p)| {
            let mut per_class = vec![0i64; k + 1];
            for (&m, &i) in universe.perfect.iter().zip(&classes) {
                if m & a == a {
                    per_class[(i - 1) / 2] += 1;
                }
            }
            let mut value = Rational::zero();
            let mut mismatch = false;
            for (slot, &hits) in per_class.iter().enumerate() {
                let i = 2 * slot + 1;
                mismatch |= count_containing(k, i, p)? != hits;
                value += Rational::from_int(hits) * &lambdas[slot];
            }
            Ok((value.is_negative(), mismatch))
        })
        .collect();
    let mut report = ConcreteChecks { matchings_checked: partial.len(), negative_values: 0, count_mismatches: 0 };
    for o in outcomes {
        let (negative, mismatch) = o?;
        report.negative_values += usize::from(negative);
        report.count_mismatches += usize::from(mismatch);
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FarkasOutcome {
    /// `λ` with `S λ >= 0` and `slack · λ = -1`.
    Certificate(Vec<Rational>),
    Infeasible,
}

/// Decides `{λ : S λ >= 0, slack · λ = -1}` by LP, minimizing `Σ_j (S λ)_j`.
pub fn farkas_check(section_values: &[Vec<Rational>], slacks: &[Rational]) -> Result<FarkasOutcome> {
    let cols = slacks.len();
    if let Some(row) = section_values.iter().find(|r| r.len() != cols) {
        return domain(format!("section row of length {} for {cols} points", row.len()));
    }
    let mut lp = LinearProgram::new(cols);
    let mut objective = vec![Rational::zero(); cols];
    for row in section_values {
        for (acc, s) in objective.iter_mut().zip(row) {
            *acc += s;
        }
        lp.add_inequality(row.iter().map(|s| -s).collect(), Rational::zero());
    }
    lp.add_equation(slacks.to_vec(), -Rational::one());
    match lp::solve(&lp.with_objective(Sense::Minimize, objective))? {
        LpResult::Optimal(sol) => Ok(FarkasOutcome::Certificate(sol.point)),
        LpResult::Infeasible => Ok(FarkasOutcome::Infeasible),
        LpResult::Unbounded => unreachable!("objective is a nonnegative combination of the rows"),
    }
}

/// Class-averaged section for `k`: one row `g_A(·)` per pattern, slack
/// `f_0(i) · |M*_i|` per class.
pub fn class_surrogate(k: usize) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    check_k(k)?;
    let indices: Vec<usize> = (1..=2 * k + 1).step_by(2).collect();
    let rows = patterns(k)
        .into_iter()
        .map(|p| indices.iter().map(|&i| count_containing(k, i, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let slacks = indices
        .iter()
        .map(|&i| Ok(slack_polynomial(&Rational::from_int(i as i64)) * Rational::from_int(count_cross_class(k, i)? as i64)))
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, slacks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int_vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn lagrange_examples() {
        assert_eq!(lagrange_at_zero(&int_vec(&[1])).unwrap(), int_vec(&[1]));
        assert_eq!(lagrange_at_zero(&int_vec(&[1, 3])).unwrap(), vec![q(3, 2), q(-1, 2)]);
        assert_eq!(lagrange_at_zero(&int_vec(&[1, 3, 5])).unwrap(), vec![q(15, 8), q(-5, 4), q(3, 8)]);
        assert!(lagrange_at_zero(&int_vec(&[1, 2, 1])).is_err());
    }

    #[test]
    fn interpolation_reproduces_value_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for k in 0..=5 {
            let points: Vec<Rational> = (0..=k).map(|j| Rational::from_int(2 * j as i64 + 1)).collect();
            let gamma = lagrange_at_zero(&points).unwrap();
            for _ in 0..20 {
                let coeffs: Vec<Rational> =
                    (0..=k).map(|_| q(rng.gen_range(-20..=20), rng.gen_range(1..=9))).collect();
                let f = |t: &Rational| {
                    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
                };
                let lhs: Rational = points.iter().zip(&gamma).map(|(p, g)| f(p) * g).sum();
                assert_eq!(lhs, f(&Rational::zero()));
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(count_cross_class(1, 1).unwrap(), 9);
        assert_eq!(count_cross_class(1, 3).unwrap(), 6);
        assert_eq!(count_cross_class(2, 5).unwrap(), 120);
        assert!(count_cross_class(1, 2).is_err());
        for k in 1..=MAX_K {
            let total: u64 = (1..=2 * k + 1).step_by(2).map(|i| count_cross_class(k, i).unwrap()).sum();
            assert_eq!(Rational::from_int(total as i64), double_factorial(4 * k as i64 + 1));
        }
    }

    #[test]
    fn class_counts_match_enumeration() {
        for k in 1..=3 {
            let u = MatchingUniverse::new(k);
            assert_eq!(Rational::from_int(u.perfect.len() as i64), double_factorial(4 * k as i64 + 1));
            let mut hist = vec![0u64; 2 * k + 2];
            for &m in &u.perfect {
                hist[u.cross_count(m)] += 1;
            }
            for i in (1..=2 * k + 1).step_by(2) {
                assert_eq!(hist[i], count_cross_class(k, i).unwrap(), "k = {k}, i = {i}");
            }
        }
    }

    #[test]
    fn containing_examples() {
        assert_eq!(count_containing(1, 1, PatternTriple::new(0, 1, 0)).unwrap(), 1);
        assert_eq!(count_containing(1, 3, PatternTriple::new(0, 1, 0)).unwrap(), 2);
        assert_eq!(count_containing(1, 1, PatternTriple::new(1, 0, 0)).unwrap(), 3);
        assert!(count_containing(1, 1, PatternTriple::new(1, 1, 0)).is_err());
    }

    #[test]
    fn pattern_class_sizes_match_enumeration() {
        for k in 1..=2 {
            let u = MatchingUniverse::new(k);
            let partial = u.partial(k);
            for p in patterns(k) {
                let found = partial.iter().filter(|(_, q)| *q == p).count();
                assert_eq!(pattern_class_size(k, p), found as i64, "k = {k}, {p:?}");
            }
        }
    }

    #[test]
    fn certificate_for_k1() {
        let cert = build_certificate(1, 6).unwrap();
        assert_eq!(cert.classes.iter().map(|c| c.count).collect::<Vec<_>>(), vec![9, 6]);
        assert_eq!(cert.lambdas(), vec![q(1, 3), q(-1, 6)]);
        assert_eq!(cert.rho, 2);
        assert_eq!(cert.f0_at_zero, q(-1, 2));
        assert_eq!(cert.slack_equation, -1);
        let value = |p: (usize, usize, usize)| {
            cert.patterns
                .iter()
                .find(|c| (c.a_star, c.a_crossstar, c.a_upstar) == p)
                .unwrap()
                .value
                .clone()
        };
        assert_eq!(value((0, 0, 0)), 2);
        assert_eq!(value((0, 1, 0)), 0);
        let concrete = cert.concrete.as_ref().unwrap();
        assert!(concrete.passed());
        assert!(cert.verdict);
    }

    #[test]
    fn certificates_hold() {
        for k in 1..=3 {
            let cert = build_certificate(k, 4 * k + 2).unwrap();
            assert!(cert.verdict, "k = {k}");
            assert_eq!(cert.concrete.is_some(), k <= MAX_CONCRETE_K);
        }
        assert!(build_certificate(1, 5).is_err());
    }

    #[test]
    fn scaling_keeps_verdict() {
        for scale in [q(1, 3), q(7, 2), q(5, 1)] {
            let cert = build_certificate_scaled(2, 10, &scale).unwrap();
            assert!(cert.verdict);
            assert_eq!(cert.slack_equation, -1);
        }
    }

    #[test]
    fn farkas_examples() {
        let identity = vec![int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0]), int_vec(&[0, 0, 1])];
        assert_eq!(farkas_check(&identity, &int_vec(&[0, 0, 0])).unwrap(), FarkasOutcome::Infeasible);

        let zero = vec![int_vec(&[0, 0, 0]); 2];
        match farkas_check(&zero, &int_vec(&[1, 1, 1])).unwrap() {
            FarkasOutcome::Certificate(l) => assert_eq!(l, int_vec(&[-1, 0, 0])),
            FarkasOutcome::Infeasible => panic!("expected a certificate"),
        }
        assert!(farkas_check(&identity, &int_vec(&[1, 1])).is_err());
    }

    #[test]
    fn farkas_on_class_surrogate_matches_closed_form() {
        let (rows, slacks) = class_surrogate(1).unwrap();
        let cert = build_certificate(1, 6).unwrap();
        match farkas_check(&rows, &slacks).unwrap() {
            FarkasOutcome::Certificate(l) => assert_eq!(l, cert.lambdas()),
            FarkasOutcome::Infeasible => panic!("expected a certificate"),
        }
    }
}
