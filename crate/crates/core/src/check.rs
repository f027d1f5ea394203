//! Exhaustive inequality checkers.
//!
//! Every checker walks all ordered triples `(x, y, z) ∈ X³` in row-major
//! order, degenerate triples included, and returns a [`PropertyVerdict`].
//! There are no shortcuts: the loops are the oracle.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::matrix::LabeledMatrix;

pub const DEFAULT_EPS: f64 = 1e-9;
pub const DEFAULT_MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToleranceError {
    #[error("tolerance `{name}` must be finite and nonnegative, got {value}")]
    Invalid { name: &'static str, value: f64 },
}

/// Absolute tolerances used by every judgment.
///
/// * `a ≥ b` passes iff `a ≥ b − eps_ineq`
/// * `a = b` passes iff `|a − b| ≤ eps_eq`
/// * `a > b` passes iff `a − b > eps_strict`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub eps_ineq: f64,
    pub eps_eq: f64,
    pub eps_strict: f64,
    /// How many violation witnesses a verdict keeps.
    pub max_witnesses: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_ineq: DEFAULT_EPS,
            eps_eq: DEFAULT_EPS,
            eps_strict: DEFAULT_EPS,
            max_witnesses: DEFAULT_MAX_WITNESSES,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eps_ineq: f64, eps_eq: f64, eps_strict: f64) -> Result<Self, ToleranceError> {
        for (name, value) in [("eps_ineq", eps_ineq), ("eps_eq", eps_eq), ("eps_strict", eps_strict)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(ToleranceError::Invalid { name, value });
            }
        }
        Ok(ToleranceConfig {
            eps_ineq,
            eps_eq,
            eps_strict,
            max_witnesses: DEFAULT_MAX_WITNESSES,
        })
    }

    /// Witness cap, at least one so that a failing verdict always carries a witness.
    pub fn with_max_witnesses(mut self, k: usize) -> Self {
        self.max_witnesses = k.max(1);
        self
    }

    #[inline]
    pub fn geq(&self, a: f64, b: f64) -> bool {
        a >= b - self.eps_ineq
    }

    #[inline]
    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.eps_eq
    }

    #[inline]
    pub fn gt(&self, a: f64, b: f64) -> bool {
        a - b > self.eps_strict
    }
}

/// Orientation of a triangle or pre-quadrangle inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityType {
    /// Outgoing: `d(x,y) + d(x,z) ≥ d(y,z)`.
    O,
    /// Incoming: `d(y,x) + d(z,x) ≥ d(y,z)`.
    I,
    /// Transitive: `d(y,x) + d(x,z) ≥ d(y,z)`.
    T,
    /// Cyclic: `d(z,x) + d(x,y) ≥ d(y,z)`.
    C,
}

impl InequalityType {
    pub const ALL: [InequalityType; 4] = [
        InequalityType::O,
        InequalityType::I,
        InequalityType::T,
        InequalityType::C,
    ];

    pub fn letter(self) -> char {
        match self {
            InequalityType::O => 'o',
            InequalityType::I => 'i',
            InequalityType::T => 't',
            InequalityType::C => 'c',
        }
    }

    /// Index pairs of the two left-hand terms for triple `(x, y, z)`.
    #[inline]
    pub fn lhs_entries(self, x: usize, y: usize, z: usize) -> [(usize, usize); 2] {
        match self {
            InequalityType::O => [(x, y), (x, z)],
            InequalityType::I => [(y, x), (z, x)],
            InequalityType::T => [(y, x), (x, z)],
            InequalityType::C => [(z, x), (x, y)],
        }
    }

    /// Type whose inequality for `Mᵀ` is this type's inequality for `M`.
    pub fn transposed(self) -> Self {
        match self {
            InequalityType::O => InequalityType::I,
            InequalityType::I => InequalityType::O,
            t => t,
        }
    }
}

impl fmt::Display for InequalityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown inequality type `{0}` (expected one of o, i, t, c)")]
pub struct ParseTypeError(pub String);

impl FromStr for InequalityType {
    type Err = ParseTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "o" | "O" => Ok(InequalityType::O),
            "i" | "I" => Ok(InequalityType::I),
            "t" | "T" => Ok(InequalityType::T),
            "c" | "C" => Ok(InequalityType::C),
            other => Err(ParseTypeError(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

/// One violated instance. Inequalities are oriented as `lhs ≥ rhs`, so
/// `deficit = rhs − lhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationWitness {
    pub x: String,
    pub y: String,
    pub z: String,
    pub lhs: f64,
    pub rhs: f64,
    pub deficit: f64,
    #[serde(skip)]
    pub indices: [usize; 3],
}

pub(crate) fn serialize_finite_or_null<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

/// Outcome of one exhaustive check.
///
/// `min_slack` is `+∞` when nothing was checked (for example the strictness
/// check on a one-point space).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyVerdict {
    pub status: Status,
    #[serde(serialize_with = "serialize_finite_or_null")]
    pub min_slack: f64,
    pub count_checked: usize,
    pub violation_count: usize,
    pub witnesses: Vec<ViolationWitness>,
}

impl PropertyVerdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn not_applicable() -> Self {
        PropertyVerdict {
            status: Status::NotApplicable,
            min_slack: f64::INFINITY,
            count_checked: 0,
            violation_count: 0,
            witnesses: Vec::new(),
        }
    }
}

struct VerdictBuilder<'a> {
    m: &'a LabeledMatrix,
    cap: usize,
    min_slack: f64,
    checked: usize,
    violations: usize,
    witnesses: Vec<ViolationWitness>,
}

impl<'a> VerdictBuilder<'a> {
    fn new(m: &'a LabeledMatrix, tol: &ToleranceConfig) -> Self {
        VerdictBuilder {
            m,
            cap: tol.max_witnesses,
            min_slack: f64::INFINITY,
            checked: 0,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    #[inline]
    fn record(&mut self, (x, y, z): (usize, usize, usize), lhs: f64, rhs: f64, slack: f64, ok: bool) {
        self.checked += 1;
        if slack < self.min_slack {
            self.min_slack = slack;
        }
        if !ok {
            self.violations += 1;
            if self.witnesses.len() < self.cap {
                self.witnesses.push(ViolationWitness {
                    x: self.m.label(x).to_string(),
                    y: self.m.label(y).to_string(),
                    z: self.m.label(z).to_string(),
                    lhs,
                    rhs,
                    deficit: rhs - lhs,
                    indices: [x, y, z],
                });
            }
        }
    }

    fn finish(self) -> PropertyVerdict {
        PropertyVerdict {
            status: if self.violations == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            min_slack: self.min_slack,
            count_checked: self.checked,
            violation_count: self.violations,
            witnesses: self.witnesses,
        }
    }
}

/// Left and right side of the type-`ty` triangle inequality at `(x, y, z)`.
#[inline]
pub fn triangle_sides(m: &LabeledMatrix, ty: InequalityType, x: usize, y: usize, z: usize) -> (f64, f64) {
    let [a, b] = ty.lhs_entries(x, y, z);
    (m.get(a.0, a.1) + m.get(b.0, b.1), m.get(y, z))
}

/// Left and right side of the type-`ty` pre-quadrangle inequality at `(x, y, z)`.
#[inline]
pub fn prequadrangle_sides(m: &LabeledMatrix, ty: InequalityType, x: usize, y: usize, z: usize) -> (f64, f64) {
    let [a, b] = ty.lhs_entries(x, y, z);
    (m.get(a.0, a.1) + m.get(b.0, b.1), m.get(y, z) + m.get(x, x))
}

fn check_all_triples<F>(m: &LabeledMatrix, tol: &ToleranceConfig, sides: F) -> PropertyVerdict
where
    F: Fn(usize, usize, usize) -> (f64, f64),
{
    let n = m.size();
    let mut b = VerdictBuilder::new(m, tol);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (lhs, rhs) = sides(x, y, z);
                b.record((x, y, z), lhs, rhs, lhs - rhs, tol.geq(lhs, rhs));
            }
        }
    }
    b.finish()
}

/// Triangle inequality of type `ty` over all ordered triples.
pub fn check_triangle(m: &LabeledMatrix, ty: InequalityType, tol: &ToleranceConfig) -> PropertyVerdict {
    check_all_triples(m, tol, |x, y, z| triangle_sides(m, ty, x, y, z))
}

/// Pre-quadrangle inequality of type `ty` over all ordered triples. A pass
/// certifies `m` as a protometric of that type.
pub fn check_prequadrangle(m: &LabeledMatrix, ty: InequalityType, tol: &ToleranceConfig) -> PropertyVerdict {
    check_all_triples(m, tol, |x, y, z| prequadrangle_sides(m, ty, x, y, z))
}

/// Strictness of the type-`ty` pre-quadrangle inequality on the degenerate
/// triples `(x, y, y)` with `x ≠ y`: passes iff `lhs − rhs > eps_strict`.
///
/// Witnesses record instances that are not strict; their deficit can be
/// zero or slightly negative.
pub fn check_strict(m: &LabeledMatrix, ty: InequalityType, tol: &ToleranceConfig) -> PropertyVerdict {
    let n = m.size();
    let mut b = VerdictBuilder::new(m, tol);
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let (lhs, rhs) = prequadrangle_sides(m, ty, x, y, y);
            b.record((x, y, y), lhs, rhs, lhs - rhs, tol.gt(lhs, rhs));
        }
    }
    b.finish()
}

/// How [`check_transition`] treats nonpositive entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransitionMode {
    /// Check the product inequality on any entries.
    #[default]
    Plain,
    /// Report `NOT_APPLICABLE` when an entry is `≤ 0`, since `−ln s` is then
    /// undefined.
    LogCompatible,
}

/// Transition inequality `s(y,x)·s(x,z) ≤ s(y,z)·s(x,x)` over all triples.
///
/// An instance passes iff `s(y,x)s(x,z) ≤ s(y,z)s(x,x) + eps·(1 + |s(y,z)s(x,x)|)`.
/// Witnesses are oriented as `lhs = s(y,z)s(x,x) ≥ rhs = s(y,x)s(x,z)` and
/// `min_slack` is `(lhs − rhs) / (1 + |lhs|)`, so `min_slack ≥ −eps_ineq`
/// exactly when the check passes.
pub fn check_transition(m: &LabeledMatrix, tol: &ToleranceConfig, mode: TransitionMode) -> PropertyVerdict {
    if mode == TransitionMode::LogCompatible && m.as_slice().iter().any(|&v| v <= 0.0) {
        return PropertyVerdict::not_applicable();
    }
    let n = m.size();
    let mut b = VerdictBuilder::new(m, tol);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let big = m.get(y, z) * m.get(x, x);
                let small = m.get(y, x) * m.get(x, z);
                let slack = (big - small) / (1.0 + big.abs());
                b.record((x, y, z), big, small, slack, slack >= -tol.eps_ineq);
            }
        }
    }
    b.finish()
}

/// Closed interval `[lo, hi]`; `nonempty` allows `eps_eq` of overlap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub nonempty: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, tol: &ToleranceConfig) -> Self {
        Interval {
            lo,
            hi,
            nonempty: lo <= hi + tol.eps_eq,
        }
    }

    pub fn contains(&self, v: f64, tol: &ToleranceConfig) -> bool {
        v >= self.lo - tol.eps_eq && v <= self.hi + tol.eps_eq
    }
}

/// Bracket for a diagonal entry implied by a triangle inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalBound {
    pub label: String,
    pub value: f64,
    pub interval: Interval,
    pub member: bool,
}

/// For each `x`, the interval that must contain `d(x,x)` whenever `d`
/// satisfies the type-`ty` triangle inequality. Ranges over all `y`
/// including `y = x`.
///
/// | type | lower | upper |
/// |------|-------|-------|
/// | o | `max_y (d(y,x) − d(x,y))` | `2 min_y d(y,x)` |
/// | i | `max_y (d(x,y) − d(y,x))` | `2 min_y d(x,y)` |
/// | t | `0` | `min_y (d(x,y) + d(y,x))` |
/// | c | `max_y abs(d(x,y) − d(y,x))` | `min_y (d(x,y) + d(y,x))` |
pub fn diagonal_bounds(m: &LabeledMatrix, ty: InequalityType, tol: &ToleranceConfig) -> Vec<DiagonalBound> {
    let n = m.size();
    (0..n)
        .map(|x| {
            let ys = 0..n;
            let (lo, hi) = match ty {
                InequalityType::O => (
                    ys.clone()
                        .map(|y| m.get(y, x) - m.get(x, y))
                        .fold(f64::NEG_INFINITY, f64::max),
                    2.0 * ys.map(|y| m.get(y, x)).fold(f64::INFINITY, f64::min),
                ),
                InequalityType::I => (
                    ys.clone()
                        .map(|y| m.get(x, y) - m.get(y, x))
                        .fold(f64::NEG_INFINITY, f64::max),
                    2.0 * ys.map(|y| m.get(x, y)).fold(f64::INFINITY, f64::min),
                ),
                InequalityType::T => (0.0, ys.map(|y| m.get(x, y) + m.get(y, x)).fold(f64::INFINITY, f64::min)),
                InequalityType::C => (
                    ys.clone()
                        .map(|y| (m.get(x, y) - m.get(y, x)).abs())
                        .fold(f64::NEG_INFINITY, f64::max),
                    ys.map(|y| m.get(x, y) + m.get(y, x)).fold(f64::INFINITY, f64::min),
                ),
            };
            let interval = Interval::new(lo, hi, tol);
            let value = m.get(x, x);
            DiagonalBound {
                label: m.label(x).to_string(),
                value,
                interval,
                member: interval.contains(value, tol),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use InequalityType::*;

    fn m(rows: &[&[f64]]) -> LabeledMatrix {
        LabeledMatrix::from_rows(rows).unwrap()
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn path_metric() -> LabeledMatrix {
        m(&[&[0., 1., 2.], &[1., 0., 1.], &[2., 1., 0.]])
    }

    fn potential_013() -> LabeledMatrix {
        m(&[&[0., -1., -3.], &[1., 0., -2.], &[3., 2., 0.]])
    }

    /// Independent restatement of the four triangle formulas on plain arrays.
    fn brute_triangle(d: &[Vec<f64>], ty: InequalityType) -> (bool, f64) {
        let n = d.len();
        let mut ok = true;
        let mut min = f64::INFINITY;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = match ty {
                        O => d[x][y] + d[x][z],
                        I => d[y][x] + d[z][x],
                        T => d[y][x] + d[x][z],
                        C => d[z][x] + d[x][y],
                    };
                    let s = lhs - d[y][z];
                    min = min.min(s);
                    ok &= s >= -1e-9;
                }
            }
        }
        (ok, min)
    }

    #[test]
    fn zero_matrix_triangle_t() {
        let v = check_triangle(&LabeledMatrix::zeros(3).unwrap(), T, &tol());
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.min_slack, 0.0);
        assert_eq!(v.count_checked, 27);
        assert!(v.witnesses.is_empty());
    }

    #[test]
    fn path_metric_passes_every_type() {
        let p = path_metric();
        for ty in InequalityType::ALL {
            let v = check_triangle(&p, ty, &tol());
            let (ok, min) = brute_triangle(&p.rows(), ty);
            assert!(ok);
            assert_eq!(v.status, Status::Pass, "type {ty}");
            assert_eq!(v.min_slack, min);
            assert_eq!(v.min_slack, 0.0);
        }
    }

    #[test]
    fn potential_difference_passes_t_fails_o() {
        let d = potential_013();
        let t = check_triangle(&d, T, &tol());
        assert_eq!(t.status, Status::Pass);
        assert_eq!(t.min_slack, 0.0);
        let (ok, min) = brute_triangle(&d.rows(), T);
        assert!(ok && min == 0.0);

        let o = check_triangle(&d, O, &tol());
        assert_eq!(o.status, Status::Fail);
        let (ok, min) = brute_triangle(&d.rows(), O);
        assert!(!ok);
        assert_eq!(o.min_slack, min);
        // (x1, x3, x3): d(1,3) + d(1,3) = -6 < d(3,3) = 0
        let w = o
            .witnesses
            .iter()
            .find(|w| w.indices == [0, 2, 2])
            .expect("witness (x1, x3, x3) kept");
        assert_eq!((w.lhs, w.rhs, w.deficit), (-6.0, 0.0, 6.0));
        assert_eq!((w.x.as_str(), w.y.as_str(), w.z.as_str()), ("x1", "x3", "x3"));
    }

    #[test]
    fn witnesses_are_capped_in_row_major_order() {
        let d = m(&[&[-1., -1.], &[-1., -1.]]);
        let v = check_triangle(&d, O, &tol().with_max_witnesses(3));
        assert_eq!(v.violation_count, 8);
        assert_eq!(v.witnesses.len(), 3);
        let idx: Vec<_> = v.witnesses.iter().map(|w| w.indices).collect();
        assert_eq!(idx, vec![[0, 0, 0], [0, 0, 1], [0, 1, 0]]);
    }

    #[test]
    fn prequadrangle_examples() {
        let f = [1., 2., 3.];
        let sum = LabeledMatrix::from_fn(crate::matrix::default_labels(3), |i, j| f[i] + f[j]).unwrap();
        let constant = LabeledMatrix::constant(crate::matrix::default_labels(3), 5.0).unwrap();
        for ty in InequalityType::ALL {
            for p in [&sum, &constant] {
                let v = check_prequadrangle(p, ty, &tol());
                assert_eq!(v.status, Status::Pass);
                assert_eq!(v.min_slack, 0.0);
            }
            assert!(check_prequadrangle(&path_metric(), ty, &tol()).passed());
        }
    }

    #[test]
    fn prequadrangle_failure_witness() {
        let p = m(&[&[0., 1.], &[5., 0.]]);
        let v = check_prequadrangle(&p, O, &tol());
        assert_eq!(v.status, Status::Fail);
        // (x,y,z) = (0,1,0): p(0,1) + p(0,0) = 1 < p(1,0) + p(0,0) = 5
        assert_eq!(v.witnesses[0].indices, [0, 1, 0]);
        assert_eq!(v.witnesses[0].deficit, 4.0);
    }

    #[test]
    fn strict_examples() {
        assert!(check_strict(&m(&[&[0., 1.], &[1., 0.]]), T, &tol()).passed());
        let z = check_strict(&LabeledMatrix::zeros(2).unwrap(), T, &tol());
        assert_eq!(z.status, Status::Fail);
        assert_eq!(z.count_checked, 2);
        assert_eq!(z.witnesses[0].deficit, 0.0);
        let p = check_strict(&m(&[&[1., 3.], &[3., 2.]]), T, &tol());
        assert!(p.passed());
        assert_eq!(p.min_slack, 3.0);
        let one = check_strict(&m(&[&[4.]]), T, &tol());
        assert!(one.passed());
        assert_eq!(one.count_checked, 0);
        assert!(one.min_slack.is_infinite());
    }

    #[test]
    fn diagonal_bound_examples() {
        let two = m(&[&[0., 1.], &[1., 0.]]);
        for b in diagonal_bounds(&two, T, &tol()) {
            assert_eq!((b.interval.lo, b.interval.hi), (0.0, 0.0));
            assert!(b.member && b.interval.nonempty);
        }
        let z = LabeledMatrix::zeros(3).unwrap();
        for ty in InequalityType::ALL {
            for b in diagonal_bounds(&z, ty, &tol()) {
                assert_eq!((b.interval.lo, b.interval.hi), (0.0, 0.0));
                assert!(b.member);
            }
        }
        for b in diagonal_bounds(&potential_013(), T, &tol()) {
            assert_eq!((b.interval.lo, b.interval.hi), (0.0, 0.0));
            assert!(b.member);
        }
    }

    #[test]
    fn diagonal_bounds_report_non_membership() {
        // Negative diagonal: outside [0, ...] for type t.
        let d = m(&[&[-1., 2.], &[2., 0.]]);
        let b = diagonal_bounds(&d, T, &tol());
        assert!(!b[0].member);
        assert!(b[1].member);
        // Type o upper bound 2·min_y d(y,x) is negative here: empty interval.
        let e = m(&[&[0., 1.], &[-1., 0.]]);
        let b = diagonal_bounds(&e, O, &tol());
        assert_eq!((b[0].interval.lo, b[0].interval.hi), (0.0, -2.0));
        assert!(!b[0].interval.nonempty && !b[0].member);
    }

    #[test]
    fn transition_examples() {
        let ones = LabeledMatrix::constant(crate::matrix::default_labels(3), 1.0).unwrap();
        let v = check_transition(&ones, &tol(), TransitionMode::Plain);
        assert!(v.passed());
        assert_eq!(v.min_slack, 0.0);

        let f = [0.0_f64, 1., 2.];
        let s = LabeledMatrix::from_fn(crate::matrix::default_labels(3), |i, j| (-(f[i] + f[j])).exp()).unwrap();
        let v = check_transition(&s, &tol(), TransitionMode::LogCompatible);
        assert!(v.passed());
        assert!(v.min_slack.abs() < 1e-15);

        let s = path_metric().map(|v| (-v).exp()).unwrap();
        assert!(check_transition(&s, &tol(), TransitionMode::Plain).passed());
    }

    #[test]
    fn transition_not_applicable_on_nonpositive() {
        let s = m(&[&[1., 0.], &[0.5, 1.]]);
        assert_eq!(
            check_transition(&s, &tol(), TransitionMode::LogCompatible).status,
            Status::NotApplicable
        );
        assert_ne!(
            check_transition(&s, &tol(), TransitionMode::Plain).status,
            Status::NotApplicable
        );
    }

    #[test]
    fn transition_failure() {
        // s(1,0)·s(0,1) = 4 > s(1,1)·s(0,0) = 1
        let s = m(&[&[1., 2.], &[2., 1.]]);
        let v = check_transition(&s, &tol(), TransitionMode::LogCompatible);
        assert_eq!(v.status, Status::Fail);
        let w = &v.witnesses[0];
        assert_eq!(w.indices, [0, 1, 1]);
        assert_eq!((w.lhs, w.rhs), (1.0, 4.0));
    }

    #[test]
    fn tolerance_validation_and_semantics() {
        assert!(ToleranceConfig::new(-1.0, 0.0, 0.0).is_err());
        assert!(ToleranceConfig::new(0.0, f64::NAN, 0.0).is_err());
        let t = ToleranceConfig::new(0.1, 0.1, 0.1).unwrap();
        assert!(t.geq(0.95, 1.0));
        assert!(!t.geq(0.85, 1.0));
        assert!(t.eq(1.05, 1.0));
        assert!(!t.gt(1.05, 1.0));
        assert!(t.gt(1.2, 1.0));
    }

    #[test]
    fn type_parsing() {
        assert_eq!("t".parse::<InequalityType>().unwrap(), T);
        assert!("x".parse::<InequalityType>().is_err());
        for ty in InequalityType::ALL {
            assert_eq!(ty.to_string().parse::<InequalityType>().unwrap(), ty);
            assert_eq!(ty.transposed().transposed(), ty);
        }
    }
}
