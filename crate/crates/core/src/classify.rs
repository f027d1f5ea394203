//! Full taxonomy membership for one matrix.

use serde::Serialize;

use crate::check::{
    check_prequadrangle, check_strict, check_triangle, InequalityType, PropertyVerdict, ToleranceConfig,
};
use crate::matrix::LabeledMatrix;
use crate::transforms::potential_of;

/// Verdicts backing the inequality flags of a [`ClassificationReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportVerdicts {
    pub triangle_o: PropertyVerdict,
    pub triangle_i: PropertyVerdict,
    pub triangle_t: PropertyVerdict,
    pub triangle_c: PropertyVerdict,
    pub prequad_o: PropertyVerdict,
    pub prequad_i: PropertyVerdict,
    pub prequad_t: PropertyVerdict,
    pub prequad_c: PropertyVerdict,
    pub strict_t: PropertyVerdict,
}

impl ReportVerdicts {
    pub fn triangle(&self, ty: InequalityType) -> &PropertyVerdict {
        match ty {
            InequalityType::O => &self.triangle_o,
            InequalityType::I => &self.triangle_i,
            InequalityType::T => &self.triangle_t,
            InequalityType::C => &self.triangle_c,
        }
    }

    pub fn prequad(&self, ty: InequalityType) -> &PropertyVerdict {
        match ty {
            InequalityType::O => &self.prequad_o,
            InequalityType::I => &self.prequad_i,
            InequalityType::T => &self.prequad_t,
            InequalityType::C => &self.prequad_c,
        }
    }

    /// `(name, verdict)` pairs in report order.
    pub fn named(&self) -> [(&'static str, &PropertyVerdict); 9] {
        [
            ("triangle_o", &self.triangle_o),
            ("triangle_i", &self.triangle_i),
            ("triangle_t", &self.triangle_t),
            ("triangle_c", &self.triangle_c),
            ("prequad_o", &self.prequad_o),
            ("prequad_i", &self.prequad_i),
            ("prequad_t", &self.prequad_t),
            ("prequad_c", &self.prequad_c),
            ("strict_t", &self.strict_t),
        ]
    }
}

/// Which classes of the taxonomy a matrix belongs to.
///
/// The implication chain
/// `metric ⟹ semi_metric ⟹ quasi_semi_metric ⟹ difference_protometric ⟹ prequad_t`
/// holds by construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub labels: Vec<String>,
    pub symmetric: bool,
    pub nonnegative: bool,
    pub zero_diagonal: bool,
    pub identity_of_indiscernibles: bool,
    pub triangle_o: bool,
    pub triangle_i: bool,
    pub triangle_t: bool,
    pub triangle_c: bool,
    pub prequad_o: bool,
    pub prequad_i: bool,
    pub prequad_t: bool,
    pub prequad_c: bool,
    /// Type-t protometric whose pre-quadrangle inequality is strict on `(x, y, y)`, `x ≠ y`.
    pub strict_protometric: bool,
    /// Type-t protometric with `p(x,y) + p(y,x) − p(x,x) − p(y,y) ≡ 0`.
    pub zero_protometric: bool,
    pub difference_protometric: bool,
    pub quasi_semi_metric: bool,
    pub semi_metric: bool,
    pub metric: bool,
    pub potential_difference: bool,
    pub symmetric_protometric: bool,
    pub weak_partial_pseudo_metric: bool,
    pub verdicts: ReportVerdicts,
}

impl ClassificationReport {
    pub fn triangle(&self, ty: InequalityType) -> bool {
        self.verdicts.triangle(ty).passed()
    }

    pub fn prequad(&self, ty: InequalityType) -> bool {
        self.verdicts.prequad(ty).passed()
    }

    /// `(name, value)` for every boolean flag, in report order.
    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("symmetric", self.symmetric),
            ("nonnegative", self.nonnegative),
            ("zero_diagonal", self.zero_diagonal),
            ("identity_of_indiscernibles", self.identity_of_indiscernibles),
            ("triangle_o", self.triangle_o),
            ("triangle_i", self.triangle_i),
            ("triangle_t", self.triangle_t),
            ("triangle_c", self.triangle_c),
            ("prequad_o", self.prequad_o),
            ("prequad_i", self.prequad_i),
            ("prequad_t", self.prequad_t),
            ("prequad_c", self.prequad_c),
            ("strict_protometric", self.strict_protometric),
            ("zero_protometric", self.zero_protometric),
            ("difference_protometric", self.difference_protometric),
            ("quasi_semi_metric", self.quasi_semi_metric),
            ("semi_metric", self.semi_metric),
            ("metric", self.metric),
            ("potential_difference", self.potential_difference),
            ("symmetric_protometric", self.symmetric_protometric),
            ("weak_partial_pseudo_metric", self.weak_partial_pseudo_metric),
        ]
    }
}

pub fn is_symmetric(m: &LabeledMatrix, tol: &ToleranceConfig) -> bool {
    let n = m.size();
    (0..n).all(|i| (i + 1..n).all(|j| tol.eq(m.get(i, j), m.get(j, i))))
}

pub fn is_nonnegative(m: &LabeledMatrix, tol: &ToleranceConfig) -> bool {
    m.as_slice().iter().all(|&v| tol.geq(v, 0.0))
}

pub fn has_zero_diagonal(m: &LabeledMatrix, tol: &ToleranceConfig) -> bool {
    (0..m.size()).all(|i| tol.eq(m.get(i, i), 0.0))
}

/// `p(x,y) + p(y,x) − p(x,x) − p(y,y) = 0` for every pair, within `eps_eq`.
pub fn satisfies_zero_condition(m: &LabeledMatrix, tol: &ToleranceConfig) -> bool {
    let n = m.size();
    (0..n).all(|i| (i + 1..n).all(|j| tol.eq(zero_residual(m, i, j), 0.0)))
}

#[inline]
pub(crate) fn zero_residual(m: &LabeledMatrix, i: usize, j: usize) -> f64 {
    (m.get(i, j) + m.get(j, i)) - (m.get(i, i) + m.get(j, j))
}

/// Classifies `m` against every class of the taxonomy.
pub fn classify(m: &LabeledMatrix, tol: &ToleranceConfig) -> ClassificationReport {
    use InequalityType::*;
    let n = m.size();
    let verdicts = ReportVerdicts {
        triangle_o: check_triangle(m, O, tol),
        triangle_i: check_triangle(m, I, tol),
        triangle_t: check_triangle(m, T, tol),
        triangle_c: check_triangle(m, C, tol),
        prequad_o: check_prequadrangle(m, O, tol),
        prequad_i: check_prequadrangle(m, I, tol),
        prequad_t: check_prequadrangle(m, T, tol),
        prequad_c: check_prequadrangle(m, C, tol),
        strict_t: check_strict(m, T, tol),
    };

    let symmetric = is_symmetric(m, tol);
    let nonnegative = is_nonnegative(m, tol);
    let zero_diagonal = has_zero_diagonal(m, tol);
    let off_diagonal_separated = (0..n).all(|i| (0..n).all(|j| i == j || m.get(i, j).abs() > tol.eps_strict));
    let identity_of_indiscernibles = zero_diagonal && off_diagonal_separated;

    let prequad_t = verdicts.prequad_t.passed();
    let all_prequad = InequalityType::ALL.iter().all(|&ty| verdicts.prequad(ty).passed());
    let difference_protometric = prequad_t && zero_diagonal;
    let quasi_semi_metric = difference_protometric && nonnegative;
    let semi_metric = quasi_semi_metric && symmetric;
    let metric = semi_metric && identity_of_indiscernibles;
    let symmetric_protometric = all_prequad && symmetric;
    let nonnegative_diagonal = (0..n).all(|i| tol.geq(m.get(i, i), 0.0));

    ClassificationReport {
        labels: m.labels().to_vec(),
        symmetric,
        nonnegative,
        zero_diagonal,
        identity_of_indiscernibles,
        triangle_o: verdicts.triangle_o.passed(),
        triangle_i: verdicts.triangle_i.passed(),
        triangle_t: verdicts.triangle_t.passed(),
        triangle_c: verdicts.triangle_c.passed(),
        prequad_o: verdicts.prequad_o.passed(),
        prequad_i: verdicts.prequad_i.passed(),
        prequad_t,
        prequad_c: verdicts.prequad_c.passed(),
        strict_protometric: prequad_t && verdicts.strict_t.passed(),
        zero_protometric: prequad_t && satisfies_zero_condition(m, tol),
        difference_protometric,
        quasi_semi_metric,
        semi_metric,
        metric,
        potential_difference: potential_of(m, tol).is_ok(),
        symmetric_protometric,
        weak_partial_pseudo_metric: symmetric_protometric && nonnegative_diagonal,
        verdicts,
    }
}
