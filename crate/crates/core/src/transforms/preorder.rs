//! Specialization preorder of a quasi-semi-metric: `x ⪯ y ⟺ d(x,y) = 0`.

use serde::Serialize;

use super::TransformError;
use crate::check::{check_triangle, InequalityType, ToleranceConfig};
use crate::classify::{has_zero_diagonal, is_nonnegative};
use crate::matrix::LabeledMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreorderResult {
    /// Every pair `(x, y)` with `x ⪯ y`, in row-major label order.
    pub relation: Vec<(String, String)>,
    /// Classes of mutually related labels. Classes are ordered by their first
    /// label and members keep the input label order.
    pub classes: Vec<Vec<String>>,
    /// Strict order between classes, as pairs of class representatives
    /// (the first label of each class).
    pub quotient_order: Vec<(String, String)>,
}

/// Computes the specialization preorder, with `d(x,y) ≤ eps_eq` counted as zero.
pub fn specialization_preorder(d: &LabeledMatrix, tol: &ToleranceConfig) -> Result<PreorderResult, TransformError> {
    if !has_zero_diagonal(d, tol) {
        return Err(TransformError::NotQuasiSemiMetric("nonzero diagonal".into()));
    }
    if !is_nonnegative(d, tol) {
        return Err(TransformError::NotQuasiSemiMetric("negative entry".into()));
    }
    if !check_triangle(d, InequalityType::T, tol).passed() {
        return Err(TransformError::NotQuasiSemiMetric(
            "type-t triangle inequality fails".into(),
        ));
    }

    let n = d.size();
    let rel: Vec<bool> = d.as_slice().iter().map(|&v| v <= tol.eps_eq).collect();
    let r = |x: usize, y: usize| rel[x * n + y];

    // Reflexivity follows from the zero diagonal; transitivity can break when
    // tolerances accumulate.
    for x in 0..n {
        for y in 0..n {
            if !r(x, y) {
                continue;
            }
            for z in 0..n {
                if r(y, z) && !r(x, z) {
                    return Err(TransformError::Intransitive {
                        x: d.label(x).to_string(),
                        y: d.label(y).to_string(),
                        z: d.label(z).to_string(),
                    });
                }
            }
        }
    }

    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut classes: Vec<Vec<String>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        let mut members = Vec::new();
        for (y, slot) in class_of.iter_mut().enumerate().skip(x) {
            if *slot == usize::MAX && r(x, y) && r(y, x) {
                *slot = id;
                members.push(d.label(y).to_string());
            }
        }
        classes.push(members);
    }

    let relation = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| r(x, y))
        .map(|(x, y)| (d.label(x).to_string(), d.label(y).to_string()))
        .collect();

    let mut quotient_order = Vec::new();
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            if i != j && r(a, b) {
                quotient_order.push((d.label(a).to_string(), d.label(b).to_string()));
            }
        }
    }

    Ok(PreorderResult {
        relation,
        classes,
        quotient_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn labels_of(v: &[&[&str]]) -> Vec<Vec<String>> {
        v.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect()
    }

    #[test]
    fn duplicated_points_form_a_class() {
        let d = LabeledMatrix::from_labeled_rows(
            vec!["a".into(), "b".into(), "c".into()],
            &[[0., 0., 1.], [0., 0., 1.], [1., 1., 0.]],
        )
        .unwrap();
        let p = specialization_preorder(&d, &tol()).unwrap();
        assert_eq!(p.classes, labels_of(&[&["a", "b"], &["c"]]));
        assert!(p.quotient_order.is_empty());
        assert_eq!(p.relation.len(), 5);
    }

    #[test]
    fn metric_gives_discrete_preorder() {
        let d = LabeledMatrix::from_rows(&[[0., 1., 2.], [1., 0., 1.], [2., 1., 0.]]).unwrap();
        let p = specialization_preorder(&d, &tol()).unwrap();
        assert_eq!(p.classes.len(), 3);
        assert_eq!(p.relation.len(), 3);
        assert!(p.quotient_order.is_empty());
    }

    #[test]
    fn zero_matrix_is_one_class() {
        let p = specialization_preorder(&LabeledMatrix::zeros(4).unwrap(), &tol()).unwrap();
        assert_eq!(p.classes, labels_of(&[&["x1", "x2", "x3", "x4"]]));
        assert_eq!(p.relation.len(), 16);
    }

    #[test]
    fn chain_quotient_order() {
        // x1 ⪯ x2 (d(x1,x2) = 0) but not conversely.
        let d = LabeledMatrix::from_rows(&[[0., 0.], [1., 0.]]).unwrap();
        let p = specialization_preorder(&d, &tol()).unwrap();
        assert_eq!(p.classes.len(), 2);
        assert_eq!(p.quotient_order, vec![("x1".to_string(), "x2".to_string())]);
    }

    #[test]
    fn rejects_non_quasi_semi_metrics() {
        let neg = LabeledMatrix::from_rows(&[[0., -1.], [1., 0.]]).unwrap();
        assert!(matches!(
            specialization_preorder(&neg, &tol()),
            Err(TransformError::NotQuasiSemiMetric(_))
        ));
        let diag = LabeledMatrix::from_rows(&[[1., 1.], [1., 0.]]).unwrap();
        assert!(matches!(
            specialization_preorder(&diag, &tol()),
            Err(TransformError::NotQuasiSemiMetric(_))
        ));
        let tri = LabeledMatrix::from_rows(&[[0., 1., 5.], [1., 0., 1.], [5., 1., 0.]]).unwrap();
        assert!(matches!(
            specialization_preorder(&tri, &tol()),
            Err(TransformError::NotQuasiSemiMetric(_))
        ));
    }

    #[test]
    fn tolerance_induced_intransitivity_is_reported() {
        // d(x1,x2) and d(x2,x3) are within eps of zero, d(x1,x3) is not, but
        // the triangle inequality still holds within eps.
        let t = ToleranceConfig::new(1.0, 1.0, 0.0).unwrap();
        let d = LabeledMatrix::from_rows(&[[0., 1., 2.5], [1., 0., 1.], [2.5, 1., 0.]]).unwrap();
        assert!(matches!(
            specialization_preorder(&d, &t),
            Err(TransformError::Intransitive { .. })
        ));
    }
}
