//! Maps between protometrics, difference protometrics, metrics, similarities
//! and potentials.
//!
//! Operations that have a precondition check it with the exhaustive
//! checkers and return the failing verdict instead of producing output
//! outside the target class.

mod preorder;
mod similarity;

pub use preorder::{specialization_preorder, PreorderResult};
pub use similarity::{farris_transform, gromov_product, log_transform, min_farris_constant};

use thiserror::Error;

use crate::check::{check_prequadrangle, InequalityType, PropertyVerdict, ToleranceConfig};
use crate::classify::zero_residual;
use crate::matrix::{LabelFunction, LabeledMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("scale factor alpha must be finite and positive, got {0}")]
    InvalidAlpha(f64),
    #[error("constant must be finite, got {0}")]
    InvalidConstant(f64),
    #[error("input is not a protometric (type-t pre-quadrangle inequality fails)")]
    NotProtometric(Box<PropertyVerdict>),
    #[error("input is not a difference protometric: diagonal entry at `{label}` is {value}")]
    NonZeroDiagonal { label: String, value: f64 },
    #[error("zero-protometric condition fails at ({x}, {y}): p(x,y)+p(y,x)-p(x,x)-p(y,y) = {residual}")]
    ZeroConditionFailed { x: String, y: String, residual: f64 },
    #[error("matrix is not of the separable form a(x)+b(y): residual {residual} at ({x}, {y})")]
    NotSeparable { x: String, y: String, residual: f64 },
    #[error("not a potential difference: residual {residual} at ({x}, {y})")]
    NotPotentialDifference { x: String, y: String, residual: f64 },
    #[error("input is not a quasi-semi-metric: {0}")]
    NotQuasiSemiMetric(String),
    #[error("input is not a metric: {0}")]
    NotMetric(String),
    #[error("zero relation is not transitive at ({x}, {y}, {z}) under the current tolerance")]
    Intransitive { x: String, y: String, z: String },
    #[error("entry ({x}, {y}) = {value} is not strictly positive")]
    NonPositive { x: String, y: String, value: f64 },
}

/// A protometric split into its difference protometric and diagonal gauge.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// Zero-diagonal part, `d(x,y) = 2p(x,y) − p(x,x) − p(y,y)`.
    pub d: LabeledMatrix,
    /// Diagonal gauge, `f(x) = p(x,x)`.
    pub f: LabelFunction,
}

/// Coefficients of a 0-protometric in the basis `q′_u(x,y) = 1[x=u]`,
/// `q″_u(x,y) = 1[y=u]`, gauge-fixed by `b(reference) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCoordinates {
    pub reference: String,
    pub a: LabelFunction,
    pub b: LabelFunction,
}

fn require_protometric(p: &LabeledMatrix, tol: &ToleranceConfig) -> Result<(), TransformError> {
    let v = check_prequadrangle(p, InequalityType::T, tol);
    if v.passed() {
        Ok(())
    } else {
        Err(TransformError::NotProtometric(Box::new(v)))
    }
}

fn require_zero_diagonal(d: &LabeledMatrix, tol: &ToleranceConfig) -> Result<(), TransformError> {
    match (0..d.size()).find(|&i| !tol.eq(d.get(i, i), 0.0)) {
        Some(i) => Err(TransformError::NonZeroDiagonal {
            label: d.label(i).to_string(),
            value: d.get(i, i),
        }),
        None => Ok(()),
    }
}

fn check_alpha(alpha: f64) -> Result<(), TransformError> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(TransformError::InvalidAlpha(alpha))
    }
}

/// `p′(x,y) = p(y,x)`.
pub fn transpose(m: &LabeledMatrix) -> LabeledMatrix {
    LabeledMatrix::from_fn(m.labels().to_vec(), |i, j| m.get(j, i)).expect("transpose of a valid matrix is valid")
}

/// Entrywise sum. Label sets must agree; the result follows the label order
/// of `a`.
pub fn add(a: &LabeledMatrix, b: &LabeledMatrix) -> Result<LabeledMatrix, TransformError> {
    let idx = a.alignment_with(b)?;
    Ok(LabeledMatrix::from_fn(a.labels().to_vec(), |i, j| {
        a.get(i, j) + b.get(idx[i], idx[j])
    })?)
}

/// `p′(x,y) = α·p(x,y) + f(x) + f(y)` with `α > 0`.
pub fn affine_gauge(p: &LabeledMatrix, alpha: f64, f: &LabelFunction) -> Result<LabeledMatrix, TransformError> {
    check_alpha(alpha)?;
    let fv = f.aligned_to(p.labels())?;
    Ok(LabeledMatrix::from_fn(p.labels().to_vec(), |i, j| {
        alpha * p.get(i, j) + fv[i] + fv[j]
    })?)
}

/// The gauge `f(x) = −(α/2)·p(x,x)`, which makes [`affine_gauge`] cancel the
/// diagonal exactly.
pub fn diagonal_cancelling_gauge(p: &LabeledMatrix, alpha: f64) -> Result<LabelFunction, TransformError> {
    check_alpha(alpha)?;
    let half = alpha / 2.0;
    Ok(LabelFunction::on(
        p,
        p.diagonal().iter().map(|&v| -(half * v)).collect(),
    )?)
}

/// `d(x,y) = α·(p(x,y) + p(y,x) − p(x,x) − p(y,y))` for a protometric `p`.
///
/// The result is symmetric with zero diagonal, nonnegative and satisfies the
/// triangle inequality; it is a metric when `p` is strict.
pub fn metrize(p: &LabeledMatrix, alpha: f64, tol: &ToleranceConfig) -> Result<LabeledMatrix, TransformError> {
    check_alpha(alpha)?;
    require_protometric(p, tol)?;
    Ok(LabeledMatrix::from_fn(p.labels().to_vec(), |i, j| {
        alpha * zero_residual(p, i, j)
    })?)
}

/// `p(x,y) = ½(d(x,y) + f(x) + f(y))` for a difference protometric `d`.
pub fn compose(d: &LabeledMatrix, f: &LabelFunction, tol: &ToleranceConfig) -> Result<LabeledMatrix, TransformError> {
    let fv = f.aligned_to(d.labels())?;
    require_zero_diagonal(d, tol)?;
    require_protometric(d, tol)?;
    Ok(LabeledMatrix::from_fn(d.labels().to_vec(), |i, j| {
        0.5 * (d.get(i, j) + (fv[i] + fv[j]))
    })?)
}

/// Inverse of [`compose`]: `f(x) = p(x,x)`, `d(x,y) = 2p(x,y) − p(x,x) − p(y,y)`.
pub fn decompose(p: &LabeledMatrix, tol: &ToleranceConfig) -> Result<Decomposition, TransformError> {
    require_protometric(p, tol)?;
    let diag = p.diagonal();
    let d = LabeledMatrix::from_fn(p.labels().to_vec(), |i, j| 2.0 * p.get(i, j) - (diag[i] + diag[j]))?;
    Ok(Decomposition {
        d,
        f: LabelFunction::on(p, diag)?,
    })
}

/// The basis 0-protometrics `(q′_u, q″_u)` for label index `u`.
pub fn zero_basis(labels: &[String], u: usize) -> (LabeledMatrix, LabeledMatrix) {
    let ind = |b: bool| if b { 1.0 } else { 0.0 };
    let q1 = LabeledMatrix::from_fn(labels.to_vec(), |x, _| ind(x == u)).expect("indicator matrix");
    let q2 = LabeledMatrix::from_fn(labels.to_vec(), |_, y| ind(y == u)).expect("indicator matrix");
    (q1, q2)
}

/// Rebuilds a symmetric protometric from its decomposition through the
/// basis expansion `½(d + Σ_u f(u)(q′_u + q″_u))`.
pub fn symmetric_representation(dec: &Decomposition) -> Result<LabeledMatrix, TransformError> {
    let labels = dec.d.labels();
    let f = dec.f.aligned_to(labels)?;
    let n = labels.len();
    let mut acc = vec![0.0; n * n];
    for (u, &fu) in f.iter().enumerate() {
        let (q1, q2) = zero_basis(labels, u);
        for (k, slot) in acc.iter_mut().enumerate() {
            *slot += fu * (q1.as_slice()[k] + q2.as_slice()[k]);
        }
    }
    let out: Vec<f64> = dec
        .d
        .as_slice()
        .iter()
        .zip(&acc)
        .map(|(&d, &s)| 0.5 * (d + s))
        .collect();
    Ok(LabeledMatrix::new(labels.to_vec(), out)?)
}

/// Coordinates of a 0-protometric: `a(x) = p(x, r)`, `b(y) = p(r, y) − p(r, r)`
/// with `r` the first label, verified against every pair.
pub fn zero_coordinates(p: &LabeledMatrix, tol: &ToleranceConfig) -> Result<ZeroCoordinates, TransformError> {
    let n = p.size();
    for i in 0..n {
        for j in i + 1..n {
            let residual = zero_residual(p, i, j);
            if !tol.eq(residual, 0.0) {
                return Err(TransformError::ZeroConditionFailed {
                    x: p.label(i).to_string(),
                    y: p.label(j).to_string(),
                    residual,
                });
            }
        }
    }
    let a: Vec<f64> = (0..n).map(|x| p.get(x, 0)).collect();
    let b: Vec<f64> = (0..n).map(|y| p.get(0, y) - p.get(0, 0)).collect();
    for (x, &ax) in a.iter().enumerate() {
        for (y, &by) in b.iter().enumerate() {
            let residual = p.get(x, y) - (ax + by);
            if !tol.eq(residual, 0.0) {
                return Err(TransformError::NotSeparable {
                    x: p.label(x).to_string(),
                    y: p.label(y).to_string(),
                    residual,
                });
            }
        }
    }
    Ok(ZeroCoordinates {
        reference: p.label(0).to_string(),
        a: LabelFunction::on(p, a)?,
        b: LabelFunction::on(p, b)?,
    })
}

/// Recovers `h` with `d(x,y) = h(x) − h(y)`, gauge-fixed by `h(x) = d(x, r)`
/// for the first label `r`.
pub fn potential_of(d: &LabeledMatrix, tol: &ToleranceConfig) -> Result<LabelFunction, TransformError> {
    let n = d.size();
    let h: Vec<f64> = (0..n).map(|x| d.get(x, 0)).collect();
    for x in 0..n {
        for y in 0..n {
            let residual = d.get(x, y) - (h[x] - h[y]);
            if !tol.eq(residual, 0.0) {
                return Err(TransformError::NotPotentialDifference {
                    x: d.label(x).to_string(),
                    y: d.label(y).to_string(),
                    residual,
                });
            }
        }
    }
    Ok(LabelFunction::on(d, h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::matrix::default_labels;

    fn m(rows: &[&[f64]]) -> LabeledMatrix {
        LabeledMatrix::from_rows(rows).unwrap()
    }

    fn lab(rows: &[&[f64]], labels: &[&str]) -> LabeledMatrix {
        LabeledMatrix::from_labeled_rows(labels.iter().map(|s| s.to_string()).collect(), rows).unwrap()
    }

    fn func(m: &LabeledMatrix, v: &[f64]) -> LabelFunction {
        LabelFunction::on(m, v.to_vec()).unwrap()
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn potential(h: &[f64]) -> LabeledMatrix {
        LabeledMatrix::from_fn(default_labels(h.len()), |i, j| h[i] - h[j]).unwrap()
    }

    #[test]
    fn transpose_examples() {
        let s = m(&[&[0., 1.], &[1., 0.]]);
        assert_eq!(transpose(&s), s);
        assert_eq!(transpose(&m(&[&[0., -1.], &[1., 0.]])), m(&[&[0., 1.], &[-1., 0.]]));
        assert_eq!(transpose(&potential(&[0., 1., 3.])), potential(&[0., -1., -3.]));
    }

    #[test]
    fn add_examples() {
        let p = m(&[&[1., 3.], &[0., 2.]]);
        assert_eq!(add(&p, &LabeledMatrix::zeros(2).unwrap()).unwrap(), p);
        let s = add(&m(&[&[0., 1.], &[1., 0.]]), &m(&[&[0., 2.], &[2., 0.]])).unwrap();
        assert_eq!(s, m(&[&[0., 3.], &[3., 0.]]));
        assert!(classify(&s, &tol()).metric);
        let sym = add(&p, &transpose(&p)).unwrap();
        assert_eq!(sym, m(&[&[2., 3.], &[3., 4.]]));
        let pr = classify(&p, &tol());
        let sr = classify(&sym, &tol());
        assert!(pr.prequad_t);
        assert!(sr.symmetric && sr.symmetric_protometric);
    }

    #[test]
    fn add_aligns_labels_and_rejects_mismatch() {
        let a = lab(&[&[0., 1.], &[2., 0.]], &["a", "b"]);
        let b = lab(&[&[0., 20.], &[10., 0.]], &["b", "a"]);
        assert_eq!(add(&a, &b).unwrap(), lab(&[&[0., 11.], &[22., 0.]], &["a", "b"]));
        let c = lab(&[&[0., 1.], &[2., 0.]], &["a", "c"]);
        assert!(matches!(
            add(&a, &c),
            Err(TransformError::Matrix(MatrixError::LabelMismatch(_)))
        ));
    }

    #[test]
    fn affine_gauge_examples() {
        let p = m(&[&[0., 1.], &[1., 0.]]);
        assert_eq!(affine_gauge(&p, 1.0, &func(&p, &[0., 0.])).unwrap(), p);
        assert_eq!(
            affine_gauge(&p, 2.0, &func(&p, &[1., 2.])).unwrap(),
            m(&[&[2., 5.], &[5., 4.]])
        );
        let q = m(&[&[1., 3.], &[0., 2.5]]);
        let alpha = 0.7;
        let out = affine_gauge(&q, alpha, &diagonal_cancelling_gauge(&q, alpha).unwrap()).unwrap();
        assert_eq!(out.diagonal(), vec![0.0, 0.0]);
        assert!(matches!(
            affine_gauge(&p, 0.0, &func(&p, &[0., 0.])),
            Err(TransformError::InvalidAlpha(_))
        ));
        assert!(affine_gauge(&p, -1.0, &func(&p, &[0., 0.])).is_err());
    }

    #[test]
    fn metrize_examples() {
        let metric = m(&[&[0., 1., 2.], &[1., 0., 1.], &[2., 1., 0.]]);
        assert_eq!(metrize(&metric, 0.5, &tol()).unwrap(), metric);
        let p = m(&[&[1., 3.], &[3., 2.]]);
        let d = metrize(&p, 1.0, &tol()).unwrap();
        assert_eq!(d, m(&[&[0., 3.], &[3., 0.]]));
        assert!(classify(&d, &tol()).metric);
        let f = [1.5, -2., 4.];
        let zero = LabeledMatrix::from_fn(default_labels(3), |i, j| f[i] + f[j]).unwrap();
        for alpha in [0.1, 1.0, 7.0] {
            assert_eq!(metrize(&zero, alpha, &tol()).unwrap(), LabeledMatrix::zeros(3).unwrap());
        }
    }

    #[test]
    fn metrize_rejects_non_protometric() {
        let bad = m(&[&[0., 1.], &[5., 0.]]);
        let bad = add(&bad, &m(&[&[0., 0.], &[0., 7.]])).unwrap();
        match metrize(&bad, 1.0, &tol()) {
            Err(TransformError::NotProtometric(v)) => assert!(!v.witnesses.is_empty()),
            other => panic!("expected NotProtometric, got {other:?}"),
        }
    }

    #[test]
    fn compose_examples() {
        let z = LabeledMatrix::zeros(2).unwrap();
        assert_eq!(
            compose(&z, &func(&z, &[2., 4.]), &tol()).unwrap(),
            m(&[&[2., 3.], &[3., 4.]])
        );
        let d = m(&[&[0., 3.], &[3., 0.]]);
        assert_eq!(
            compose(&d, &func(&d, &[0., 0.]), &tol()).unwrap(),
            m(&[&[0., 1.5], &[1.5, 0.]])
        );
        assert_eq!(
            compose(&d, &func(&d, &[1., 2.]), &tol()).unwrap(),
            m(&[&[1., 3.], &[3., 2.]])
        );
        let diag = m(&[&[1., 3.], &[3., 0.]]);
        assert!(matches!(
            compose(&diag, &func(&diag, &[0., 0.]), &tol()),
            Err(TransformError::NonZeroDiagonal { .. })
        ));
        let nonproto = m(&[&[0., 1., 5.], &[1., 0., 1.], &[5., 1., 0.]]);
        assert!(matches!(
            compose(&nonproto, &func(&nonproto, &[0., 0., 0.]), &tol()),
            Err(TransformError::NotProtometric(_))
        ));
    }

    #[test]
    fn decompose_examples() {
        let dec = decompose(&m(&[&[1., 3.], &[3., 2.]]), &tol()).unwrap();
        assert_eq!(dec.f.values(), &[1., 2.]);
        assert_eq!(dec.d, m(&[&[0., 3.], &[3., 0.]]));

        let metric = m(&[&[0., 1., 2.], &[1., 0., 1.], &[2., 1., 0.]]);
        let dec = decompose(&metric, &tol()).unwrap();
        assert_eq!(dec.f.values(), &[0., 0., 0.]);
        assert_eq!(dec.d, metric.map(|v| 2.0 * v).unwrap());

        let f = [1., -2., 0.5];
        let zero = LabeledMatrix::from_fn(default_labels(3), |i, j| f[i] + f[j]).unwrap();
        let dec = decompose(&zero, &tol()).unwrap();
        assert_eq!(dec.d, LabeledMatrix::zeros(3).unwrap());
        let halves: Vec<f64> = dec.f.values().iter().map(|v| v / 2.0).collect();
        assert_eq!(halves, f);
    }

    #[test]
    fn symmetric_representation_reproduces_input() {
        let p = m(&[&[1., 3., 2.5], &[3., 2., 2.], &[2.5, 2., 0.5]]);
        let dec = decompose(&p, &tol()).unwrap();
        assert!(classify(&dec.d, &tol()).semi_metric);
        assert_eq!(symmetric_representation(&dec).unwrap(), p);
        assert_eq!(compose(&dec.d, &dec.f, &tol()).unwrap(), p);
    }

    #[test]
    fn zero_coordinates_examples() {
        let p = lab(&[&[2., 3.], &[0., 1.]], &["a", "b"]);
        let z = zero_coordinates(&p, &tol()).unwrap();
        assert_eq!(z.reference, "a");
        assert_eq!(z.a.values(), &[2., 0.]);
        assert_eq!(z.b.values(), &[0., 1.]);

        let c = LabeledMatrix::constant(default_labels(3), 4.5).unwrap();
        let z = zero_coordinates(&c, &tol()).unwrap();
        assert_eq!(z.a.values(), &[4.5; 3]);
        assert_eq!(z.b.values(), &[0.0; 3]);

        match zero_coordinates(&m(&[&[0., 1.], &[1., 0.]]), &tol()) {
            Err(TransformError::ZeroConditionFailed { residual, .. }) => assert_eq!(residual, 2.0),
            other => panic!("unexpected {other:?}"),
        }
        let cyc = m(&[&[0., 1., -1.], &[-1., 0., 1.], &[1., -1., 0.]]);
        assert!(matches!(
            zero_coordinates(&cyc, &tol()),
            Err(TransformError::NotSeparable { .. })
        ));
    }

    #[test]
    fn zero_basis_dependency() {
        let labels = default_labels(3);
        let mut s1 = LabeledMatrix::zeros(3).unwrap();
        let mut s2 = s1.clone();
        for u in 0..3 {
            let (q1, q2) = zero_basis(&labels, u);
            s1 = add(&s1, &q1).unwrap();
            s2 = add(&s2, &q2).unwrap();
            assert!(classify(&q1, &tol()).zero_protometric);
            assert!(classify(&q2, &tol()).zero_protometric);
        }
        let ones = LabeledMatrix::constant(labels, 1.0).unwrap();
        assert_eq!(s1, ones);
        assert_eq!(s2, ones);
    }

    #[test]
    fn potential_examples() {
        let h = potential_of(&potential(&[0., 1., 3.]), &tol()).unwrap();
        assert_eq!(h.values(), &[0., 1., 3.]);
        let z = potential_of(&LabeledMatrix::zeros(3).unwrap(), &tol()).unwrap();
        assert_eq!(z.values(), &[0., 0., 0.]);
        assert!(matches!(
            potential_of(&m(&[&[0., 1.], &[1., 0.]]), &tol()),
            Err(TransformError::NotPotentialDifference { .. })
        ));
        // Gauge: h shifted so that h(first) = 0.
        let h = potential_of(&potential(&[5., 6., 8.]), &tol()).unwrap();
        assert_eq!(h.values(), &[0., 1., 3.]);
    }
}
