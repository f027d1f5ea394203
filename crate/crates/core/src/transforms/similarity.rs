//! Gromov product, Farris transform and the `−ln` similarity map.

use super::TransformError;
use crate::check::{check_triangle, InequalityType, ToleranceConfig};
use crate::classify::{has_zero_diagonal, is_nonnegative, is_symmetric};
use crate::matrix::{LabeledMatrix, MatrixError};

fn require_metric(d: &LabeledMatrix, tol: &ToleranceConfig) -> Result<(), TransformError> {
    let n = d.size();
    let fail = |what: &str| Err(TransformError::NotMetric(what.to_string()));
    if !has_zero_diagonal(d, tol) {
        return fail("nonzero diagonal");
    }
    if !is_symmetric(d, tol) {
        return fail("not symmetric");
    }
    if !is_nonnegative(d, tol) {
        return fail("negative entry");
    }
    if (0..n).any(|i| (0..n).any(|j| i != j && d.get(i, j) <= tol.eps_strict)) {
        return fail("two distinct points at distance zero");
    }
    if !check_triangle(d, InequalityType::T, tol).passed() {
        return fail("triangle inequality fails");
    }
    Ok(())
}

fn base_index(d: &LabeledMatrix, base: &str) -> Result<usize, TransformError> {
    d.index_of(base)
        .ok_or_else(|| MatrixError::UnknownLabel(base.to_string()).into())
}

/// Gromov product `(x.y)_{x0} = ½(d(x,x0) + d(y,x0) − d(x,y))` of a metric.
///
/// Computed on the upper triangle and mirrored, so the output is exactly
/// symmetric.
pub fn gromov_product(d: &LabeledMatrix, base: &str, tol: &ToleranceConfig) -> Result<LabeledMatrix, TransformError> {
    let b = base_index(d, base)?;
    require_metric(d, tol)?;
    Ok(gromov_unchecked(d, b))
}

fn gromov_unchecked(d: &LabeledMatrix, b: usize) -> LabeledMatrix {
    LabeledMatrix::from_fn(d.labels().to_vec(), |x, y| {
        let (x, y) = if x <= y { (x, y) } else { (y, x) };
        0.5 * ((d.get(x, b) + d.get(y, b)) - d.get(x, y))
    })
    .expect("gromov product of a valid matrix is finite")
}

/// Farris transform `C − (x.y)_{x0}`.
pub fn farris_transform(
    d: &LabeledMatrix,
    base: &str,
    constant: f64,
    tol: &ToleranceConfig,
) -> Result<LabeledMatrix, TransformError> {
    if !constant.is_finite() {
        return Err(TransformError::InvalidConstant(constant));
    }
    let g = gromov_product(d, base, tol)?;
    Ok(g.map(|v| constant - v)?)
}

/// Least `C` for which [`farris_transform`] is nonnegative and satisfies the
/// triangle inequality:
/// `max( max_{x,y,z} [G(x,y) + G(x,z) − G(y,z)], max_{x,y} G(x,y), 0 )`
/// where `G` is the Gromov product at `base`.
pub fn min_farris_constant(d: &LabeledMatrix, base: &str, tol: &ToleranceConfig) -> Result<f64, TransformError> {
    let g = gromov_product(d, base, tol)?;
    let n = g.size();
    let mut c = 0.0_f64;
    for x in 0..n {
        for y in 0..n {
            c = c.max(g.get(x, y));
            for z in 0..n {
                c = c.max(g.get(x, y) + g.get(x, z) - g.get(y, z));
            }
        }
    }
    Ok(c)
}

/// Entrywise `−ln s` of a strictly positive similarity.
pub fn log_transform(s: &LabeledMatrix) -> Result<LabeledMatrix, TransformError> {
    let n = s.size();
    for i in 0..n {
        for j in 0..n {
            let value = s.get(i, j);
            if value <= 0.0 {
                return Err(TransformError::NonPositive {
                    x: s.label(i).to_string(),
                    y: s.label(j).to_string(),
                    value,
                });
            }
        }
    }
    // `0.0 - x` rather than `-x` so that s = 1 maps to +0.
    Ok(s.map(|v| 0.0 - v.ln())?)
}
