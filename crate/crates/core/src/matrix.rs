//! Labeled square matrices and label-indexed functions.
//!
//! A [`LabeledMatrix`] stores a function `X × X → ℝ` on a finite ordered
//! ground set `X`. Every constructor validates the invariants (square shape,
//! unique labels, finite entries), so downstream code never sees NaN or
//! infinities.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Errors raised while building matrices or label functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("expected {expected} entries for a {n}x{n} matrix, got {actual}")]
    NotSquare { n: usize, expected: usize, actual: usize },
    #[error("row {row} has {actual} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, actual: usize },
    #[error("{labels} labels given for a matrix of size {size}")]
    LabelCount { labels: usize, size: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("entry ({row}, {col}) is not finite: {value}")]
    NonFinite { row: usize, col: usize, value: f64 },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label sets differ: `{0}` is not present in both operands")]
    LabelMismatch(String),
    #[error("value for label `{label}` is not finite: {value}")]
    NonFiniteValue { label: String, value: f64 },
}

/// Default labels `x1..xn`.
pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn check_labels(labels: &[String]) -> Result<(), MatrixError> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(MatrixError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// A dense `n × n` real matrix addressed by an ordered list of distinct labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMatrix {
    labels: Vec<String>,
    data: Vec<f64>,
}

impl LabeledMatrix {
    /// Builds a matrix from labels and row-major entries.
    pub fn new(labels: Vec<String>, data: Vec<f64>) -> Result<Self, MatrixError> {
        let n = labels.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if data.len() != n * n {
            return Err(MatrixError::NotSquare {
                n,
                expected: n * n,
                actual: data.len(),
            });
        }
        check_labels(&labels)?;
        for (k, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(MatrixError::NonFinite {
                    row: k / n,
                    col: k % n,
                    value: v,
                });
            }
        }
        Ok(LabeledMatrix { labels, data })
    }

    /// Builds a matrix from nested rows with labels `x1..xn`.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        Self::from_labeled_rows(default_labels(rows.len()), rows)
    }

    pub fn from_labeled_rows<R: AsRef<[f64]>>(labels: Vec<String>, rows: &[R]) -> Result<Self, MatrixError> {
        if rows.is_empty() {
            return Err(MatrixError::Empty);
        }
        if labels.len() != rows.len() {
            return Err(MatrixError::LabelCount {
                labels: labels.len(),
                size: rows.len(),
            });
        }
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(MatrixError::RaggedRow {
                    row: r,
                    expected: n,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(labels, data)
    }

    /// `n × n` matrix filled by `f(row, col)`.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(labels: Vec<String>, mut f: F) -> Result<Self, MatrixError> {
        let n = labels.len();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(labels, data)
    }

    pub fn constant(labels: Vec<String>, value: f64) -> Result<Self, MatrixError> {
        let n = labels.len();
        Self::new(labels, vec![value; n * n])
    }

    pub fn zeros(n: usize) -> Result<Self, MatrixError> {
        Self::constant(default_labels(n), 0.0)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Entry at row `i`, column `j` (panics when out of range).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size() + j]
    }

    /// Entry addressed by labels.
    pub fn entry(&self, x: &str, y: &str) -> Result<f64, MatrixError> {
        let i = self
            .index_of(x)
            .ok_or_else(|| MatrixError::UnknownLabel(x.to_string()))?;
        let j = self
            .index_of(y)
            .ok_or_else(|| MatrixError::UnknownLabel(y.to_string()))?;
        Ok(self.get(i, j))
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.size()).map(<[f64]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.size()).map(|i| self.get(i, i)).collect()
    }

    /// Returns a copy with one entry replaced. The value must be finite.
    pub fn with_entry(&self, i: usize, j: usize, value: f64) -> Result<Self, MatrixError> {
        if !value.is_finite() {
            return Err(MatrixError::NonFinite { row: i, col: j, value });
        }
        let mut out = self.clone();
        let n = out.size();
        out.data[i * n + j] = value;
        Ok(out)
    }

    /// Applies `f` entrywise, keeping the labels.
    pub fn map<F: FnMut(f64) -> f64>(&self, f: F) -> Result<Self, MatrixError> {
        Self::new(self.labels.clone(), self.data.iter().copied().map(f).collect())
    }

    /// Reorders rows and columns so that the result has label order `perm`,
    /// where `perm[k]` is the source index of the new k-th label.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, MatrixError> {
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        Self::from_fn(labels, |i, j| self.get(perm[i], perm[j]))
    }

    /// Index of every label of `self` inside `other`, or an error when the
    /// label sets differ.
    pub(crate) fn alignment_with(&self, other: &LabeledMatrix) -> Result<Vec<usize>, MatrixError> {
        if self.size() != other.size() {
            let missing = self
                .labels
                .iter()
                .chain(other.labels.iter())
                .find(|l| self.index_of(l).is_none() || other.index_of(l).is_none())
                .cloned()
                .unwrap_or_default();
            return Err(MatrixError::LabelMismatch(missing));
        }
        self.labels
            .iter()
            .map(|l| other.index_of(l).ok_or_else(|| MatrixError::LabelMismatch(l.clone())))
            .collect()
    }
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        for i in 0..n {
            write!(f, "{}:", self.labels[i])?;
            for j in 0..n {
                write!(f, " {}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A real-valued function on labels, `X → ℝ` (gauges, potentials, basis
/// coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct LabelFunction {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl LabelFunction {
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self, MatrixError> {
        if labels.len() != values.len() {
            return Err(MatrixError::LabelCount {
                labels: labels.len(),
                size: values.len(),
            });
        }
        check_labels(&labels)?;
        for (l, &v) in labels.iter().zip(&values) {
            if !v.is_finite() {
                return Err(MatrixError::NonFiniteValue {
                    label: l.clone(),
                    value: v,
                });
            }
        }
        Ok(LabelFunction { labels, values })
    }

    /// Function on the labels of `m` given in the same order.
    pub fn on(m: &LabeledMatrix, values: Vec<f64>) -> Result<Self, MatrixError> {
        Self::new(m.labels().to_vec(), values)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.labels.iter().map(String::as_str).zip(self.values.iter().copied())
    }

    /// Values reordered to follow `labels`. Every label must be present and
    /// no extra labels are allowed.
    pub fn aligned_to(&self, labels: &[String]) -> Result<Vec<f64>, MatrixError> {
        if let Some(extra) = self.labels.iter().find(|l| !labels.contains(l)) {
            return Err(MatrixError::LabelMismatch(extra.clone()));
        }
        labels
            .iter()
            .map(|l| self.get(l).ok_or_else(|| MatrixError::LabelMismatch(l.clone())))
            .collect()
    }
}
