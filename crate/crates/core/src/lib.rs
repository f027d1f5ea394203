//! Classification of finite generalized distance matrices.
//!
//! A square real matrix on a labeled finite set is checked against the four
//! orientations of the triangle inequality (`o`, `i`, `t`, `c`), the four
//! pre-quadrangle inequalities that define protometrics, and the derived
//! classes (difference protometrics, quasi-semi-metrics, metrics, potential
//! differences, 0-protometrics). The [`transforms`] module implements the maps
//! between these classes and [`generators`] produces seeded random members of
//! each class.
//!
//! ```
//! use protometric::{classify, LabeledMatrix, ToleranceConfig};
//!
//! let d = LabeledMatrix::from_rows(&[[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]).unwrap();
//! let report = classify(&d, &ToleranceConfig::default());
//! assert!(report.metric);
//! ```

pub mod check;
pub mod classify;
pub mod generators;
pub mod io;
pub mod matrix;
pub mod transforms;

pub use check::{
    check_prequadrangle, check_strict, check_transition, check_triangle, diagonal_bounds, DiagonalBound,
    InequalityType, Interval, PropertyVerdict, Status, ToleranceConfig, TransitionMode, ViolationWitness,
};
pub use classify::{classify, ClassificationReport};
pub use generators::GenSpec;
pub use matrix::{LabelFunction, LabeledMatrix, MatrixError};
pub use transforms::TransformError;
