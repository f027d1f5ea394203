//! Seeded random instances for every class of the taxonomy.
//!
//! The PRNG is xoshiro256** seeded through SplitMix64
//! (`Xoshiro256StarStar::seed_from_u64`). A unit draw is
//! `(next_u64() >> 11) · 2⁻⁵³ ∈ [0, 1)`. Every drawn value is rounded to the
//! dyadic grid `2^(⌈log₂ scale⌉ − 30)`, so sums of a few generated entries
//! are exact in `f64` and round trips through the linear transforms are
//! bit-exact.
//!
//! Draw order: off-diagonal entries in row-major order (upper triangle only
//! for symmetric bases), then the gauge `f` in label order. When zero draws
//! are enabled each off-diagonal entry takes a coin draw before its value.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use thiserror::Error;

use crate::check::{check_prequadrangle, prequadrangle_sides, InequalityType, ToleranceConfig, DEFAULT_EPS};
use crate::matrix::{default_labels, LabelFunction, LabeledMatrix};
use crate::transforms::compose;

pub const DEFAULT_SCALE: f64 = 10.0;

/// Probability that a base draw is replaced by zero when a non-strict
/// instance is requested.
pub const ZERO_DRAW_PROBABILITY: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("space size must be at least 1")]
    EmptySpace,
    #[error("scale must be finite and positive, got {0}")]
    InvalidScale(f64),
    #[error("perturbation magnitude must be finite and positive, got {0}")]
    InvalidMagnitude(f64),
    #[error("perturbation needs at least two points")]
    TooSmall,
    #[error("input already violates the type-{0} pre-quadrangle inequality")]
    AlreadyFails(InequalityType),
}

/// Size, seed and magnitude of a generated instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub seed: u64,
    pub scale: f64,
}

impl GenSpec {
    pub fn new(n: usize, seed: u64) -> Self {
        GenSpec {
            n,
            seed,
            scale: DEFAULT_SCALE,
        }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::EmptySpace);
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(GenError::InvalidScale(self.scale));
        }
        Ok(())
    }
}

/// Portable draw source used by every generator.
pub struct Draws {
    rng: Xoshiro256StarStar,
    quantum: f64,
    scale: f64,
}

impl Draws {
    pub fn new(seed: u64, scale: f64) -> Self {
        let exp = scale.log2().ceil() as i32 - 30;
        Draws {
            rng: Xoshiro256StarStar::seed_from_u64(seed),
            quantum: 2f64.powi(exp),
            scale,
        }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn quantize(&self, v: f64) -> f64 {
        (v / self.quantum).round() * self.quantum
    }

    /// Uniform on `(0, scale]`, on the grid, redrawn until above `eps_strict`.
    pub fn positive(&mut self) -> f64 {
        loop {
            let u = self.unit();
            let v = self.quantize(self.scale * (1.0 - u));
            if v > DEFAULT_EPS {
                return v;
            }
        }
    }

    /// Uniform on `[−scale, scale)`, on the grid.
    pub fn signed(&mut self) -> f64 {
        let u = self.unit();
        self.quantize(self.scale * (2.0 * u - 1.0))
    }

    /// Positive draw, replaced by zero with probability `zero_prob`.
    fn maybe_zero(&mut self, zero_prob: f64) -> f64 {
        if zero_prob <= 0.0 {
            return self.positive();
        }
        let coin = self.unit();
        let v = self.positive();
        if coin < zero_prob {
            0.0
        } else {
            v
        }
    }
}

/// All-pairs shortest paths by repeated min-plus relaxation sweeps until no
/// entry changes. At the fixpoint `d(i,j) ≤ d(i,k) + d(k,j)` holds for the
/// floating-point sums themselves.
pub fn min_plus_closure(d: &mut [f64], n: usize) {
    loop {
        let mut changed = false;
        for k in 0..n {
            for i in 0..n {
                let dik = d[i * n + k];
                for j in 0..n {
                    let via = dik + d[k * n + j];
                    if via < d[i * n + j] {
                        d[i * n + j] = via;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn closed_base(spec: &GenSpec, draws: &mut Draws, symmetric: bool, zero_prob: f64) -> LabeledMatrix {
    let n = spec.n;
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j || (symmetric && j < i) {
                continue;
            }
            let v = draws.maybe_zero(zero_prob);
            d[i * n + j] = v;
            if symmetric {
                d[j * n + i] = v;
            }
        }
    }
    min_plus_closure(&mut d, n);
    LabeledMatrix::new(default_labels(n), d).expect("closure of finite draws is finite")
}

/// A metric: symmetric positive draws, zero diagonal, min-plus closure.
pub fn gen_metric(spec: &GenSpec) -> Result<LabeledMatrix, GenError> {
    spec.validate()?;
    let mut draws = Draws::new(spec.seed, spec.scale);
    Ok(closed_base(spec, &mut draws, true, 0.0))
}

/// A quasi-semi-metric with positive off-diagonal entries: asymmetric draws
/// closed over the complete digraph.
pub fn gen_quasi_semi_metric(spec: &GenSpec) -> Result<LabeledMatrix, GenError> {
    spec.validate()?;
    let mut draws = Draws::new(spec.seed, spec.scale);
    Ok(closed_base(spec, &mut draws, false, 0.0))
}

/// A quasi-semi-metric (or semi-metric when `symmetric`) where each base draw
/// is zero with probability `zero_prob`, giving coincident points and
/// nontrivial specialization preorders.
pub fn gen_degenerate_quasi_semi_metric(
    spec: &GenSpec,
    symmetric: bool,
    zero_prob: f64,
) -> Result<LabeledMatrix, GenError> {
    spec.validate()?;
    let mut draws = Draws::new(spec.seed, spec.scale);
    Ok(closed_base(spec, &mut draws, symmetric, zero_prob.clamp(0.0, 1.0)))
}

/// A protometric of type `ty`, built as `½(d(x,y) + f(x) + f(y))` with `f`
/// uniform on `[−scale, scale)`.
///
/// Type t uses a quasi-semi-metric base; types o, i and c use a symmetric
/// base, since protometrics of those types are symmetric. With `strict` the
/// base has positive off-diagonal entries; otherwise base draws are zero with
/// probability [`ZERO_DRAW_PROBABILITY`].
pub fn gen_protometric(spec: &GenSpec, ty: InequalityType, strict: bool) -> Result<LabeledMatrix, GenError> {
    spec.validate()?;
    let mut draws = Draws::new(spec.seed, spec.scale);
    let zero_prob = if strict { 0.0 } else { ZERO_DRAW_PROBABILITY };
    let base = closed_base(spec, &mut draws, ty != InequalityType::T, zero_prob);
    let f: Vec<f64> = (0..spec.n).map(|_| draws.signed()).collect();
    let f = LabelFunction::on(&base, f).expect("finite gauge");
    Ok(compose(&base, &f, &ToleranceConfig::default()).expect("closed base is a difference protometric"))
}

/// A 0-protometric `p(x,y) = a(x) + b(y)` with `a`, `b` uniform on
/// `[−scale, scale)`.
pub fn gen_zero_protometric(spec: &GenSpec) -> Result<LabeledMatrix, GenError> {
    spec.validate()?;
    let mut draws = Draws::new(spec.seed, spec.scale);
    let a: Vec<f64> = (0..spec.n).map(|_| draws.signed()).collect();
    let b: Vec<f64> = (0..spec.n).map(|_| draws.signed()).collect();
    Ok(zero_protometric_from(&a, &b))
}

/// `p(x,y) = a(x) + b(y)` on labels `x1..xn`.
pub fn zero_protometric_from(a: &[f64], b: &[f64]) -> LabeledMatrix {
    assert_eq!(a.len(), b.len(), "coefficient vectors must have equal length");
    LabeledMatrix::from_fn(default_labels(a.len()), |x, y| a[x] + b[y]).expect("finite coefficients")
}

/// Breaks the type-`ty` pre-quadrangle inequality of a protometric by raising
/// a single right-hand entry `p(y,z)`.
///
/// Only triples whose right-hand entry `p(y,z)` does not also appear on the
/// left are candidates. Among them the one with least slack is chosen
/// (off-diagonal `p(y,z)` preferred on ties, then row-major order) and
/// `p(y,z)` grows by `slack + magnitude`, leaving that triple with deficit
/// `magnitude`.
pub fn perturb_violation(
    m: &LabeledMatrix,
    ty: InequalityType,
    magnitude: f64,
    tol: &ToleranceConfig,
) -> Result<LabeledMatrix, GenError> {
    if !(magnitude.is_finite() && magnitude > 0.0) {
        return Err(GenError::InvalidMagnitude(magnitude));
    }
    let n = m.size();
    if n < 2 {
        return Err(GenError::TooSmall);
    }
    if !check_prequadrangle(m, ty, tol).passed() {
        return Err(GenError::AlreadyFails(ty));
    }

    let mut best: Option<(f64, bool, (usize, usize, usize))> = None;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if ty.lhs_entries(x, y, z).contains(&(y, z)) {
                    continue;
                }
                let (lhs, rhs) = prequadrangle_sides(m, ty, x, y, z);
                let slack = lhs - rhs;
                let diag = y == z;
                let better = match best {
                    None => true,
                    Some((s, d, _)) => slack < s || (slack == s && d && !diag),
                };
                if better {
                    best = Some((slack, diag, (x, y, z)));
                }
            }
        }
    }
    let (slack, _, (_, y, z)) = best.ok_or(GenError::TooSmall)?;
    Ok(m.with_entry(y, z, m.get(y, z) + slack.max(0.0) + magnitude)
        .expect("finite perturbation"))
}
