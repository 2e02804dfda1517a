use std::fmt;

use crate::error::{Error, Result};
use crate::fock::{apply_h, apply_l, ModuleVector};
use crate::linalg::QMatrix;
use crate::logseries::{LogSeries, TruncationWindow, Witness};
use crate::scalar::{binomial, Rational};

use super::canonical::intertwiner_apply;
use super::{is_equivariant, IntertwinerSpec};

/// Result of an exact identity check on a truncated window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub pass: bool,
    /// Window on which both sides were compared.
    pub window: TruncationWindow,
    /// First differing coefficient, present iff the check failed.
    pub witness: Option<Witness>,
}

impl CheckOutcome {
    pub fn from_difference(lhs: &LogSeries, rhs: &LogSeries) -> Result<Self> {
        let diff = lhs.sub(rhs)?;
        let witness = lhs.first_difference(rhs)?;
        Ok(CheckOutcome {
            pass: witness.is_none(),
            window: diff.window(),
            witness,
        })
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "pass on {}", self.window),
            Some(w) => write!(f, "FAIL on {}: {}", self.window, w),
        }
    }
}

/// An intertwining operator evaluated lazily on demand: the explicit operator
/// of a spec, followed by `lowered` applications of `d/d(log x)`.
#[derive(Clone, Debug)]
pub struct OperatorSeries {
    spec: IntertwinerSpec,
    window: TruncationWindow,
    lowered: u32,
}

impl OperatorSeries {
    pub fn new(spec: IntertwinerSpec, window: TruncationWindow) -> Self {
        OperatorSeries {
            spec,
            window,
            lowered: 0,
        }
    }

    pub fn spec(&self) -> &IntertwinerSpec {
        &self.spec
    }

    pub fn window(&self) -> TruncationWindow {
        self.window
    }

    /// How many times the operator has been lowered.
    pub fn lowered(&self) -> u32 {
        self.lowered
    }

    /// `Y(w1, x) w2` exact up to `x^(offset + k_max)`.
    pub fn apply_to(&self, w1: &ModuleVector, w2: &ModuleVector, k_max: i64) -> Result<LogSeries> {
        let mut w = self.window;
        w.k_max = k_max;
        w.k_min = w.k_min.min(k_max);
        let mut s = intertwiner_apply(&self.spec, w1, w2, &w)?;
        for _ in 0..self.lowered {
            s = s.dlog();
        }
        Ok(s)
    }

    pub fn apply(&self, w1: &ModuleVector, w2: &ModuleVector) -> Result<LogSeries> {
        self.apply_to(w1, w2, self.window.k_max)
    }

    /// All pairs of vacuum-leg basis vectors `(1 (x) e_i, 1 (x) e_b)`.
    pub fn vacuum_samples(&self) -> Vec<(ModuleVector, ModuleVector)> {
        let mut out = Vec::new();
        for i in 0..self.spec.omega1().dim() {
            for b in 0..self.spec.omega2().dim() {
                out.push((ModuleVector::vacuum(i), ModuleVector::vacuum(b)));
            }
        }
        out
    }

    /// Largest log power over the given sample pairs.
    pub fn sampled_depth(&self, samples: &[(ModuleVector, ModuleVector)]) -> Result<u32> {
        let mut d = 0;
        for (w1, w2) in samples {
            d = d.max(self.apply(w1, w2)?.depth());
        }
        Ok(d)
    }

    /// Depth measured on vacuum legs, which attain it.
    pub fn depth(&self) -> Result<u32> {
        self.sampled_depth(&self.vacuum_samples())
    }
}

/// `Y_{-1}(., x) = sum_i (i+1) Y^{(i+1)}(., x) log^i(x)`: one fewer log power.
pub fn derived_operator(op: &OperatorSeries) -> Result<OperatorSeries> {
    if op.depth()? == 0 {
        return Err(Error::NothingToLower);
    }
    let mut out = op.clone();
    out.lowered += 1;
    Ok(out)
}

/// The maps `F^(i): Omega_1 (x) Omega_2 -> Omega_3`, read off the
/// `x^(lambda nu) log^i` coefficients on vacuum legs, for
/// `i = 0, ..., m1 + m2 - 2`. Trailing components may vanish.
pub fn f_map(op: &OperatorSeries) -> Result<Vec<QMatrix>> {
    let spec = op.spec();
    let (d1, d2, d3) = (spec.omega1().dim(), spec.omega2().dim(), spec.omega3().dim());
    let top = spec.omega1().nilpotent_order() + spec.omega2().nilpotent_order() - 2;
    let mut maps = vec![QMatrix::zeros(d3, d1 * d2); top + 1];
    for a in 0..d1 {
        for b in 0..d2 {
            let y = op.apply_to(&ModuleVector::vacuum(a), &ModuleVector::vacuum(b), 0)?;
            for (i, m) in maps.iter_mut().enumerate() {
                let c = y.coefficient(0, i as u32)?;
                for (s, x) in c.terms() {
                    if s.partition.is_empty() {
                        m[(s.omega, a * d2 + b)] = x.clone();
                    }
                }
            }
        }
    }
    Ok(maps)
}

/// Whether every `F^(i)` is `h(0)`-equivariant.
pub fn f_map_equivariant(op: &OperatorSeries) -> Result<bool> {
    let s = op.spec();
    Ok(f_map(op)?
        .iter()
        .all(|f| is_equivariant(f, s.omega1(), s.omega2(), s.omega3())))
}

/// `h(n) Y(w1, x) w2 - Y(w1, x) h(n) w2 = sum_{i>=0} binom(n, i) x^(n-i) Y(h(i) w1, x) w2`.
/// For `w1` in `Omega_1` only `i = 0` survives: `x^n Y(h(0) w1, x) w2`.
pub fn check_h_bracket(op: &OperatorSeries, w1: &ModuleVector, n: i64, w2: &ModuleVector) -> Result<CheckOutcome> {
    let s = op.spec();
    let k = op.window().k_max;
    let y = op.apply_to(w1, w2, k)?;
    let lhs = y
        .map_coefficients(|v| apply_h(n, v, s.omega3()))
        .sub(&op.apply_to(w1, &apply_h(n, w2, s.omega2()), k)?)?;
    let mut rhs = LogSeries::zero(lhs.offset().clone(), lhs.window());
    let top = w1.max_level().unwrap_or(0) as i64;
    for i in 0..=top {
        let c = binomial(n, i as u32);
        let u = apply_h(i, w1, s.omega1());
        if u.is_zero() || num_traits::Zero::is_zero(&c) {
            continue;
        }
        let extra = (i - n).max(0);
        let t = op.apply_to(&u, w2, k + extra)?.shift(n - i).scale(&c);
        rhs = rhs.add(&t)?;
    }
    CheckOutcome::from_difference(&lhs, &rhs)
}

/// `L(-1) Y(w1, x) w2 - Y(w1, x) L(-1) w2 = d/dx Y(w1, x) w2`.
pub fn check_l_minus1(op: &OperatorSeries, w1: &ModuleVector, w2: &ModuleVector) -> Result<CheckOutcome> {
    let s = op.spec();
    let a: &Rational = s.a();
    let k = op.window().k_max;
    let y = op.apply_to(w1, w2, k)?;
    let lhs = y
        .map_coefficients(|v| apply_l(-1, v, s.omega3(), a))
        .sub(&op.apply_to(w1, &apply_l(-1, w2, s.omega2(), a), k)?)?;
    CheckOutcome::from_difference(&lhs, &y.ddx())
}
