use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{apply_h, FockState, ModuleVector, OmegaSpec, Partition};
use crate::logseries::{LogSeries, TruncationWindow};
use crate::scalar::{binomial, rat, Rational};

use super::fields::{apply_t, creation_apply, e_plus_apply, int_plus_apply, jordan_exp_apply};
use super::IntertwinerSpec;

fn level(v: &ModuleVector) -> i64 {
    v.max_level().unwrap_or(0) as i64
}

fn open_window(k_min: i64, k_max: i64) -> TruncationWindow {
    TruncationWindow {
        k_min: k_min.min(k_max),
        k_max,
        max_log: 0,
        closed: false,
        log_cut: false,
    }
}

fn lowest_k(s: &LogSeries) -> Option<i64> {
    s.terms().map(|(&(k, _), _)| k).min()
}

/// Adds `c * x^shift * s` (after `f` on each coefficient) into `out`.
fn accumulate_into<F>(out: &mut LogSeries, s: &LogSeries, shift: i64, c: &Rational, mut f: F)
where
    F: FnMut(&ModuleVector) -> ModuleVector,
{
    for (&(k, j), v) in s.terms() {
        let kk = k + shift;
        if kk > out.window().k_max {
            continue;
        }
        out.accumulate(kk, j, &f(v), c).expect("support bound respected");
    }
}

fn check_index(spec: &IntertwinerSpec, i: usize) -> Result<()> {
    let dim = spec.omega1().dim();
    if i >= dim {
        return Err(Error::IndexOutOfRange { index: i + 1, dim });
    }
    Ok(())
}

/// The explicit operator on a vacuum-leg first argument `w_i` (0-based `i`
/// into `Omega_1`), applied to any `w2`:
///
/// `sum_{l<=i} sum_{j<=i-l} (int-)^j/j! E- E+ T(w_l) e^(lambda log x N_2)
/// x^(lambda nu) (int+)^(i-l-j)/(i-l-j)!`, composed right to left within the
/// Jordan block of `w_i`.
fn canonical_raw(spec: &IntertwinerSpec, i: usize, w2: &ModuleVector, k_max: i64) -> Result<LogSeries> {
    check_index(spec, i)?;
    let mut out = LogSeries::zero(spec.offset(), open_window(-level(w2), k_max));
    if w2.is_zero() {
        return Ok(out);
    }
    let (start, _) = spec.omega1().block_of(i)?;
    let il = i - start + 1;
    let lambda = spec.lambda();
    let (o2, o3) = (spec.omega2(), spec.omega3());
    let d2 = o2.dim();

    let mut plus = vec![LogSeries::constant(Rational::zero(), w2.clone())];
    for r in 1..il {
        let next = int_plus_apply(&plus[r - 1], o2, 1)?.scale(&rat(1, r as i64));
        plus.push(next);
    }
    for l in 1..=il {
        for j in 0..=(il - l) {
            let r = il - l - j;
            let x = jordan_exp_apply(lambda, o2, &plus[r]);
            let x = x.map_coefficients(|v| apply_t(spec.t(), start + l - 1, d2, v));
            let x = e_plus_apply(lambda, &x, o3)?;
            let x = creation_apply(lambda, j as u32, &x, k_max);
            accumulate_into(&mut out, &x, 0, &Rational::one(), Clone::clone);
        }
    }
    Ok(out)
}

/// `Y(w_i, x) w2` for the basis vector `w_i = 1 (x) e_i` of `Omega_1`
/// (0-based), exact on the returned window.
pub fn canonical_intertwiner(
    spec: &IntertwinerSpec,
    i: usize,
    w2: &ModuleVector,
    window: &TruncationWindow,
) -> Result<LogSeries> {
    let raw = canonical_raw(spec, i, w2, window.k_max)?;
    widen(&raw, window.k_min)
}

fn widen(s: &LogSeries, k_min: i64) -> Result<LogSeries> {
    let w = s.window();
    let mut out = LogSeries::zero(s.offset().clone(), open_window(k_min.min(w.k_min), w.k_max));
    accumulate_into(&mut out, s, 0, &Rational::one(), Clone::clone);
    Ok(out)
}

/// `Y(w_i, x) w2` computed only from the vacuum-leg values, by commuting
/// creation modes of `w2` to the left:
/// `Y(w_i) h(-n) u = h(-n) Y(w_i) u - x^(-n) Y(h(0) w_i) u`.
/// The largest part of each monomial is peeled first.
pub fn extend_from_vacuum(
    spec: &IntertwinerSpec,
    i: usize,
    w2: &ModuleVector,
    window: &TruncationWindow,
) -> Result<LogSeries> {
    check_index(spec, i)?;
    let mut memo = HashMap::new();
    let mut out = LogSeries::zero(spec.offset(), open_window(window.k_min.min(-level(w2)), window.k_max));
    for (s, c) in w2.terms() {
        let y = extend_rec(spec, i, &s.partition, s.omega, window.k_max, &mut memo)?;
        accumulate_into(&mut out, &y, 0, c, Clone::clone);
    }
    Ok(out)
}

type ExtendKey = (usize, Partition, usize, i64);

fn extend_rec(
    spec: &IntertwinerSpec,
    i: usize,
    mu: &Partition,
    b: usize,
    k_max: i64,
    memo: &mut HashMap<ExtendKey, LogSeries>,
) -> Result<LogSeries> {
    let key = (i, mu.clone(), b, k_max);
    if let Some(s) = memo.get(&key) {
        return Ok(s.clone());
    }
    let result = if mu.is_empty() {
        canonical_raw(spec, i, &ModuleVector::vacuum(b), k_max)?
    } else {
        let n = mu.parts()[0];
        let rest = mu.without_part(n).expect("part present");
        let ni = n as i64;
        let mut out = LogSeries::zero(spec.offset(), open_window(-(mu.size() as i64), k_max));
        let a = extend_rec(spec, i, &rest, b, k_max, memo)?;
        accumulate_into(&mut out, &a, 0, &Rational::one(), |v| {
            apply_h(-ni, v, spec.omega3())
        });
        // h(0) w_i = lambda w_i + N_1 w_i
        let lambda = spec.lambda().clone();
        let mut h0: Vec<(usize, Rational)> = Vec::new();
        if !lambda.is_zero() {
            h0.push((i, lambda));
        }
        h0.extend(spec.omega1().nilpotent_column(i));
        for (ip, c) in h0 {
            let y = extend_rec(spec, ip, &rest, b, k_max + ni, memo)?;
            accumulate_into(&mut out, &y, -ni, &-c, Clone::clone);
        }
        out
    };
    memo.insert(key, result.clone());
    Ok(result)
}

/// What `Y(1 (x) e_i, x)` is for the recursion below.
enum Base<'a> {
    Intertwiner(&'a IntertwinerSpec),
    /// The vertex operator of the algebra: `Y(1, x) = id`.
    Vertex,
}

struct Iterate<'a> {
    base: Base<'a>,
    /// `h(0)` on the module of the second argument.
    omega2: &'a OmegaSpec,
    offset: Rational,
    memo: HashMap<(Partition, usize, ModuleVector, i64), LogSeries>,
}

impl Iterate<'_> {
    fn base(&self, i: usize, w2: &ModuleVector, k_max: i64) -> Result<LogSeries> {
        match self.base {
            Base::Intertwiner(spec) => canonical_raw(spec, i, w2, k_max),
            Base::Vertex => {
                let mut out = LogSeries::zero(Rational::zero(), open_window(-level(w2), k_max));
                out.accumulate(0, 0, w2, &Rational::one())?;
                Ok(out)
            }
        }
    }

    /// `Y(h(-mu) 1 (x) e_i, x) w2` via the iterate formula
    /// `Y(h(-n)w, x) = sum_{c>=n} binom(c-1, n-1) h(-c) x^(c-n) Y(w, x)
    ///               + Y(w, x) sum_{m>=0} binom(-m-1, n-1) h(m) x^(-m-n)`.
    fn apply(&mut self, mu: &Partition, i: usize, w2: &ModuleVector, k_max: i64) -> Result<LogSeries> {
        if mu.is_empty() {
            return self.base(i, w2, k_max);
        }
        let key = (mu.clone(), i, w2.clone(), k_max);
        if let Some(s) = self.memo.get(&key) {
            return Ok(s.clone());
        }
        let n = mu.parts()[0];
        let ni = n as i64;
        let rest = mu.without_part(n).expect("part present");
        let k_min = -(mu.size() as i64 + level(w2));
        let mut out = LogSeries::zero(self.offset.clone(), open_window(k_min, k_max));

        let y = self.apply(&rest, i, w2, k_max)?;
        if let Some(low) = lowest_k(&y) {
            let mut c = ni;
            while low + c - ni <= k_max {
                let coef = binomial(c - 1, n - 1);
                accumulate_into(&mut out, &y, c - ni, &coef, |v| apply_h(-c, v, self.omega2));
                c += 1;
            }
        }
        for m in 0..=level(w2) {
            let u = apply_h(m, w2, self.omega2);
            if u.is_zero() {
                continue;
            }
            let coef = binomial(-m - 1, n - 1);
            let y = self.apply(&rest, i, &u, k_max + m + ni)?;
            accumulate_into(&mut out, &y, -m - ni, &coef, Clone::clone);
        }
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// `Y(w1, x) w2` for arbitrary `w1 in M(1)_a (x) Omega_1`.
pub fn intertwiner_apply(
    spec: &IntertwinerSpec,
    w1: &ModuleVector,
    w2: &ModuleVector,
    window: &TruncationWindow,
) -> Result<LogSeries> {
    for s in w1.terms().map(|(s, _)| s) {
        check_index(spec, s.omega)?;
    }
    let mut it = Iterate {
        base: Base::Intertwiner(spec),
        omega2: spec.omega2(),
        offset: spec.offset(),
        memo: HashMap::new(),
    };
    run(&mut it, w1, w2, window)
}

fn run(it: &mut Iterate<'_>, w1: &ModuleVector, w2: &ModuleVector, window: &TruncationWindow) -> Result<LogSeries> {
    let k_min = window.k_min.min(-(level(w1) + level(w2)));
    let mut out = LogSeries::zero(it.offset.clone(), open_window(k_min, window.k_max));
    for (FockState { partition, omega }, c) in w1.terms() {
        let y = it.apply(partition, *omega, w2, window.k_max)?;
        accumulate_into(&mut out, &y, 0, c, Clone::clone);
    }
    Ok(out)
}

/// The vertex operator `Y(v, x) w` of the algebra `M(1)_a`, for `v` in the
/// algebra (one-dimensional vacuum space) and `w` in any module with vacuum
/// space `omega`. The result is log-free with offset 0.
pub fn vertex_operator_apply(
    v: &ModuleVector,
    w: &ModuleVector,
    omega: &OmegaSpec,
    window: &TruncationWindow,
) -> Result<LogSeries> {
    if v.terms().any(|(s, _)| s.omega != 0) {
        return Err(Error::InvalidArgument(
            "vertex operator argument must lie in the algebra".into(),
        ));
    }
    let mut it = Iterate {
        base: Base::Vertex,
        omega2: omega,
        offset: Rational::zero(),
        memo: HashMap::new(),
    };
    run(&mut it, v, w, window)
}
