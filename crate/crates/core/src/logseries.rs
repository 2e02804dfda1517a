//! Truncated series `sum c_{k,j} x^(offset+k) log^j(x)` with module-vector
//! coefficients.
//!
//! A series is exactly zero below `k_min` and exact on `[k_min, k_max]`.
//! Above `k_max` nothing is known unless the window is `closed`, meaning the
//! series is finite and every omitted coefficient is zero. Log powers above
//! `max_log` are zero, except for a `log_cut` series, where they were
//! discarded and are unknown.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fock::{apply_h, apply_l, ModuleVector, OmegaSpec};
use crate::scalar::{int, to_integer, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationWindow {
    pub k_min: i64,
    pub k_max: i64,
    pub max_log: u32,
    /// Coefficients above `k_max` are known to vanish.
    pub closed: bool,
    /// Log powers above `max_log` were discarded.
    pub log_cut: bool,
}

impl TruncationWindow {
    pub fn new(k_min: i64, k_max: i64, max_log: u32) -> Result<Self> {
        if k_min > k_max {
            return Err(Error::InvalidArgument(format!(
                "window needs k_min <= k_max, got [{k_min}, {k_max}]"
            )));
        }
        Ok(TruncationWindow {
            k_min,
            k_max,
            max_log,
            closed: false,
            log_cut: false,
        })
    }

    /// `[-span, span]`.
    pub fn symmetric(span: i64, max_log: u32) -> Result<Self> {
        Self::new(-span, span, max_log)
    }

    pub fn closed(mut self) -> Self {
        self.closed = true;
        self
    }

    pub fn contains(&self, k: i64, j: u32) -> bool {
        k >= self.k_min && k <= self.k_max && (j <= self.max_log || !self.log_cut)
    }

    fn exceeded(&self, k: i64, j: u32) -> Error {
        Error::WindowExceeded {
            k,
            j,
            k_min: self.k_min,
            k_max: self.k_max,
            max_log: self.max_log,
        }
    }
}

impl fmt::Display for TruncationWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k in [{}, {}]", self.k_min, self.k_max)?;
        if self.closed {
            write!(f, " (closed)")?;
        }
        write!(f, ", log <= {}", self.max_log)?;
        if self.log_cut {
            write!(f, " (cut)")?;
        }
        Ok(())
    }
}

/// First coefficient at which two series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub k: i64,
    pub j: u32,
    pub exponent: Rational,
    pub difference: ModuleVector,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^({}) log^{} : {}", self.exponent, self.j, self.difference)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LogSeries {
    offset: Rational,
    window: TruncationWindow,
    coeffs: BTreeMap<(i64, u32), ModuleVector>,
}

/// A mode acting coefficientwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    H(i64),
    L(i64),
}

impl LogSeries {
    pub fn zero(offset: Rational, window: TruncationWindow) -> Self {
        LogSeries {
            offset,
            window,
            coeffs: BTreeMap::new(),
        }
    }

    /// `x^offset v` as a finite exact series.
    pub fn constant(offset: Rational, v: ModuleVector) -> Self {
        let mut s = Self::zero(offset, TruncationWindow::new(0, 0, 0).expect("valid").closed());
        s.coeffs.insert((0, 0), v);
        s.coeffs.retain(|_, v| !v.is_zero());
        s
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn window(&self) -> TruncationWindow {
        self.window
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &ModuleVector)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c * v` at `x^(offset+k) log^j`. Terms above the truncation are
    /// dropped; terms below `k_min` are an error.
    pub fn accumulate(&mut self, k: i64, j: u32, v: &ModuleVector, c: &Rational) -> Result<()> {
        if c.is_zero() || v.is_zero() {
            return Ok(());
        }
        if k < self.window.k_min || (self.window.closed && k > self.window.k_max) {
            return Err(self.window.exceeded(k, j));
        }
        if k > self.window.k_max {
            return Ok(());
        }
        if j > self.window.max_log {
            if self.window.log_cut {
                return Ok(());
            }
            self.window.max_log = j;
        }
        let e = self.coeffs.entry((k, j)).or_default();
        e.add_scaled(v, c);
        if e.is_zero() {
            self.coeffs.remove(&(k, j));
        }
        Ok(())
    }

    /// Coefficient of `x^(offset+k) log^j`.
    pub fn coefficient(&self, k: i64, j: u32) -> Result<ModuleVector> {
        let w = &self.window;
        if k < w.k_min || k > w.k_max || (w.log_cut && j > w.max_log) {
            return Err(w.exceeded(k, j));
        }
        Ok(self.coeffs.get(&(k, j)).cloned().unwrap_or_default())
    }

    /// Highest log power with a nonzero coefficient.
    pub fn depth(&self) -> u32 {
        self.coeffs.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> LogSeries {
        let mut out = Self::zero(self.offset.clone(), self.window);
        if c.is_zero() {
            return out;
        }
        out.coeffs = self
            .coeffs
            .iter()
            .map(|(key, v)| (*key, v.scale(c)))
            .collect();
        out
    }

    /// Coefficientwise linear map; the window is unchanged.
    pub fn map_coefficients<F>(&self, mut f: F) -> LogSeries
    where
        F: FnMut(&ModuleVector) -> ModuleVector,
    {
        let mut out = Self::zero(self.offset.clone(), self.window);
        for (key, v) in &self.coeffs {
            let w = f(v);
            if !w.is_zero() {
                out.coeffs.insert(*key, w);
            }
        }
        out
    }

    pub fn apply_mode(&self, mode: Mode, omega: &OmegaSpec, a: &Rational) -> LogSeries {
        match mode {
            Mode::H(n) => self.map_coefficients(|v| apply_h(n, v, omega)),
            Mode::L(n) => self.map_coefficients(|v| apply_l(n, v, omega, a)),
        }
    }

    /// Multiplies by `x^n`, `n` an integer.
    pub fn shift(&self, n: i64) -> LogSeries {
        let mut w = self.window;
        w.k_min += n;
        w.k_max += n;
        LogSeries {
            offset: self.offset.clone(),
            window: w,
            coeffs: self.coeffs.iter().map(|(&(k, j), v)| ((k + n, j), v.clone())).collect(),
        }
    }

    /// Same series with the offset moved by the integer `d` (indices shift by `-d`).
    fn rebased(&self, offset: &Rational) -> Result<LogSeries> {
        let d = to_integer(&(offset - &self.offset)).ok_or_else(|| Error::IncompatibleOffset {
            left: offset.clone(),
            right: self.offset.clone(),
        })?;
        let mut s = self.shift(-d);
        s.offset = offset.clone();
        Ok(s)
    }

    /// Sum on the common valid window, expressed with `self`'s offset.
    pub fn add(&self, other: &LogSeries) -> Result<LogSeries> {
        let t = other.rebased(&self.offset)?;
        let (a, b) = (self.window, t.window);
        let k_max = match (a.closed, b.closed) {
            (true, true) => a.k_max.max(b.k_max),
            (true, false) => b.k_max,
            (false, true) => a.k_max,
            (false, false) => a.k_max.min(b.k_max),
        };
        let log_cut = a.log_cut || b.log_cut;
        let max_log = match (a.log_cut, b.log_cut) {
            (true, true) => a.max_log.min(b.max_log),
            (true, false) => a.max_log,
            (false, true) => b.max_log,
            (false, false) => a.max_log.max(b.max_log),
        };
        let k_min = a.k_min.min(b.k_min);
        let window = TruncationWindow {
            k_min,
            k_max: k_max.max(k_min),
            max_log,
            closed: a.closed && b.closed,
            log_cut,
        };
        let mut out = Self::zero(self.offset.clone(), window);
        for ((k, j), v) in self.coeffs.iter().chain(t.coeffs.iter()) {
            if *k <= window.k_max && (!log_cut || *j <= max_log) {
                out.accumulate(*k, *j, v, &Rational::one())?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LogSeries) -> Result<LogSeries> {
        self.add(&other.scale(&int(-1)))
    }

    /// `d/dx`, with `d/dx log(x) = 1/x`.
    pub fn ddx(&self) -> LogSeries {
        let mut w = self.window;
        w.k_min -= 1;
        w.k_max -= 1;
        if w.log_cut {
            // log^max_log of the derivative would need the discarded
            // log^(max_log+1). With max_log = 0 nothing stays valid; callers
            // of cut series must not differentiate at cutoff 1.
            w.max_log = w.max_log.saturating_sub(1);
        }
        let mut out = Self::zero(self.offset.clone(), w);
        for (&(k, j), v) in &self.coeffs {
            let e = &self.offset + int(k);
            out.accumulate(k - 1, j, v, &e).expect("inside shifted window");
            if j > 0 {
                out.accumulate(k - 1, j - 1, v, &int(j as i64))
                    .expect("inside shifted window");
            }
        }
        out
    }

    /// `d/d(log x)`: the coefficient of `log^j` becomes `(j+1) c_{j+1}`.
    pub fn dlog(&self) -> LogSeries {
        let mut w = self.window;
        w.max_log = w.max_log.saturating_sub(1);
        let mut out = Self::zero(self.offset.clone(), w);
        for (&(k, j), v) in &self.coeffs {
            if j > 0 {
                out.accumulate(k, j - 1, v, &int(j as i64))
                    .expect("inside window");
            }
        }
        out
    }

    /// Restricts to a narrower window.
    pub fn restrict(&self, k_max: i64) -> LogSeries {
        let mut w = self.window;
        if k_max < w.k_max || w.closed {
            w.k_max = k_max.max(w.k_min);
            w.closed = false;
        }
        let mut out = Self::zero(self.offset.clone(), w);
        for (&(k, j), v) in &self.coeffs {
            if k <= w.k_max {
                out.coeffs.insert((k, j), v.clone());
            }
        }
        out
    }

    /// First differing coefficient on the common valid window, if any.
    pub fn first_difference(&self, other: &LogSeries) -> Result<Option<Witness>> {
        let d = self.sub(other)?;
        Ok(d.coeffs.iter().next().map(|(&(k, j), v)| Witness {
            k,
            j,
            exponent: &d.offset + int(k),
            difference: v.clone(),
        }))
    }

    /// Lines `x^(offset+k) log^j : <vector>`.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (&(k, j), v) in &self.coeffs {
            out.push_str(&format!("x^({}+{}) log^{} : {}\n", self.offset, k, j, v));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(&(k, j), v)| json!({"k": k, "log": j, "vector": v.to_lines()}))
            .collect();
        json!({
            "offset": self.offset.to_string(),
            "window": window_json(&self.window),
            "terms": terms,
        })
    }
}

pub fn window_json(w: &TruncationWindow) -> Value {
    json!({
        "k_min": w.k_min,
        "k_max": w.k_max,
        "max_log": w.max_log,
        "closed": w.closed,
        "log_cut": w.log_cut,
    })
}

impl fmt::Display for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0  [{}]", self.window);
        }
        write!(f, "{}", self.to_lines().trim_end())
    }
}

impl fmt::Debug for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LogSeries[offset {}; {}]", self.offset, self.window)?;
        write!(f, "{}", self.to_lines())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn v() -> ModuleVector {
        ModuleVector::monomial(&[1], 0).unwrap()
    }

    fn single(offset: Rational, k: i64, j: u32) -> LogSeries {
        let mut s = LogSeries::zero(offset, TruncationWindow::symmetric(4, 3).unwrap());
        s.accumulate(k, j, &v(), &int(1)).unwrap();
        s
    }

    #[test]
    fn add_examples() {
        let s = single(rat(1, 2), 0, 0);
        let z = LogSeries::zero(rat(1, 2), s.window());
        assert_eq!(s.add(&z).unwrap(), s);
        let t = single(rat(1, 2), 1, 0);
        assert_eq!(s.add(&t).unwrap().len(), 2);
        let u = single(rat(1, 3), 0, 0);
        assert!(matches!(s.add(&u), Err(Error::IncompatibleOffset { .. })));
        // integer offset difference rebases
        let w = single(rat(3, 2), 0, 0);
        let sum = s.add(&w).unwrap();
        assert_eq!(sum.coefficient(1, 0).unwrap(), v());
    }

    #[test]
    fn ddx_examples() {
        let d = rat(2, 3);
        let s = single(d.clone(), 0, 1).ddx();
        assert_eq!(s.coefficient(-1, 1).unwrap(), v().scale(&d));
        assert_eq!(s.coefficient(-1, 0).unwrap(), v());
        assert!(LogSeries::constant(int(0), v()).ddx().is_zero());
        let s = single(int(0), 0, 2).ddx();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(-1, 1).unwrap(), v().scale(&int(2)));
        assert_eq!(s.window().k_max, 3);
    }

    #[test]
    fn coefficient_window() {
        let s = single(int(0), 0, 0);
        assert!(s.coefficient(2, 0).unwrap().is_zero());
        assert!(matches!(s.coefficient(5, 0), Err(Error::WindowExceeded { .. })));
        assert!(matches!(s.coefficient(-5, 0), Err(Error::WindowExceeded { .. })));
    }

    #[test]
    fn depth_and_modes() {
        assert_eq!(LogSeries::zero(int(0), TruncationWindow::symmetric(1, 0).unwrap()).depth(), 0);
        assert_eq!(single(int(0), 1, 2).depth(), 2);
        let o = OmegaSpec::one_dim(rat(1, 2));
        let s = single(int(0), 1, 2);
        assert!(s.apply_mode(Mode::H(3), &o, &int(0)).is_zero());
        assert_eq!(s.apply_mode(Mode::H(0), &o, &int(0)), s.scale(&rat(1, 2)));
    }

    #[test]
    fn truncated_sum_window() {
        let mut a = single(int(0), 0, 0);
        a.window.k_max = 2;
        let b = LogSeries::constant(int(5), v());
        let s = a.add(&b).unwrap();
        assert_eq!(s.window().k_max, 2);
        assert!(s.coefficient(5, 0).is_err());
        let c = LogSeries::constant(int(0), v()).add(&LogSeries::constant(int(3), v())).unwrap();
        assert!(c.window().closed);
        assert_eq!(c.window().k_max, 3);
    }
}
