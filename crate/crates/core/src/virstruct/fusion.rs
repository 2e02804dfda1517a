use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::fock::{apply_h, ModuleVector, OmegaSpec};
use crate::intertwiner::{intertwiner_apply, is_equivariant, vertex_operator_apply, IntertwinerSpec};
use crate::intertwiner::CheckOutcome;
use crate::linalg::QMatrix;
use crate::logseries::{LogSeries, TruncationWindow};
use crate::scalar::{partition_count, rat, Rational};

use super::{chain_vector, singular_vector, vir_submodule};

/// Graded dimension of the generated span against the `c = 1` characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionLevel {
    pub weight: u32,
    pub computed: usize,
    pub expected: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionReport {
    pub m: u32,
    pub n: u32,
    pub weight_bound: u32,
    /// Predicted summands `L(1, k^2)`.
    pub ks: Vec<u32>,
    pub levels: Vec<FusionLevel>,
}

impl FusionReport {
    pub fn pass(&self) -> bool {
        self.levels
            .iter()
            .all(|l| BigInt::from(l.computed) == l.expected)
    }

    pub fn first_mismatch(&self) -> Option<&FusionLevel> {
        self.levels
            .iter()
            .find(|l| BigInt::from(l.computed) != l.expected)
    }
}

/// `dim L(1, k^2)` at weight `d`: `p(d - k^2) - p(d - (k+1)^2)`.
fn irreducible_dim(k: u32, d: u32) -> BigInt {
    let d = d as i64;
    let k = k as i64;
    partition_count(d - k * k) - partition_count(d - (k + 1) * (k + 1))
}

/// Spans the Virasoro submodule of all coefficients of `Y(u^n, x) u^m` up to
/// weight `weight_bound` and compares graded dimensions with
/// `sum_k L(1, k^2)`, `k = |m-n|, |m-n|+2, ..., m+n`.
pub fn fusion_span_check(m: u32, n: u32, weight_bound: u32) -> Result<FusionReport> {
    let omega = OmegaSpec::one_dim(Rational::zero());
    let a = Rational::zero();
    let un = singular_vector(n)?;
    let um = singular_vector(m)?;
    let base = (m * m + n * n) as i64;
    let k_max = weight_bound as i64 - base;
    let ks: Vec<u32> = (m.abs_diff(n)..=m + n).step_by(2).collect();
    let mut gens = Vec::new();
    if k_max >= -base {
        let window = TruncationWindow::new(-base, k_max, 0)?;
        let y = vertex_operator_apply(&un, &um, &omega, &window)?;
        gens.extend(y.terms().map(|(_, v)| v.clone()));
    }
    let sub = vir_submodule(&gens, &omega, &a, weight_bound);
    let levels = (0..=weight_bound)
        .map(|d| FusionLevel {
            weight: d,
            computed: sub.level_dim(d),
            expected: ks.iter().map(|&k| irreducible_dim(k, d)).sum(),
        })
        .collect();
    Ok(FusionReport {
        m,
        n,
        weight_bound,
        ks,
        levels,
    })
}

/// `(a = 0)`: `Omega_1 = Omega_2` a nilpotent block of size 2, `Omega_3` of
/// size 3, and `T` sending `w2 w2 -> v3`, `w2 w1 -> v2/2`, `w1 w2 -> v2/2`,
/// `w1 w1 -> v1/2`.
pub fn hidden_spec() -> Result<IntertwinerSpec> {
    let t = hidden_t();
    let o2 = OmegaSpec::block(Rational::zero(), 2)?;
    let o3 = OmegaSpec::block(Rational::zero(), 3)?;
    IntertwinerSpec::new(Rational::zero(), o2.clone(), o2, o3, t)
}

fn hidden_t() -> QMatrix {
    let half = rat(1, 2);
    let mut t = QMatrix::zeros(3, 4);
    t[(2, 3)] = Rational::from_integer(1.into());
    t[(1, 2)] = half.clone();
    t[(1, 1)] = half.clone();
    t[(0, 0)] = half;
    t
}

#[derive(Clone, Debug)]
pub struct HiddenReport {
    pub m: u32,
    pub n: u32,
    pub equivariant: bool,
    /// Depth of `Y(u^{2,m}, x) u^{2,n}`.
    pub depth: u32,
    /// First nonzero `log^1` coefficient `(k, value)`.
    pub log1_witness: Option<(i64, ModuleVector)>,
    /// `(m', n', depth)` for `Y(u^{m'}, x) u^{n'}`, `m' = m +- 1`, `n' = n +- 1`.
    pub log_free: Vec<(u32, u32, u32)>,
    /// `h(0) Y(u^{2,m}) u^{2,n} = Y(u^m) u^{2,n} + Y(u^{2,m}) u^n`.
    pub filtration: CheckOutcome,
}

impl HiddenReport {
    pub fn pass(&self) -> bool {
        self.equivariant
            && self.depth == 1
            && self.log1_witness.is_some()
            && self.log_free.iter().all(|&(_, _, d)| d == 0)
            && self.filtration.pass
    }
}

fn neighbours(m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    if m > 0 {
        out.push(m - 1);
    }
    out.push(m + 1);
    out
}

/// Checks the hidden operator on `(u^{2,m}, u^{2,n})`. The window is taken
/// in units of `x` around the offset `0`; log powers are unbounded.
pub fn hidden_intertwiner_check(m: u32, n: u32, window: &TruncationWindow) -> Result<HiddenReport> {
    let spec = hidden_spec()?;
    let o2 = spec.omega2().clone();
    let u2m = chain_vector(m, 2, &o2)?;
    let u2n = chain_vector(n, 2, &o2)?;
    let y = intertwiner_apply(&spec, &u2m, &u2n, window)?;
    let log1_witness = y
        .terms()
        .find(|((_, j), v)| *j == 1 && !v.is_zero())
        .map(|((k, _), v)| (*k, v.clone()));

    let mut log_free = Vec::new();
    for mp in neighbours(m) {
        for np in neighbours(n) {
            let s = intertwiner_apply(
                &spec,
                &chain_vector(mp, 1, &o2)?,
                &chain_vector(np, 1, &o2)?,
                window,
            )?;
            log_free.push((mp, np, s.depth()));
        }
    }

    let o3 = spec.omega3().clone();
    let lhs: LogSeries = y.map_coefficients(|v| apply_h(0, v, &o3));
    let rhs = intertwiner_apply(&spec, &chain_vector(m, 1, &o2)?, &u2n, window)?
        .add(&intertwiner_apply(&spec, &u2m, &chain_vector(n, 1, &o2)?, window)?)?;
    let filtration = CheckOutcome::from_difference(&lhs, &rhs)?;

    Ok(HiddenReport {
        m,
        n,
        equivariant: is_equivariant(spec.t(), spec.omega1(), spec.omega2(), spec.omega3()),
        depth: y.depth(),
        log1_witness,
        log_free,
        filtration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_map_is_equivariant() {
        let s = hidden_spec().unwrap();
        assert!(is_equivariant(s.t(), s.omega1(), s.omega2(), s.omega3()));
        let mut bad = hidden_t();
        bad[(1, 1)] = Rational::zero();
        assert!(!is_equivariant(&bad, s.omega1(), s.omega2(), s.omega3()));
    }

    #[test]
    fn hidden_depth_one() {
        let w = TruncationWindow::symmetric(6, 0).unwrap();
        let r = hidden_intertwiner_check(0, 0, &w).unwrap();
        assert!(r.pass(), "{r:?}");
        let r = hidden_intertwiner_check(1, 0, &TruncationWindow::symmetric(3, 0).unwrap()).unwrap();
        assert!(r.filtration.pass);
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn fusion_small() {
        let r = fusion_span_check(0, 0, 4).unwrap();
        assert_eq!(r.ks, vec![0]);
        assert!(r.pass());
        let r = fusion_span_check(1, 1, 6).unwrap();
        assert_eq!(r.ks, vec![0, 2]);
        assert!(r.pass(), "{:?}", r.first_mismatch());
    }
}
