//! Heisenberg and Virasoro mode actions on `M(1)_a (x) Omega`.

use num_traits::Zero;

use crate::scalar::{int, rat, Rational};

use super::omega::OmegaSpec;
use super::vector::{FockState, ModuleVector};

/// `h(n)` on one basis state, accumulated into `out` with weight `c`.
fn h_state_into(n: i64, s: &FockState, c: &Rational, omega: &OmegaSpec, out: &mut ModuleVector) {
    match n {
        n if n < 0 => {
            let p = s.partition.with_part((-n) as u32);
            out.add_term(FockState::new(p, s.omega), c);
        }
        0 => {
            let lambda = omega.eigenvalue();
            if !lambda.is_zero() {
                out.add_term(s.clone(), &(c * lambda));
            }
            for (i, x) in omega.nilpotent_column(s.omega) {
                out.add_term(FockState::new(s.partition.clone(), i), &(c * x));
            }
        }
        n => {
            let n = n as u32;
            let mult = s.partition.multiplicity(n);
            if mult > 0 {
                let p = s.partition.without_part(n).expect("part present");
                out.add_term(FockState::new(p, s.omega), &(c * int((n * mult) as i64)));
            }
        }
    }
}

/// `h(n) v`.
pub fn apply_h(n: i64, v: &ModuleVector, omega: &OmegaSpec) -> ModuleVector {
    let mut out = ModuleVector::zero();
    for (s, c) in v.terms() {
        h_state_into(n, s, c, omega, &mut out);
    }
    out
}

/// `L(n) = 1/2 sum_j :h(j) h(n-j): - a (n+1) h(n)`, annihilators on the right.
pub fn apply_l(n: i64, v: &ModuleVector, omega: &OmegaSpec, a: &Rational) -> ModuleVector {
    let half = rat(1, 2);
    let mut out = ModuleVector::zero();
    for (s, c) in v.terms() {
        let m0 = s.partition.max_part() as i64;
        let half_c = c * &half;
        for j in (n - m0)..=m0 {
            let (p, q) = if j <= n - j { (j, n - j) } else { (n - j, j) };
            let mut tmp = ModuleVector::zero();
            h_state_into(q, s, &half_c, omega, &mut tmp);
            for (t, x) in tmp.terms() {
                h_state_into(p, t, x, omega, &mut out);
            }
        }
        if !a.is_zero() {
            let coef = -(a * int(n + 1)) * c;
            if !coef.is_zero() {
                h_state_into(n, s, &coef, omega, &mut out);
            }
        }
    }
    out
}
