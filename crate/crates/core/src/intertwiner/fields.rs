//! The building blocks of the explicit operator: the antiderivative fields
//! `int+` and `int-`, the exponentials `E+` and `E-`, and the Jordan factor
//! `x^(lambda h_s(0)) e^(lambda log(x) h_n(0))`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{apply_h, ModuleVector, OmegaSpec, Partition};
use crate::logseries::{LogSeries, TruncationWindow};
use crate::scalar::{binomial, factorial, int, pow, rat, Rational};

fn require_closed(s: &LogSeries, what: &str) -> Result<()> {
    if s.window().closed {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} needs a finite exact input series"
        )))
    }
}

fn max_level(s: &LogSeries) -> i64 {
    s.terms()
        .filter_map(|(_, v)| v.max_level())
        .max()
        .unwrap_or(0) as i64
}

/// Window of an annihilation step: terms may move down by at most the level.
fn lowered_window(s: &LogSeries) -> TruncationWindow {
    let mut w = s.window();
    w.k_min -= max_level(s);
    w
}

/// One application of `int+ h(x) = h(0) log(x) + sum_{m>0} h(m) x^(-m) / (-m)`.
fn int_plus_once(s: &LogSeries, omega: &OmegaSpec) -> LogSeries {
    let mut out = LogSeries::zero(s.offset().clone(), lowered_window(s));
    for (&(k, j), v) in s.terms() {
        out.accumulate(k, j + 1, &apply_h(0, v, omega), &Rational::one())
            .expect("within window");
        for m in 1..=v.max_part() as i64 {
            out.accumulate(k - m, j, &apply_h(m, v, omega), &rat(-1, m))
                .expect("within window");
        }
    }
    out
}

/// `(int+ h(x))^power / power!` on a finite exact series.
pub fn int_plus_apply(s: &LogSeries, omega: &OmegaSpec, power: u32) -> Result<LogSeries> {
    if power == 0 {
        return Ok(s.clone());
    }
    require_closed(s, "int+")?;
    let mut cur = s.clone();
    for r in 1..=power {
        cur = int_plus_once(&cur, omega).scale(&rat(1, r as i64));
    }
    Ok(cur)
}

/// `E+(lambda, x) = exp(sum_{m>0} lambda h(m) x^(-m) / (-m))` on a finite
/// exact series. Terminates because annihilators lower the level.
pub fn e_plus_apply(lambda: &Rational, s: &LogSeries, omega: &OmegaSpec) -> Result<LogSeries> {
    if lambda.is_zero() {
        return Ok(s.clone());
    }
    require_closed(s, "E+")?;
    let window = lowered_window(s);
    let mut total = s.clone();
    let mut term = s.clone();
    let mut r = 1i64;
    loop {
        let mut next = LogSeries::zero(s.offset().clone(), window);
        for (&(k, j), v) in term.terms() {
            for m in 1..=v.max_part() as i64 {
                let c = -(lambda / int(m)) / int(r);
                next.accumulate(k - m, j, &apply_h(m, v, omega), &c)
                    .expect("within window");
            }
        }
        if next.is_zero() {
            break;
        }
        total = total.add(&next)?;
        term = next;
        r += 1;
    }
    Ok(total)
}

/// `x^(lambda nu) sum_r (lambda log x)^r N^r / r!` where `h(0) = nu + N` on
/// `omega`. The offset moves by `lambda nu`; the window is unchanged.
pub fn jordan_exp_apply(lambda: &Rational, omega: &OmegaSpec, s: &LogSeries) -> LogSeries {
    let offset = s.offset() + lambda * omega.eigenvalue();
    let mut out = LogSeries::zero(offset, s.window());
    for (&(k, j), v) in s.terms() {
        let mut cur = v.clone();
        let mut r = 0u32;
        while !cur.is_zero() {
            let c = pow(lambda, r) / factorial(r);
            out.accumulate(k, j + r, &cur, &c).expect("within window");
            if lambda.is_zero() {
                break;
            }
            cur = cur.map_omega(|b| omega.nilpotent_column(b));
            r += 1;
        }
    }
    out
}

/// Creation monomials of `(int- h(x))^j / j! * E-(lambda, x)` up to total
/// size `max_size`: pairs `(mu, c_mu)` meaning `c_mu h(-mu) x^|mu|`.
///
/// With `int- = sum_{n>0} h(-n) x^n / n` all modes commute, so the product
/// is `sum_l lambda^(l-j) binom(l, j) S^l / l!` and
/// `S^l / l! = sum_{len(mu)=l} prod_n (1/n)^(a_n) / a_n!`.
pub fn creation_monomials(lambda: &Rational, j: u32, max_size: u32) -> Vec<(Partition, Rational)> {
    let mut out = Vec::new();
    for size in 0..=max_size {
        for mu in Partition::all_of_size(size) {
            let l = mu.len() as u32;
            if l < j {
                continue;
            }
            let lam = pow(lambda, l - j);
            if lam.is_zero() {
                continue;
            }
            let mut c = binomial(l as i64, j) * lam;
            for (n, a) in mu.multiplicities() {
                c = c / (pow(&int(n as i64), a) * factorial(a));
            }
            out.push((mu, c));
        }
    }
    out
}

/// `(int- h(x))^j / j! * E-(lambda, x)` applied to `s`, truncated at `k_max`.
pub fn creation_apply(lambda: &Rational, j: u32, s: &LogSeries, k_max: i64) -> LogSeries {
    if j == 0 && lambda.is_zero() {
        return s.clone();
    }
    let sw = s.window();
    let top = if sw.closed { k_max } else { k_max.min(sw.k_max) };
    let window = TruncationWindow {
        k_min: sw.k_min,
        k_max: top.max(sw.k_min),
        max_log: sw.max_log,
        closed: false,
        log_cut: sw.log_cut,
    };
    let mut out = LogSeries::zero(s.offset().clone(), window);
    let lowest = s.terms().map(|(&(k, _), _)| k).min();
    let Some(lowest) = lowest else {
        return out;
    };
    if lowest > window.k_max {
        return out;
    }
    let monos = creation_monomials(lambda, j, (window.k_max - lowest) as u32);
    for (&(k, jl), v) in s.terms() {
        for (mu, c) in &monos {
            let kk = k + mu.size() as i64;
            if kk > window.k_max {
                continue;
            }
            out.accumulate(kk, jl, &v.create(mu), c).expect("within window");
        }
    }
    out
}

/// `(int- h(x))^power / power!` truncated at `k_max`.
pub fn int_minus_apply(s: &LogSeries, power: u32, k_max: i64) -> LogSeries {
    creation_apply(&Rational::zero(), power, s, k_max)
}

/// `E-(lambda, x)` truncated at `k_max`.
pub fn e_minus_apply(lambda: &Rational, s: &LogSeries, k_max: i64) -> LogSeries {
    creation_apply(lambda, 0, s, k_max)
}

/// `T(w_l)`: the Omega leg `e_b` goes to `sum_c T[c][l * dim2 + b] e_c`.
pub fn apply_t(t: &crate::linalg::QMatrix, l: usize, dim2: usize, v: &ModuleVector) -> ModuleVector {
    v.map_omega(|b| {
        let col = l * dim2 + b;
        (0..t.rows())
            .filter_map(|c| {
                let x = &t[(c, col)];
                (!x.is_zero()).then(|| (c, x.clone()))
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vac_series() -> LogSeries {
        LogSeries::constant(int(0), ModuleVector::vacuum(0))
    }

    /// `int-` applied one mode at a time.
    fn int_minus_once(s: &LogSeries, k_max: i64) -> LogSeries {
        let mut w = s.window();
        w.closed = false;
        w.k_max = k_max;
        let mut out = LogSeries::zero(s.offset().clone(), w);
        let o = OmegaSpec::one_dim(int(0));
        for (&(k, j), v) in s.terms() {
            for n in 1..=(k_max - k) {
                out.accumulate(k + n, j, &apply_h(-n, v, &o), &rat(1, n)).unwrap();
            }
        }
        out
    }

    #[test]
    fn identities_at_power_zero() {
        let o = OmegaSpec::one_dim(rat(1, 2));
        let s = LogSeries::constant(int(0), ModuleVector::monomial(&[2, 1], 0).unwrap());
        assert_eq!(int_plus_apply(&s, &o, 0).unwrap(), s);
        assert_eq!(int_minus_apply(&s, 0, 5), s);
        assert_eq!(e_plus_apply(&int(0), &s, &o).unwrap(), s);
        assert_eq!(e_minus_apply(&int(0), &s, 5), s);
        let j = jordan_exp_apply(&int(0), &OmegaSpec::block(int(3), 2).unwrap(), &s);
        assert_eq!(j, s);
    }

    #[test]
    fn int_plus_examples() {
        let nu = rat(3, 4);
        let o = OmegaSpec::one_dim(nu.clone());
        let r = int_plus_apply(&vac_series(), &o, 1).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient(0, 1).unwrap(), ModuleVector::vacuum(0).scale(&nu));

        let o = OmegaSpec::one_dim(int(0));
        let s = LogSeries::constant(int(0), ModuleVector::monomial(&[2], 0).unwrap());
        let r = int_plus_apply(&s, &o, 1).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient(-2, 0).unwrap(), ModuleVector::vacuum(0).scale(&int(-1)));
    }

    #[test]
    fn int_minus_examples() {
        let r = int_minus_apply(&vac_series(), 1, 4);
        assert_eq!(r.coefficient(1, 0).unwrap(), ModuleVector::monomial(&[1], 0).unwrap());
        // (int-)^2 / 2 = (h(-1) x + h(-2) x^2 / 2 + ...)^2 / 2
        let r = int_minus_apply(&vac_series(), 2, 4);
        let sq = ModuleVector::monomial(&[1, 1], 0).unwrap().scale(&rat(1, 2));
        assert!(r.coefficient(1, 0).unwrap().is_zero());
        assert_eq!(r.coefficient(2, 0).unwrap(), sq);
        let x3 = ModuleVector::monomial(&[2, 1], 0).unwrap().scale(&rat(1, 2));
        assert_eq!(r.coefficient(3, 0).unwrap(), x3);
        // the mixed term h(-2)/2 appears at x^2 in exp(int-) instead
        let e = e_minus_apply(&int(1), &vac_series(), 4);
        let mut want = sq.clone();
        want.add_scaled(&ModuleVector::monomial(&[2], 0).unwrap(), &rat(1, 2));
        assert_eq!(e.coefficient(2, 0).unwrap(), want);
    }

    #[test]
    fn exponential_examples() {
        let lam = rat(2, 3);
        let o = OmegaSpec::one_dim(int(1));
        assert_eq!(e_plus_apply(&lam, &vac_series(), &o).unwrap(), vac_series());
        let r = e_minus_apply(&lam, &vac_series(), 3);
        assert_eq!(
            r.coefficient(1, 0).unwrap(),
            ModuleVector::monomial(&[1], 0).unwrap().scale(&lam)
        );
    }

    #[test]
    fn jordan_exp_examples() {
        let lam = rat(1, 2);
        let o = OmegaSpec::one_dim(int(3));
        let r = jordan_exp_apply(&lam, &o, &vac_series());
        assert_eq!(r.offset(), &rat(3, 2));
        assert_eq!(r.len(), 1);

        let nu = int(-2);
        let o = OmegaSpec::block(nu.clone(), 2).unwrap();
        let s = LogSeries::constant(int(0), ModuleVector::vacuum(1));
        let r = jordan_exp_apply(&lam, &o, &s);
        assert_eq!(r.offset(), &(&lam * &nu));
        assert_eq!(r.coefficient(0, 0).unwrap(), ModuleVector::vacuum(1));
        assert_eq!(r.coefficient(0, 1).unwrap(), ModuleVector::vacuum(0).scale(&lam));
    }

    #[test]
    fn collapsed_creation_matches_stepwise() {
        let k_max = 6;
        for lam in [int(0), int(1), rat(-3, 2)] {
            for j in 0..3u32 {
                let start = LogSeries::constant(int(0), ModuleVector::monomial(&[1], 0).unwrap());
                // E-(lambda) = sum_r lambda^r (int-)^r / r!
                let mut e = LogSeries::zero(int(0), start.window());
                let mut p = start.clone();
                for r in 0..=k_max as u32 {
                    e = e.add(&p.scale(&pow(&lam, r))).unwrap();
                    p = int_minus_once(&p, k_max).scale(&rat(1, r as i64 + 1));
                }
                let mut want = e;
                for r in 0..j {
                    want = int_minus_once(&want, k_max).scale(&rat(1, r as i64 + 1));
                }
                let got = creation_apply(&lam, j, &start, k_max);
                assert_eq!(got.first_difference(&want).unwrap(), None, "lambda={lam} j={j}");
            }
        }
    }

    #[test]
    fn annihilators_need_exact_input() {
        let o = OmegaSpec::one_dim(int(1));
        let s = int_minus_apply(&vac_series(), 1, 3);
        assert!(int_plus_apply(&s, &o, 1).is_err());
        assert!(e_plus_apply(&int(1), &s, &o).is_err());
    }
}
