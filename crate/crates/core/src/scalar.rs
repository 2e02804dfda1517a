//! Exact rational scalars and the closed-form numeric facts of the Heisenberg
//! VOA `M(1)_a`: central charge, lowest conformal weights, and the `1/eta`
//! character.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Every scalar in the crate. Always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. The sign belongs on the numerator; a signed or zero
/// denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    match den {
        None => Ok(Rational::from_integer(num)),
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(bad());
            }
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, d))
        }
    }
}

/// Prints `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// `r` as an integer, if it is one.
pub fn to_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        i64::try_from(r.to_integer()).ok()
    } else {
        None
    }
}

/// `c = 1 - 12 a^2`.
pub fn central_charge(a: &Rational) -> Rational {
    int(1) - int(12) * a * a
}

/// Lowest conformal weight `lambda^2/2 - a lambda` of `M(1, lambda)_a`.
pub fn lowest_weight(lambda: &Rational, a: &Rational) -> Rational {
    lambda * lambda / int(2) - a * lambda
}

/// The contragredient of `M(1,lambda)_a` is `M(1, 2a - lambda)_a`; both must
/// share a lowest weight.
pub fn contragredient_weight_identity(lambda: &Rational, a: &Rational) -> bool {
    let dual = int(2) * a - lambda;
    lowest_weight(&dual, a) == lowest_weight(lambda, a)
}

/// A `q`-series `q^offset * sum_n coeffs[n] q^n`, truncated after the last
/// stored level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub offset: Rational,
    pub coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn level(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) * (", self.offset)?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} q^{n}")?;
        }
        write!(f, ")")
    }
}

/// Partition numbers `p(0), ..., p(n)` by Euler's pentagonal recurrence.
pub fn partition_counts(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for i in 1..=n {
        let mut acc = BigInt::zero();
        let mut k: usize = 1;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[i - g1].clone();
            if g2 <= i {
                term += &p[i - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
            k += 1;
        }
        p[i] = acc;
    }
    p
}

/// `p(n)`, zero for negative `n`.
pub fn partition_count(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    partition_counts(n as usize).pop().unwrap_or_else(BigInt::one)
}

/// `1/eta(tau) = q^{-1/24} sum_n p(n) q^n` through level `n`.
pub fn eta_inverse_series(n: i64) -> Result<QSeries> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "eta_inverse_series needs N >= 0, got {n}"
        )));
    }
    let coeffs = partition_counts(n as usize)
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    Ok(QSeries {
        offset: rat(-1, 24),
        coeffs,
    })
}

/// Generalized binomial coefficient `binom(top, k)` for integer `top` of any sign.
pub fn binomial(top: i64, k: u32) -> Rational {
    let mut acc = int(1);
    for i in 0..k as i64 {
        acc = acc * int(top - i) / int(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(int(1), |acc, i| acc * int(i))
}

pub fn pow(r: &Rational, e: u32) -> Rational {
    let mut acc = int(1);
    for _ in 0..e {
        acc *= r;
    }
    acc
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
