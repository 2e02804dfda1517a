//! Virasoro structure of `M(1) (x) Omega` at `c = 1`: singular vectors,
//! their lifts along a nilpotent `h(0)`, submodule closure, structure
//! diagrams, fusion spans and the hidden intertwiner.

mod diagram;
mod fusion;

pub use diagram::{structure_diagram, DiagramNode, StructureDiagram, Tier};
pub use fusion::{
    fusion_span_check, hidden_intertwiner_check, hidden_spec, FusionLevel, FusionReport,
    HiddenReport,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{
    apply_l, from_coordinates, jordan_structure_l0, level_basis, operator_matrix,
    FockState, ModuleVector, OmegaSpec,
};
use crate::linalg::{EchelonSpan, QMatrix};
use crate::scalar::{
    central_charge, eta_inverse_series, int, lowest_weight, partition_count, rat, Rational,
};

/// A lowest-weight vector for the Virasoro algebra, scaled so that its first
/// coefficient in basis order is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularVector {
    pub vector: ModuleVector,
    pub level: u32,
    pub weight: Rational,
}

fn rows_of(m: &QMatrix) -> impl Iterator<Item = Vec<Rational>> + '_ {
    (0..m.rows()).map(move |r| m.row(r).to_vec())
}

fn normalize(v: ModuleVector) -> ModuleVector {
    match v.leading() {
        Some((_, c)) if !c.is_one() => {
            let inv = c.recip();
            v.scale(&inv)
        }
        _ => v,
    }
}

/// Joint kernel of `L(1)` and `L(2)` on the level-`level` subspace.
pub fn singular_basis(level: u32, omega: &OmegaSpec, a: &Rational) -> Vec<SingularVector> {
    let dom = level_basis(level, omega.dim());
    let mut rows = Vec::new();
    for n in 1..=2u32 {
        if n > level {
            continue;
        }
        let cod = level_basis(level - n, omega.dim());
        let m = operator_matrix(&dom, &cod, |v| apply_l(n as i64, v, omega, a));
        rows.extend(rows_of(&m));
    }
    let kernel = if rows.is_empty() {
        rows_of(&QMatrix::identity(dom.len())).collect()
    } else {
        QMatrix::from_rows(rows).nullspace()
    };
    let weight = int(level as i64) + lowest_weight(omega.eigenvalue(), a);
    kernel
        .into_iter()
        .map(|k| SingularVector {
            vector: normalize(from_coordinates(&k, &dom)),
            level,
            weight: weight.clone(),
        })
        .collect()
}

/// The singular vector `u^m = P_m(h) 1` of weight `m^2` in `M(1)` (`a = 0`).
pub fn singular_vector(m: u32) -> Result<ModuleVector> {
    let found = singular_basis(m * m, &OmegaSpec::one_dim(Rational::zero()), &Rational::zero());
    match found.as_slice() {
        [u] => Ok(u.vector.clone()),
        _ => Err(Error::InvalidArgument(format!(
            "expected one singular vector at weight {}, found {}",
            m * m,
            found.len()
        ))),
    }
}

/// `P(h) e_j -> P(h) e_(j+1)`: the action of `h(0)^T` in the fixed Jordan
/// basis of `omega`.
pub fn lift_chain(u: &ModuleVector, omega: &OmegaSpec) -> Result<ModuleVector> {
    let support = u.omega_support();
    let [j] = support.as_slice() else {
        return Err(Error::MalformedInput(format!(
            "lift_chain needs a vector on one Omega index, got support {support:?}"
        )));
    };
    let j = *j;
    let (start, size) = omega.block_of(j)?;
    if j + 1 >= start + size {
        return Err(Error::MalformedInput(format!(
            "Omega index {} is the top of its Jordan block",
            j + 1
        )));
    }
    Ok(u.map_omega(|_| vec![(j + 1, Rational::one())]))
}

/// `u^{t,m} = P_m(h) w_t`: the singular vector placed at Omega index 0 and
/// lifted `t - 1` times.
pub fn chain_vector(m: u32, tier: usize, omega: &OmegaSpec) -> Result<ModuleVector> {
    let p = singular_vector(m)?;
    let mut v = p.map_omega(|_| vec![(0, Rational::one())]);
    for _ in 1..tier {
        v = lift_chain(&v, omega)?;
    }
    Ok(v)
}

/// Graded span closed under the Virasoro modes, up to a level bound.
#[derive(Clone, Debug)]
pub struct VirSubmodule {
    omega: OmegaSpec,
    a: Rational,
    bound: u32,
    levels: BTreeMap<u32, EchelonSpan<FockState>>,
}

impl VirSubmodule {
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn level_dim(&self, level: u32) -> usize {
        self.levels.get(&level).map_or(0, |s| s.dim())
    }

    /// Dimensions at levels `0..=bound`.
    pub fn level_dims(&self) -> Vec<usize> {
        (0..=self.bound).map(|d| self.level_dim(d)).collect()
    }

    /// Membership by reduction of each level component. Components above the
    /// bound are never members.
    pub fn contains(&self, v: &ModuleVector) -> bool {
        v.level_components().iter().all(|(d, c)| match self.levels.get(d) {
            Some(span) => span.contains(c.as_map()),
            None => c.is_zero(),
        })
    }

    /// Echelon basis of one level.
    pub fn basis(&self, level: u32) -> Vec<ModuleVector> {
        self.levels.get(&level).map_or_else(Vec::new, |s| {
            s.rows().map(|r| ModuleVector::from_map(r.clone())).collect()
        })
    }

    pub fn omega(&self) -> &OmegaSpec {
        &self.omega
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
}

/// Closure of `generators` under `L(n)` inside levels `0..=bound`.
///
/// Generalized `L(0)` eigenspaces are level spaces, so the submodule is
/// graded and each generator is split into level components first. By PBW
/// ordering (raising modes last) every element within the bound is reached
/// through levels within the bound.
pub fn vir_submodule(
    generators: &[ModuleVector],
    omega: &OmegaSpec,
    a: &Rational,
    bound: u32,
) -> VirSubmodule {
    let mut sub = VirSubmodule {
        omega: omega.clone(),
        a: a.clone(),
        bound,
        levels: BTreeMap::new(),
    };
    let mut queue: Vec<(u32, ModuleVector)> = Vec::new();
    let push = |sub: &mut VirSubmodule, queue: &mut Vec<(u32, ModuleVector)>, d: u32, v: &ModuleVector| {
        if d > bound || v.is_zero() {
            return;
        }
        if let Some(r) = sub.levels.entry(d).or_default().insert(v.as_map()) {
            queue.push((d, ModuleVector::from_map(r)));
        }
    };
    for g in generators {
        for (d, c) in g.level_components() {
            push(&mut sub, &mut queue, d, &c);
        }
    }
    while let Some((d, v)) = queue.pop() {
        for n in (d as i64 - bound as i64)..=(d as i64) {
            let w = apply_l(n, &v, omega, a);
            push(&mut sub, &mut queue, (d as i64 - n) as u32, &w);
        }
    }
    sub
}

/// `L(0) u^{3,n} = n^2 u^{3,n} + u^n / 2` for a three-dimensional nilpotent
/// `Omega`, with `a = 0`.
pub fn check_l0_jordan(n: u32) -> Result<bool> {
    let omega = OmegaSpec::block(Rational::zero(), 3)?;
    let u = chain_vector(n, 1, &omega)?;
    let u3 = chain_vector(n, 3, &omega)?;
    let lhs = apply_l(0, &u3, &omega, &Rational::zero());
    let mut rhs = u3.scale(&int((n * n) as i64));
    rhs.add_scaled(&u, &rat(1, 2));
    Ok(lhs == rhs)
}

/// Largest `L(0)` Jordan block at the level of `u^{3,n}`.
pub fn l0_block_at_chain(n: u32) -> Result<usize> {
    let omega = OmegaSpec::block(Rational::zero(), 3)?;
    let js = jordan_structure_l0(&omega, &Rational::zero(), n * n);
    Ok(js
        .iter()
        .flat_map(|(_, s)| s.iter().copied())
        .max()
        .unwrap_or(0))
}

/// Graded dimensions of `M(1, lambda)_a` against the partition function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterReport {
    pub a: Rational,
    pub lambda: Rational,
    pub central_charge: Rational,
    pub lowest_weight: Rational,
    /// `lowest_weight - c/24`.
    pub q_offset: Rational,
    pub level_dims: Vec<BigInt>,
    pub partitions: Vec<BigInt>,
    pub dims_match: bool,
    /// Coefficients agree with `1/eta` (up to the `q` offset).
    pub eta_match: bool,
    pub self_dual_offset: bool,
}

impl CharacterReport {
    /// Dimensions always match; the offset is `-1/24` exactly when `lambda = a`.
    pub fn pass(&self) -> bool {
        self.dims_match && self.eta_match && self.self_dual_offset == (self.lambda == self.a)
    }
}

pub fn character_check(a: &Rational, lambda: &Rational, n: u32) -> Result<CharacterReport> {
    let c = central_charge(a);
    let h = lowest_weight(lambda, a);
    let q_offset = &h - &c / int(24);
    let level_dims: Vec<BigInt> = (0..=n)
        .map(|d| BigInt::from(level_basis(d, 1).len()))
        .collect();
    let partitions: Vec<BigInt> = (0..=n).map(|d| partition_count(d as i64)).collect();
    let eta = eta_inverse_series(n as i64)?;
    let eta_match = eta.coeffs.len() == level_dims.len()
        && eta
            .coeffs
            .iter()
            .zip(&level_dims)
            .all(|(e, d)| *e == Rational::from_integer(d.clone()));
    Ok(CharacterReport {
        a: a.clone(),
        lambda: lambda.clone(),
        central_charge: c,
        lowest_weight: h,
        self_dual_offset: q_offset == eta.offset,
        q_offset,
        dims_match: level_dims == partitions,
        level_dims,
        partitions,
        eta_match,
    })
}
