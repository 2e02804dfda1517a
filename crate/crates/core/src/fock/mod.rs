//! The graded module `M(1)_a (x) Omega`: basis, mode actions, gradings and the
//! vacuum-space and `L(0)` Jordan diagnostics.

mod modes;
mod omega;
mod partition;
mod vector;

pub use modes::{apply_h, apply_l};
pub use omega::OmegaSpec;
pub use partition::Partition;
pub use vector::{FockState, ModuleVector};

use num_traits::Zero;

use crate::linalg::{nilpotent_block_sizes_bounded, QMatrix};
use crate::scalar::{int, lowest_weight, Rational};

/// Homogeneity and generalized `L(0)` weight of a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightInfo {
    pub homogeneous: bool,
    /// `None` for the zero vector and for inhomogeneous vectors.
    pub generalized_weight: Option<Rational>,
}

/// Basis of the level-`level` subspace, in basis order.
pub fn level_basis(level: u32, omega_dim: usize) -> Vec<FockState> {
    let mut out = Vec::new();
    for p in Partition::all_of_size(level) {
        for j in 0..omega_dim {
            out.push(FockState::new(p.clone(), j));
        }
    }
    out
}

/// Coordinates of `v` in `basis`; terms outside `basis` are dropped.
pub fn coordinates(v: &ModuleVector, basis: &[FockState]) -> Vec<Rational> {
    basis.iter().map(|s| v.coefficient(s)).collect()
}

/// Combination `sum_i coords[i] * basis[i]`.
pub fn from_coordinates(coords: &[Rational], basis: &[FockState]) -> ModuleVector {
    ModuleVector::from_terms(basis.iter().cloned().zip(coords.iter().cloned()))
}

/// Matrix of a linear map between two finite basis lists (columns are images).
pub fn operator_matrix<F>(domain: &[FockState], codomain: &[FockState], f: F) -> QMatrix
where
    F: Fn(&ModuleVector) -> ModuleVector,
{
    let mut m = QMatrix::zeros(codomain.len(), domain.len());
    for (c, s) in domain.iter().enumerate() {
        let img = f(&ModuleVector::basis(s.clone()));
        for (r, t) in codomain.iter().enumerate() {
            m[(r, c)] = img.coefficient(t);
        }
    }
    m
}

/// Every term of a homogeneous vector shares its level; its generalized
/// weight is that level plus the lowest weight of `Omega`.
pub fn weight_info(v: &ModuleVector, omega: &OmegaSpec, a: &Rational) -> WeightInfo {
    match (v.min_level(), v.max_level()) {
        (None, _) => WeightInfo {
            homogeneous: true,
            generalized_weight: None,
        },
        (Some(lo), Some(hi)) if lo == hi => WeightInfo {
            homogeneous: true,
            generalized_weight: Some(int(lo as i64) + lowest_weight(omega.eigenvalue(), a)),
        },
        _ => WeightInfo {
            homogeneous: false,
            generalized_weight: None,
        },
    }
}

/// Joint kernel of `h(1), ..., h(level_bound)` on levels `0..=level_bound`.
pub fn vacuum_space(omega: &OmegaSpec, level_bound: u32) -> Vec<ModuleVector> {
    let mut out = Vec::new();
    for d in 0..=level_bound {
        let dom = level_basis(d, omega.dim());
        if d == 0 {
            out.extend(dom.into_iter().map(ModuleVector::basis));
            continue;
        }
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for n in 1..=d {
            let cod = level_basis(d - n, omega.dim());
            let m = operator_matrix(&dom, &cod, |v| apply_h(n as i64, v, omega));
            for r in 0..m.rows() {
                rows.push(m.row(r).to_vec());
            }
        }
        for k in QMatrix::from_rows(rows).nullspace() {
            out.push(from_coordinates(&k, &dom));
        }
    }
    out
}

/// Jordan decomposition of `L(0)` on one level: the generalized eigenvalue
/// with its block sizes (largest first).
pub fn jordan_structure_l0(
    omega: &OmegaSpec,
    a: &Rational,
    level: u32,
) -> Vec<(Rational, Vec<usize>)> {
    let basis = level_basis(level, omega.dim());
    let h = int(level as i64) + lowest_weight(omega.eigenvalue(), a);
    let l0 = operator_matrix(&basis, &basis, |v| apply_l(0, v, omega, a));
    let shifted = l0.sub(&QMatrix::identity(basis.len()).scale(&h));
    // L(0) - h acts as (N^2/2 + (lambda - a) N) on the Omega leg, so its
    // nilpotency index is at most dim Omega.
    let sizes = nilpotent_block_sizes_bounded(&shifted, omega.dim())
        .expect("L(0) has a single generalized eigenvalue per level");
    vec![(h, sizes)]
}

/// `(L(0) - h)` applied to a homogeneous vector, `h` its generalized weight.
pub fn l0_nilpotent_part(v: &ModuleVector, omega: &OmegaSpec, a: &Rational) -> ModuleVector {
    let Some(h) = weight_info(v, omega, a).generalized_weight else {
        return ModuleVector::zero();
    };
    let mut w = apply_l(0, v, omega, a);
    if !h.is_zero() {
        w.add_scaled(v, &-h);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn weight_info_examples() {
        let o = OmegaSpec::one_dim(int(0));
        let w = weight_info(&ModuleVector::vacuum(0), &o, &int(0));
        assert!(w.homogeneous);
        assert_eq!(w.generalized_weight, Some(int(0)));

        let a = rat(2, 5);
        let o = OmegaSpec::one_dim(a.clone());
        let v = ModuleVector::monomial(&[1], 0).unwrap();
        let w = weight_info(&v, &o, &a);
        assert_eq!(w.generalized_weight, Some(int(1) - &a * &a / int(2)));

        let mixed = &ModuleVector::vacuum(0) + &v;
        assert!(!weight_info(&mixed, &o, &a).homogeneous);
    }

    #[test]
    fn vacuum_space_is_level_zero() {
        let o = OmegaSpec::one_dim(int(1));
        assert_eq!(vacuum_space(&o, 3), vec![ModuleVector::vacuum(0)]);
        let o = OmegaSpec::block(int(0), 2).unwrap();
        let vs = vacuum_space(&o, 4);
        assert_eq!(vs.len(), 2);
        assert!(vs.iter().all(|v| v.max_level() == Some(0)));
    }

    #[test]
    fn jordan_structure_examples() {
        let o = OmegaSpec::one_dim(rat(1, 2));
        for lvl in 0..4 {
            let js = jordan_structure_l0(&o, &rat(1, 3), lvl);
            assert!(js[0].1.iter().all(|&b| b == 1));
        }
        let o = OmegaSpec::block(int(0), 2).unwrap();
        assert_eq!(jordan_structure_l0(&o, &int(0), 0), vec![(int(0), vec![1, 1])]);
        let o = OmegaSpec::block(int(0), 3).unwrap();
        let js = jordan_structure_l0(&o, &int(0), 0);
        assert!(js[0].1[0] >= 2);
        // lambda != a: L(0) - h = (lambda - a) N + N^2/2 has a full block
        let o = OmegaSpec::block(int(1), 3).unwrap();
        assert_eq!(jordan_structure_l0(&o, &int(0), 2)[0].1, vec![3, 3]);
    }

    #[test]
    fn l0_minus_weight_is_nilpotent() {
        let a = rat(1, 2);
        let o = OmegaSpec::block(rat(1, 3), 3).unwrap();
        for lvl in 0..5 {
            for s in level_basis(lvl, 3) {
                let mut v = ModuleVector::basis(s);
                for _ in 0..3 {
                    v = l0_nilpotent_part(&v, &o, &a);
                }
                assert!(v.is_zero());
            }
        }
    }
}
