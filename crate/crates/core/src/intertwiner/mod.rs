//! Explicit logarithmic intertwining operators
//! `Y(., x): (M(1)_a (x) Omega_1) (x) (M(1)_a (x) Omega_2) -> (M(1)_a (x) Omega_3){x}[log x]`,
//! their axioms, depth, depth lowering, and the mock operators.

mod canonical;
mod fields;
mod mock;
mod operator;

pub use canonical::{canonical_intertwiner, extend_from_vacuum, intertwiner_apply, vertex_operator_apply};
pub use fields::{
    apply_t, creation_apply, creation_monomials, e_minus_apply, e_plus_apply, int_minus_apply,
    int_plus_apply, jordan_exp_apply,
};
pub use mock::{mock_log_check, MockReport};
pub use operator::{
    check_h_bracket, check_l_minus1, derived_operator, f_map, f_map_equivariant, CheckOutcome,
    OperatorSeries,
};

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::OmegaSpec;
use crate::linalg::QMatrix;
use crate::scalar::Rational;

/// The data `(a, Omega_1, Omega_2, Omega_3, T)` of an intertwining operator.
/// `T` is a `dim3 x (dim1 * dim2)` matrix; column `l * dim2 + b` is the image
/// of `w_l (x) e_b`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntertwinerSpec {
    a: Rational,
    omega1: OmegaSpec,
    omega2: OmegaSpec,
    omega3: OmegaSpec,
    t: QMatrix,
}

impl IntertwinerSpec {
    /// Validates shapes, eigenvalues and `h(0)`-equivariance of `T`.
    pub fn new(
        a: Rational,
        omega1: OmegaSpec,
        omega2: OmegaSpec,
        omega3: OmegaSpec,
        t: QMatrix,
    ) -> Result<Self> {
        let spec = Self::new_unchecked(a, omega1, omega2, omega3, t)?;
        if !is_equivariant(&spec.t, &spec.omega1, &spec.omega2, &spec.omega3) {
            return Err(Error::NotEquivariant);
        }
        Ok(spec)
    }

    /// As [`IntertwinerSpec::new`] but without the equivariance test. Used
    /// for negative controls.
    pub fn new_unchecked(
        a: Rational,
        omega1: OmegaSpec,
        omega2: OmegaSpec,
        omega3: OmegaSpec,
        t: QMatrix,
    ) -> Result<Self> {
        if !omega1.is_jordan_basis() {
            return Err(Error::InvalidArgument(
                "Omega_1 must be given in Jordan form".into(),
            ));
        }
        if t.rows() != omega3.dim() || t.cols() != omega1.dim() * omega2.dim() {
            return Err(Error::InvalidArgument(format!(
                "T must be {} x {}, got {} x {}",
                omega3.dim(),
                omega1.dim() * omega2.dim(),
                t.rows(),
                t.cols()
            )));
        }
        if omega3.eigenvalue() != &(omega1.eigenvalue() + omega2.eigenvalue()) {
            return Err(Error::InvalidArgument(
                "eigenvalue of Omega_3 must be lambda + nu".into(),
            ));
        }
        Ok(IntertwinerSpec {
            a,
            omega1,
            omega2,
            omega3,
            t,
        })
    }

    /// `Omega_3 = Omega_1 (x) Omega_2` with `T = Id`.
    pub fn identity(a: Rational, omega1: OmegaSpec, omega2: OmegaSpec) -> Result<Self> {
        let omega3 = omega1.tensor(&omega2);
        let t = QMatrix::identity(omega3.dim());
        Self::new(a, omega1, omega2, omega3, t)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn omega1(&self) -> &OmegaSpec {
        &self.omega1
    }

    pub fn omega2(&self) -> &OmegaSpec {
        &self.omega2
    }

    pub fn omega3(&self) -> &OmegaSpec {
        &self.omega3
    }

    pub fn t(&self) -> &QMatrix {
        &self.t
    }

    pub fn lambda(&self) -> &Rational {
        self.omega1.eigenvalue()
    }

    pub fn nu(&self) -> &Rational {
        self.omega2.eigenvalue()
    }

    /// The exponent offset `lambda nu` of every output series.
    pub fn offset(&self) -> Rational {
        self.lambda() * self.nu()
    }

    /// Same spec with a different `T`, unchecked.
    pub fn with_t_unchecked(&self, t: QMatrix) -> Result<Self> {
        Self::new_unchecked(
            self.a.clone(),
            self.omega1.clone(),
            self.omega2.clone(),
            self.omega3.clone(),
            t,
        )
    }

    /// Short text form for reports.
    pub fn summary(&self) -> String {
        format!(
            "a={} lambda={} nu={} blocks1={:?} blocks2={:?} dim3={}",
            self.a,
            self.lambda(),
            self.nu(),
            self.omega1.block_sizes(),
            self.omega2.block_sizes(),
            self.omega3.dim()
        )
    }
}

impl fmt::Debug for IntertwinerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntertwinerSpec({})", self.summary())
    }
}

/// `T (H_1 (x) I + I (x) H_2) = H_3 T`.
pub fn is_equivariant(t: &QMatrix, o1: &OmegaSpec, o2: &OmegaSpec, o3: &OmegaSpec) -> bool {
    if t.rows() != o3.dim() || t.cols() != o1.dim() * o2.dim() {
        return false;
    }
    let h12 = o1
        .h0_matrix()
        .kron(&QMatrix::identity(o2.dim()))
        .add(&QMatrix::identity(o1.dim()).kron(&o2.h0_matrix()));
    t.mul(&h12) == o3.h0_matrix().mul(t)
}

/// Sharp depth bound for Jordan sizes `m1`, `m2` and eigenvalues `lambda`, `nu`.
pub fn depth_bound(m1: usize, m2: usize, lambda: &Rational, nu: &Rational) -> usize {
    assert!(m1 >= 1 && m2 >= 1, "Jordan sizes are positive");
    match (lambda.is_zero(), nu.is_zero()) {
        (false, false) => m1 + m2 - 2,
        (true, false) => m1 - 1,
        (false, true) => m2 - 1,
        (true, true) => (m1 - 1).min(m2 - 1),
    }
}

/// A matrix with a single nonzero entry, for perturbing `T`.
pub fn unit_matrix(rows: usize, cols: usize, i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::zeros(rows, cols);
    m[(i, j)] = Rational::one();
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn depth_bound_table() {
        assert_eq!(depth_bound(2, 2, &int(1), &int(1)), 2);
        assert_eq!(depth_bound(3, 2, &int(0), &int(1)), 2);
        assert_eq!(depth_bound(1, 1, &int(5), &int(-2)), 0);
        assert_eq!(depth_bound(3, 2, &int(0), &int(0)), 1);
        assert_eq!(depth_bound(3, 2, &int(1), &int(0)), 1);
    }

    #[test]
    fn spec_validation() {
        let o1 = OmegaSpec::block(int(1), 2).unwrap();
        let o2 = OmegaSpec::block(rat(1, 2), 2).unwrap();
        let s = IntertwinerSpec::identity(int(0), o1.clone(), o2.clone()).unwrap();
        assert_eq!(s.offset(), rat(1, 2));
        let bad = s.t().add(&unit_matrix(4, 4, 3, 0));
        assert!(matches!(
            IntertwinerSpec::new(int(0), o1.clone(), o2.clone(), s.omega3().clone(), bad.clone()),
            Err(Error::NotEquivariant)
        ));
        assert!(s.with_t_unchecked(bad).is_ok());
        let wrong = OmegaSpec::one_dim(int(7));
        assert!(IntertwinerSpec::new(int(0), o1, o2, wrong, QMatrix::zeros(1, 4)).is_err());
    }
}
