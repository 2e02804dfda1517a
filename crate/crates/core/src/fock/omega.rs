use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nilpotent_block_sizes, QMatrix};
use crate::scalar::Rational;

/// Finite-dimensional vacuum space with a single `h(0)` eigenvalue.
///
/// `h(0)` acts as `H = eigenvalue * I + N` with `N` nilpotent. Most specs are
/// built in Jordan form, where basis vector `e_j` of a block satisfies
/// `h(0) e_j = eigenvalue * e_j + e_{j-1}`. Tensor products keep the
/// Kronecker basis instead, so `N` is stored as a general matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct OmegaSpec {
    eigenvalue: Rational,
    nilpotent: QMatrix,
    block_sizes: Vec<usize>,
    jordan: bool,
}

impl OmegaSpec {
    /// Jordan form: consecutive blocks of the given sizes, in the given order.
    pub fn jordan(eigenvalue: Rational, block_sizes: &[usize]) -> Result<Self> {
        if block_sizes.is_empty() || block_sizes.contains(&0) {
            return Err(Error::InvalidArgument(
                "block sizes must be nonempty and positive".into(),
            ));
        }
        let dim: usize = block_sizes.iter().sum();
        let mut n = QMatrix::zeros(dim, dim);
        let mut start = 0;
        for &b in block_sizes {
            for j in 1..b {
                n[(start + j - 1, start + j)] = Rational::one();
            }
            start += b;
        }
        let mut sorted = block_sizes.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Ok(OmegaSpec {
            eigenvalue,
            nilpotent: n,
            block_sizes: sorted,
            jordan: true,
        })
    }

    /// A single Jordan block of size `m`.
    pub fn block(eigenvalue: Rational, m: usize) -> Result<Self> {
        Self::jordan(eigenvalue, &[m])
    }

    pub fn one_dim(eigenvalue: Rational) -> Self {
        Self::jordan(eigenvalue, &[1]).expect("valid block")
    }

    /// `h(0) = eigenvalue * I + n` for an arbitrary nilpotent `n`.
    pub fn from_nilpotent(eigenvalue: Rational, n: QMatrix) -> Result<Self> {
        if n.rows() != n.cols() || n.rows() == 0 {
            return Err(Error::InvalidArgument("nilpotent part must be square".into()));
        }
        let block_sizes = nilpotent_block_sizes(&n)
            .ok_or_else(|| Error::InvalidArgument("matrix is not nilpotent".into()))?;
        Ok(OmegaSpec {
            eigenvalue,
            nilpotent: n,
            block_sizes,
            jordan: false,
        })
    }

    /// `Omega_1 (x) Omega_2` with `h(0)` acting diagonally; index `a * dim2 + b`.
    pub fn tensor(&self, other: &OmegaSpec) -> OmegaSpec {
        let n = self
            .nilpotent
            .kron(&QMatrix::identity(other.dim()))
            .add(&QMatrix::identity(self.dim()).kron(&other.nilpotent));
        Self::from_nilpotent(&self.eigenvalue + &other.eigenvalue, n)
            .expect("sum of commuting nilpotents is nilpotent")
    }

    /// `h(0)` on the dual space: `-H^T`.
    pub fn contragredient(&self) -> OmegaSpec {
        Self::from_nilpotent(-&self.eigenvalue, self.nilpotent.transpose().scale(&-Rational::one()))
            .expect("transpose of nilpotent is nilpotent")
    }

    pub fn dim(&self) -> usize {
        self.nilpotent.rows()
    }

    pub fn eigenvalue(&self) -> &Rational {
        &self.eigenvalue
    }

    /// Block sizes, largest first.
    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// Size of the largest Jordan block.
    pub fn nilpotent_order(&self) -> usize {
        self.block_sizes[0]
    }

    pub fn is_jordan_basis(&self) -> bool {
        self.jordan
    }

    pub fn nilpotent(&self) -> &QMatrix {
        &self.nilpotent
    }

    /// The matrix of `h(0)`.
    pub fn h0_matrix(&self) -> QMatrix {
        QMatrix::identity(self.dim())
            .scale(&self.eigenvalue)
            .add(&self.nilpotent)
    }

    /// Jordan blocks as `(start, size)` in basis order. Only meaningful in a
    /// Jordan basis.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        debug_assert!(self.jordan);
        let mut out = Vec::new();
        let mut start = 0;
        while start < self.dim() {
            let mut end = start + 1;
            while end < self.dim() && !self.nilpotent[(end - 1, end)].is_zero() {
                end += 1;
            }
            out.push((start, end - start));
            start = end;
        }
        out
    }

    /// The block containing basis index `j`.
    pub fn block_of(&self, j: usize) -> Result<(usize, usize)> {
        if !self.jordan {
            return Err(Error::InvalidArgument("Omega is not in Jordan form".into()));
        }
        self.blocks()
            .into_iter()
            .find(|&(s, m)| j >= s && j < s + m)
            .ok_or(Error::IndexOutOfRange {
                index: j + 1,
                dim: self.dim(),
            })
    }

    /// Column `j` of `N` as sparse `(row, value)` pairs.
    pub fn nilpotent_column(&self, j: usize) -> Vec<(usize, Rational)> {
        (0..self.dim())
            .filter_map(|i| {
                let v = &self.nilpotent[(i, j)];
                (!v.is_zero()).then(|| (i, v.clone()))
            })
            .collect()
    }

    /// Stable text key used by caches and reports.
    pub fn fingerprint(&self) -> String {
        let mut s = format!("lambda={};dim={}", self.eigenvalue, self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let v = &self.nilpotent[(i, j)];
                if !v.is_zero() {
                    s.push_str(&format!(";N[{i},{j}]={v}"));
                }
            }
        }
        s
    }

    /// Checks `(H - lambda)^dim = 0` and that the largest block is attained.
    pub fn invariants_hold(&self) -> bool {
        let m = self.nilpotent_order();
        self.nilpotent.pow(self.dim() as u32).is_zero()
            && (m == 1 || !self.nilpotent.pow(m as u32 - 1).is_zero())
    }
}

impl fmt::Debug for OmegaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Omega(lambda={}, blocks={:?}{})",
            self.eigenvalue,
            self.block_sizes,
            if self.jordan { "" } else { ", general basis" }
        )
    }
}
