//! Quadratic path algebras `kQ/(I_2)`, their truncations to a degree bound,
//! and quadratic duals.

mod presentation;
mod tabulated;
mod truncated;

pub use presentation::{
    double_dual_roundtrip, quadratic_dual, Corner, Path, PathBasis, QuadraticPresentation, Relation,
};
pub use tabulated::TabulatedAlgebra;
pub use truncated::{build_algebra, BasisElement, TruncatedGradedAlgebra};

pub(crate) use presentation::path_name;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{axpy, zero_vec, FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("empty path in a relation")]
    EmptyPath,
    #[error("unknown arrow '{0}'")]
    UnknownArrow(String),
    #[error("path '{0}' is not composable (composition is right to left)")]
    NotComposable(String),
    #[error("relation term '{path}' has length {length}; relations must be homogeneous of degree 2")]
    NotQuadratic { path: String, length: usize },
    #[error("relation coefficient lies in a different field")]
    FieldMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("degree {degree} exceeds the truncation bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("truncation bound must be at least 2, got {0}")]
    BoundTooSmall(usize),
    #[error("basis index {index} out of range in degree {degree}")]
    BadIndex { degree: usize, index: usize },
}

/// A homogeneous element: coordinates in the degree-`degree` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub degree: usize,
    pub coeffs: Vec<Scalar>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

/// A graded algebra with `A_0 = k^r`, known degree by degree, whose degree-`n`
/// basis elements each lie in a single Peirce corner.
pub trait GradedAlgebra {
    fn field(&self) -> FieldSpec;
    fn vertex_count(&self) -> usize;
    /// Largest degree whose component has been computed.
    fn max_degree(&self) -> usize;
    /// `Some(L)` when `A_n = 0` is certain for all `n >= L`.
    fn graded_length(&self) -> Option<usize>;
    /// Dimension of `A_n`; only meaningful when `is_known(n)`.
    fn dim(&self, n: usize) -> usize;
    /// Corner of the `k`-th basis element of `A_n`.
    fn corner(&self, n: usize, k: usize) -> Corner;
    /// Product of two basis elements as a coordinate vector in degree `m + n`.
    fn multiply_basis(&self, m: usize, a: usize, n: usize, b: usize) -> Result<Vec<Scalar>, AlgebraError>;

    fn is_known(&self, n: usize) -> bool {
        n <= self.max_degree() || self.graded_length().is_some()
    }

    fn corner_indices(&self, n: usize, c: Corner) -> Vec<usize> {
        (0..self.dim(n)).filter(|&k| self.corner(n, k) == c).collect()
    }

    fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        let degree = x.degree + y.degree;
        if !self.is_known(degree) {
            return Err(AlgebraError::DegreeOverflow {
                degree,
                bound: self.max_degree(),
            });
        }
        let mut coeffs = zero_vec(self.field(), self.dim(degree));
        for (a, ca) in x.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in y.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let prod = self.multiply_basis(x.degree, a, y.degree, b)?;
                axpy(&mut coeffs, &(ca * cb), &prod);
            }
        }
        Ok(Element { degree, coeffs })
    }

    fn hilbert(&self) -> HilbertData {
        let r = self.vertex_count();
        let grids = (0..=self.max_degree())
            .map(|n| {
                let mut h = vec![vec![0u64; r]; r];
                for k in 0..self.dim(n) {
                    let c = self.corner(n, k);
                    h[c.target][c.source] += 1;
                }
                h
            })
            .collect();
        HilbertData { grids }
    }
}

/// `grids[n][j][i] = dim e_j A_n e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub grids: Vec<Vec<Vec<u64>>>,
}

impl HilbertData {
    /// Coefficients of `h_{e_j A}(t)` through the computed window.
    pub fn vertex_series(&self, j: usize) -> Vec<u64> {
        self.grids.iter().map(|g| g[j].iter().sum()).collect()
    }

    pub fn total_series(&self) -> Vec<u64> {
        self.grids.iter().map(|g| g.iter().flatten().sum()).collect()
    }

    pub fn truncated(&self, through: usize) -> HilbertData {
        HilbertData {
            grids: self.grids.iter().take(through + 1).cloned().collect(),
        }
    }
}

pub fn hilbert(alg: &impl GradedAlgebra) -> HilbertData {
    alg.hilbert()
}

/// `Some(L)` when the algebra is known to vanish from degree `L` on.
pub fn graded_length(alg: &impl GradedAlgebra) -> Option<usize> {
    alg.graded_length()
}

/// Coefficients of `f(t) g(-t)` modulo `t^len`, for the numerical Koszul
/// identity `h_A(t) h_{A!}(-t) = 1`.
pub fn series_product_alternating(f: &[u64], g: &[u64], len: usize) -> Vec<i128> {
    (0..len)
        .map(|n| {
            (0..=n)
                .filter(|&k| k < f.len() && n - k < g.len())
                .map(|k| {
                    let s = i128::from(f[k]) * i128::from(g[n - k]);
                    if (n - k) % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                })
                .sum()
        })
        .collect()
}
