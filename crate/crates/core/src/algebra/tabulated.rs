use std::collections::HashMap;

use crate::linalg::{unit_vec, zero_vec, FieldSpec, Scalar};

use super::{AlgebraError, Corner, GradedAlgebra};

/// A graded algebra given by an explicit table of structure constants for
/// products of positive-degree basis elements. Degree 0 is always the
/// vertex idempotents `e_0, ..., e_{r-1}` in order.
#[derive(Clone, Debug)]
pub struct TabulatedAlgebra {
    field: FieldSpec,
    vertex_count: usize,
    corners: Vec<Vec<Corner>>,
    names: Vec<Vec<String>>,
    products: HashMap<(usize, usize, usize, usize), Vec<Scalar>>,
}

impl TabulatedAlgebra {
    /// `corners[n]` lists the corners of the degree-`n` basis for `n >= 1`
    /// (index 0 is ignored and replaced by the idempotents). Products absent
    /// from the table are zero.
    pub fn new(
        field: FieldSpec,
        vertex_count: usize,
        mut corners: Vec<Vec<Corner>>,
        names: Vec<Vec<String>>,
        products: HashMap<(usize, usize, usize, usize), Vec<Scalar>>,
    ) -> Self {
        if corners.is_empty() {
            corners.push(vec![]);
        }
        corners[0] = (0..vertex_count).map(|v| Corner { source: v, target: v }).collect();
        TabulatedAlgebra {
            field,
            vertex_count,
            corners,
            names,
            products,
        }
    }

    /// Copies every product of another algebra into a table.
    pub fn from_algebra(alg: &impl GradedAlgebra) -> Result<Self, AlgebraError> {
        let top = alg.max_degree();
        let corners: Vec<Vec<Corner>> = (0..=top)
            .map(|n| (0..alg.dim(n)).map(|k| alg.corner(n, k)).collect())
            .collect();
        let mut products = HashMap::new();
        for m in 1..=top {
            for n in 1..=top - m {
                for a in 0..alg.dim(m) {
                    for b in 0..alg.dim(n) {
                        let v = alg.multiply_basis(m, a, n, b)?;
                        if v.iter().any(|c| !c.is_zero()) {
                            products.insert((m, a, n, b), v);
                        }
                    }
                }
            }
        }
        let names = corners
            .iter()
            .enumerate()
            .map(|(n, cs)| (0..cs.len()).map(|k| format!("b{n}_{k}")).collect())
            .collect();
        Ok(Self::new(alg.field(), alg.vertex_count(), corners, names, products))
    }

    pub fn name(&self, n: usize, k: usize) -> String {
        self.names
            .get(n)
            .and_then(|v| v.get(k))
            .cloned()
            .unwrap_or_else(|| format!("b{n}_{k}"))
    }
}

impl GradedAlgebra for TabulatedAlgebra {
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    fn max_degree(&self) -> usize {
        self.corners.len() - 1
    }
    fn graded_length(&self) -> Option<usize> {
        None
    }
    fn dim(&self, n: usize) -> usize {
        self.corners.get(n).map_or(0, Vec::len)
    }
    fn corner(&self, n: usize, k: usize) -> Corner {
        self.corners[n][k]
    }

    fn multiply_basis(&self, m: usize, a: usize, n: usize, b: usize) -> Result<Vec<Scalar>, AlgebraError> {
        let degree = m + n;
        if degree > self.max_degree() {
            return Err(AlgebraError::DegreeOverflow {
                degree,
                bound: self.max_degree(),
            });
        }
        if a >= self.dim(m) {
            return Err(AlgebraError::BadIndex { degree: m, index: a });
        }
        if b >= self.dim(n) {
            return Err(AlgebraError::BadIndex { degree: n, index: b });
        }
        let (cu, cv) = (self.corners[m][a], self.corners[n][b]);
        let size = self.dim(degree);
        if cu.source != cv.target {
            return Ok(zero_vec(self.field, size));
        }
        Ok(match (m, n) {
            (0, _) => unit_vec(self.field, size, b),
            (_, 0) => unit_vec(self.field, size, a),
            _ => self
                .products
                .get(&(m, a, n, b))
                .cloned()
                .unwrap_or_else(|| zero_vec(self.field, size)),
        })
    }
}
