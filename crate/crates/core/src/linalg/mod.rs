//! Exact linear algebra over the rationals and prime fields.
//!
//! Everything here is dense and deterministic: echelon forms always pivot on
//! the lowest admissible index, so bases chosen downstream (quotient bases,
//! syzygy bases, report contents) are reproducible.

mod matrix;
mod scalar;

pub use matrix::Matrix;
pub use scalar::{axpy, is_zero_vec, unit_vec, zero_vec, FieldSpec, Scalar, MAX_PRIME};
pub(crate) use scalar::is_negative;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("input columns are linearly dependent")]
    DependentColumns,
    #[error("{0} is not a prime in [2, 2^31-1]")]
    NotPrime(u64),
    #[error("unrecognised field '{0}' (expected q or pN)")]
    BadField(String),
    #[error("malformed coefficient '{0}'")]
    BadScalar(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

/// Standard basis vectors extending the columns of `sub` to a basis of
/// `k^ambient_dim`. The `e_i` are taken greedily, lowest index first.
pub fn complement_basis(sub: &Matrix, ambient_dim: usize) -> Result<Matrix, LinalgError> {
    let field = sub.field();
    if sub.cols() > 0 && sub.rows() != ambient_dim {
        return Err(LinalgError::ShapeMismatch(format!(
            "subspace vectors have length {}, ambient dimension is {ambient_dim}",
            sub.rows()
        )));
    }
    let picked = complement_indices(&sub.transpose(), ambient_dim)?;
    let cols: Vec<Vec<Scalar>> = picked
        .iter()
        .map(|&i| unit_vec(field, ambient_dim, i))
        .collect();
    Matrix::from_columns(field, ambient_dim, &cols)
}

/// Indices `i` such that `{e_i}` is the greedy complement of the row space of
/// `rows` (which must have independent rows). Equivalent to the non-pivot
/// columns of an echelon form that pivots on the highest index.
pub(crate) fn complement_indices(rows: &Matrix, ambient_dim: usize) -> Result<Vec<usize>, LinalgError> {
    if rows.rows() == 0 {
        return Ok((0..ambient_dim).collect());
    }
    let order: Vec<usize> = (0..ambient_dim).rev().collect();
    let (_, pivots) = rows.reduce_rows(&order);
    if pivots.len() != rows.rows() {
        return Err(LinalgError::DependentColumns);
    }
    let mut is_pivot = vec![false; ambient_dim];
    for p in pivots {
        is_pivot[p] = true;
    }
    Ok((0..ambient_dim).filter(|&i| !is_pivot[i]).collect())
}

/// Some `x` with `m * x = rhs`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, rhs: &Matrix) -> Result<Option<Matrix>, LinalgError> {
    if m.field() != rhs.field() {
        return Err(LinalgError::FieldMismatch {
            expected: m.field(),
            found: rhs.field(),
        });
    }
    if m.rows() != rhs.rows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "system has {} equations but right-hand side has {} rows",
            m.rows(),
            rhs.rows()
        )));
    }
    let aug = m.hstack(rhs)?;
    let order: Vec<usize> = (0..m.cols()).collect();
    let (rows, pivots) = aug.reduce_rows(&order);
    // any nonzero rhs entry left in a row without a pivot among m's columns
    // means inconsistency; reduce_rows only pivoted on m's columns
    let full_order: Vec<usize> = (0..aug.cols()).collect();
    let (_, all_pivots) = aug.reduce_rows(&full_order);
    if all_pivots.iter().any(|&p| p >= m.cols()) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(m.field(), m.cols(), rhs.cols());
    for (r, &p) in pivots.iter().enumerate() {
        for j in 0..rhs.cols() {
            x.set(p, j, rows[r][m.cols() + j].clone());
        }
    }
    Ok(Some(x))
}

/// A subspace of `k^ambient` held in reduced row echelon form, so that the
/// coordinates of a member vector are read off at the pivot positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| unit_vec(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: FieldSpec, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, vectors).expect("spanning vectors from one field");
        assert_eq!(m.cols(), ambient, "spanning vector length");
        let order: Vec<usize> = (0..ambient).collect();
        let (basis, pivots) = m.reduce_rows(&order);
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    /// Null space of `m` (vectors of length `m.cols()`).
    pub fn kernel(m: &Matrix) -> Self {
        let k = m.kernel_basis();
        Self::span(m.field(), m.cols(), k.columns())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut residual, &-c, b);
        }
        is_zero_vec(&residual).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `sum c_k * basis_k`.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.field, self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut out, c, b);
        }
        out
    }
}

/// Number of points of the projective space `P^{dim-1}(F_p)`, if it fits.
pub fn projective_point_count(p: u64, dim: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut power: u64 = 1;
    for _ in 0..dim {
        total = total.checked_add(power)?;
        power = power.checked_mul(p)?;
    }
    Some(total)
}

/// Every nonzero vector of `F_p^dim` whose first nonzero coordinate is 1,
/// i.e. one representative per line, in lexicographic order of residues.
/// Empty over the rationals.
pub fn projective_points(field: FieldSpec, dim: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let p = field.characteristic();
    let mut state: Option<(usize, Vec<u64>)> = if p == 0 || dim == 0 {
        None
    } else {
        // leading position, then the free tail after it
        Some((0, vec![0; dim - 1]))
    };
    std::iter::from_fn(move || {
        let (lead, tail) = state.as_mut()?;
        let mut v = zero_vec(field, dim);
        v[*lead] = Scalar::one(field);
        for (k, &t) in tail.iter().enumerate() {
            v[*lead + 1 + k] = Scalar::from_i64(field, t as i64);
        }
        // advance the tail odometer; roll over to the next leading position
        let mut k = tail.len();
        loop {
            if k == 0 {
                if *lead + 1 == dim {
                    state = None;
                } else {
                    *lead += 1;
                    *tail = vec![0; dim - 1 - *lead];
                }
                break;
            }
            k -= 1;
            tail[k] += 1;
            if tail[k] < p {
                break;
            }
            tail[k] = 0;
        }
        Some(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn projective_enumeration() {
        let f3 = FieldSpec::Prime(3);
        let pts: Vec<Vec<Scalar>> = projective_points(f3, 2).collect();
        assert_eq!(pts.len(), 4);
        assert_eq!(projective_point_count(3, 2), Some(4));
        assert_eq!(pts[0], vec![Scalar::one(f3), Scalar::zero(f3)]);
        assert_eq!(pts[3], vec![Scalar::zero(f3), Scalar::one(f3)]);
        assert_eq!(projective_points(f2(), 4).count(), 15);
        assert_eq!(projective_points(q(), 3).count(), 0);
        assert_eq!(projective_point_count(2, 70), None);
    }

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }
    fn f2() -> FieldSpec {
        FieldSpec::Prime(2)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(q(), 2)), 2);
        assert_eq!(rank(&Matrix::zeros(q(), 3, 4)), 0);
        assert_eq!(rank(&Matrix::from_i64(q(), &[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let rows = vec![vec![Scalar::one(q()), Scalar::one(f2())]];
        assert!(matches!(
            Matrix::from_rows(q(), rows),
            Err(LinalgError::FieldMismatch { .. })
        ));
        let a = Matrix::identity(q(), 2);
        let b = Matrix::identity(f2(), 2);
        assert!(matches!(solve(&a, &b), Err(LinalgError::FieldMismatch { .. })));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(q(), 3)).cols(), 0);
        let k = kernel_basis(&Matrix::zeros(q(), 2, 2));
        assert_eq!(k, Matrix::identity(q(), 2));
        // [[1,1]] over F2: of the four vectors only 00 and 11 are killed
        let m = Matrix::from_i64(f2(), &[&[1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![Scalar::one(f2()), Scalar::one(f2())]);
    }

    #[test]
    fn complement_examples() {
        let e1 = Matrix::from_i64(q(), &[&[1], &[0]]);
        assert_eq!(complement_basis(&e1, 2).unwrap(), Matrix::from_i64(q(), &[&[0], &[1]]));
        let empty = Matrix::zeros(q(), 3, 0);
        assert_eq!(complement_basis(&empty, 3).unwrap(), Matrix::identity(q(), 3));
        let diag = Matrix::from_i64(f2(), &[&[1], &[1]]);
        assert_eq!(complement_basis(&diag, 2).unwrap(), Matrix::from_i64(f2(), &[&[1], &[0]]));
        let dependent = Matrix::from_i64(q(), &[&[1, 2], &[1, 2]]);
        assert_eq!(complement_basis(&dependent, 2), Err(LinalgError::DependentColumns));
    }

    #[test]
    fn solve_examples() {
        let rhs = Matrix::from_i64(q(), &[&[3], &[-4]]);
        assert_eq!(solve(&Matrix::identity(q(), 2), &rhs).unwrap(), Some(rhs.clone()));
        assert_eq!(solve(&Matrix::zeros(q(), 2, 2), &rhs).unwrap(), None);
        let x = solve(&Matrix::from_i64(q(), &[&[2]]), &Matrix::from_i64(q(), &[&[1]]))
            .unwrap()
            .unwrap();
        assert_eq!(x.get(0, 0).to_string(), "1/2");
    }

    #[test]
    fn subspace_coordinates() {
        let v = |xs: &[i64]| xs.iter().map(|&x| Scalar::from_i64(q(), x)).collect::<Vec<_>>();
        let s = Subspace::span(q(), 3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        let c = s.coordinates(&v(&[2, 5, 3])).unwrap();
        assert_eq!(s.combine(&c), v(&[2, 5, 3]));
        assert!(s.coordinates(&v(&[1, 0, 0])).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
        (prop_oneof![Just(0u64), Just(2), Just(3), Just(5)], 1usize..6, 1usize..6).prop_flat_map(
            |(p, r, c)| (Just(p), prop::collection::vec(prop::collection::vec(-3i64..4, c), r)),
        )
    }

    fn field_of(p: u64) -> FieldSpec {
        if p == 0 {
            FieldSpec::Rational
        } else {
            FieldSpec::prime(p).unwrap()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn rank_nullity((p, rows) in small_matrix()) {
            let field = field_of(p);
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = Matrix::from_i64(field, &refs);
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.cols(), m.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert_eq!(rank(&k), k.cols());
        }

        #[test]
        fn complement_fills_ambient((p, rows) in small_matrix()) {
            let field = field_of(p);
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = Matrix::from_i64(field, &refs);
            // independent columns spanning the column space of m
            let (r, pivots) = m.transpose().rref();
            let basis: Vec<Vec<Scalar>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
            let sub = Matrix::from_columns(field, m.rows(), &basis).unwrap();
            let comp = complement_basis(&sub, m.rows()).unwrap();
            let all = sub.hstack(&comp).unwrap();
            prop_assert_eq!(rank(&all), m.rows());
            prop_assert_eq!(all.cols(), m.rows());
        }

        #[test]
        fn solve_is_consistent((p, rows) in small_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
            let field = field_of(p);
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = Matrix::from_i64(field, &refs);
            let x0: Vec<Scalar> = seed.iter().take(m.cols()).map(|&v| Scalar::from_i64(field, v)).collect();
            let x0 = Matrix::from_columns(field, m.cols(), &[x0]).unwrap();
            let rhs = m.mul(&x0).unwrap();
            let x = solve(&m, &rhs).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul(&x).unwrap(), rhs);
        }
    }
}
