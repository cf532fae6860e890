use std::collections::HashMap;

use serde_json::{json, Value};

use crate::linalg::{unit_vec, zero_vec, FieldSpec, Matrix, Scalar};
use crate::quiver::Quiver;

use super::{path_name, AlgebraError, Corner, GradedAlgebra, QuadraticPresentation};

/// A basis element of `A_n`: a normal word of `n` arrows (empty for the
/// vertex idempotents), from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub word: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

type Sparse = Vec<(usize, Scalar)>;

/// `kQ/(I_2)` computed through degree `N`.
///
/// The basis of `A_n` consists of the normal words: paths that are not the
/// lexicographically largest term of any element of `I_n`. Equivalently, it is
/// the greedy lowest-index complement of `I_n` in the lexicographically
/// ordered path basis of `kQ_n`. Multiplication is stored only as right
/// multiplication by arrows, which generates everything.
#[derive(Clone, Debug)]
pub struct TruncatedGradedAlgebra {
    presentation: QuadraticPresentation,
    max_degree: usize,
    basis: Vec<Vec<BasisElement>>,
    /// `right[n][b][x]`: normal form of `basis[n][b] · x` in degree `n + 1`.
    right: Vec<Vec<Vec<Sparse>>>,
    graded_length: Option<usize>,
    word_index: HashMap<Vec<usize>, usize>,
}

pub fn build_algebra(pres: &QuadraticPresentation, n: usize) -> Result<TruncatedGradedAlgebra, AlgebraError> {
    TruncatedGradedAlgebra::build(pres, n)
}

impl TruncatedGradedAlgebra {
    pub fn build(pres: &QuadraticPresentation, bound: usize) -> Result<Self, AlgebraError> {
        if bound < 2 {
            return Err(AlgebraError::BoundTooSmall(bound));
        }
        let field = pres.field();
        let q = pres.quiver();
        let arrows = q.arrows().len();
        let one = Scalar::one(field);

        let mut basis: Vec<Vec<BasisElement>> = vec![(0..q.vertex_count())
            .map(|v| BasisElement {
                word: vec![],
                source: v,
                target: v,
            })
            .collect()];
        basis.push(
            q.arrows()
                .iter()
                .enumerate()
                .map(|(x, a)| BasisElement {
                    word: vec![x],
                    source: a.source,
                    target: a.target,
                })
                .collect(),
        );
        let mut right: Vec<Vec<Vec<Sparse>>> = vec![basis[0]
            .iter()
            .map(|e| {
                (0..arrows)
                    .map(|x| {
                        if q.arrow(x).target == e.source {
                            vec![(x, one.clone())]
                        } else {
                            vec![]
                        }
                    })
                    .collect()
            })
            .collect()];
        let mut graded_length = if arrows == 0 { Some(1) } else { None };

        for n in 2..=bound {
            if graded_length.is_some() {
                break;
            }
            let prev = &basis[n - 1];
            // candidate words b·x, b normal of degree n-1
            let mut cands: Vec<(Vec<usize>, usize, usize)> = Vec::new();
            for (bi, b) in prev.iter().enumerate() {
                for x in 0..arrows {
                    if q.arrow(x).target == b.source {
                        let mut w = b.word.clone();
                        w.push(x);
                        cands.push((w, bi, x));
                    }
                }
            }
            cands.sort();
            let mut cand_of = vec![vec![usize::MAX; arrows]; prev.len()];
            for (k, (_, bi, x)) in cands.iter().enumerate() {
                cand_of[*bi][*x] = k;
            }
            // K_n = span of b'·rho for normal b' of degree n-2
            let mut rows = Vec::new();
            for (bj, b) in basis[n - 2].iter().enumerate() {
                for rho in pres.relations() {
                    if rho.corner().target != b.source {
                        continue;
                    }
                    let mut row = zero_vec(field, cands.len());
                    for (p, c) in rho.terms() {
                        let (t1, t2) = (p.arrows()[0], p.arrows()[1]);
                        for (k, lam) in &right[n - 2][bj][t1] {
                            let col = cand_of[*k][t2];
                            row[col] = &row[col] + &(c * lam);
                        }
                    }
                    rows.push(row);
                }
            }
            let order: Vec<usize> = (0..cands.len()).rev().collect();
            let (reduced, pivots) = if rows.is_empty() {
                (vec![], vec![])
            } else {
                Matrix::from_rows(field, rows)
                    .expect("uniform rows")
                    .reduce_rows(&order)
            };
            let mut pivot_row = vec![usize::MAX; cands.len()];
            for (r, &p) in pivots.iter().enumerate() {
                pivot_row[p] = r;
            }
            let mut new_index = vec![usize::MAX; cands.len()];
            let mut level = Vec::new();
            for (k, (w, _, x)) in cands.iter().enumerate() {
                if pivot_row[k] == usize::MAX {
                    new_index[k] = level.len();
                    level.push(BasisElement {
                        word: w.clone(),
                        source: q.arrow(*x).source,
                        target: q.arrow(w[0]).target,
                    });
                }
            }
            let mut table: Vec<Vec<Sparse>> = vec![vec![vec![]; arrows]; prev.len()];
            for (k, (_, bi, x)) in cands.iter().enumerate() {
                table[*bi][*x] = if pivot_row[k] == usize::MAX {
                    vec![(new_index[k], one.clone())]
                } else {
                    let row = &reduced[pivot_row[k]];
                    (0..cands.len())
                        .filter(|&c| c != k && !row[c].is_zero())
                        .map(|c| (new_index[c], -&row[c]))
                        .collect()
                };
            }
            right.push(table);
            if level.is_empty() {
                graded_length = Some(n);
            }
            basis.push(level);
        }
        while basis.len() <= bound {
            basis.push(vec![]);
        }
        // right multiplication out of the last computed degree is only
        // needed when it lands in a known (zero) component
        while right.len() < bound {
            let len = basis[right.len()].len();
            right.push(vec![vec![vec![]; arrows]; len]);
        }
        let word_index = basis
            .iter()
            .skip(1)
            .flat_map(|level| level.iter().enumerate().map(|(k, b)| (b.word.clone(), k)))
            .collect();
        Ok(TruncatedGradedAlgebra {
            presentation: pres.clone(),
            max_degree: bound,
            basis,
            right,
            graded_length,
            word_index,
        })
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.presentation
    }
    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }
    pub fn arrow_count(&self) -> usize {
        self.quiver().arrows().len()
    }
    pub fn basis(&self, n: usize) -> &[BasisElement] {
        self.basis.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn basis_name(&self, n: usize, k: usize) -> String {
        let b = &self.basis[n][k];
        if b.word.is_empty() {
            format!("e{}", self.quiver().vertices()[b.source])
        } else {
            path_name(self.quiver(), &b.word)
        }
    }

    /// Index of a nonempty word in its degree's basis, if it is a normal word.
    pub fn basis_index(&self, word: &[usize]) -> Option<usize> {
        self.word_index.get(word).copied()
    }

    /// `v · x` for `v` in degree `n` and an arrow `x`.
    pub fn right_multiply_arrow(&self, n: usize, v: &[Scalar], x: usize) -> Result<Vec<Scalar>, AlgebraError> {
        let field = self.field();
        if self.graded_length.is_some_and(|l| n + 1 >= l) {
            return Ok(vec![]);
        }
        if n >= self.max_degree {
            return Err(AlgebraError::DegreeOverflow {
                degree: n + 1,
                bound: self.max_degree,
            });
        }
        let mut out = zero_vec(field, self.dim(n + 1));
        for (b, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, lam) in &self.right[n][b][x] {
                out[*k] = &out[*k] + &(c * lam);
            }
        }
        Ok(out)
    }

    /// The normal form of an arbitrary path, as a vector in its degree.
    pub fn reduce_word(&self, word: &[usize]) -> Result<Vec<Scalar>, AlgebraError> {
        let field = self.field();
        let Ok(path) = super::Path::new(self.quiver(), word.to_vec()) else {
            return Err(AlgebraError::BadIndex { degree: word.len(), index: 0 });
        };
        let mut v = unit_vec(field, self.dim(0), path.target());
        for (n, &x) in word.iter().enumerate() {
            v = self.right_multiply_arrow(n, &v, x)?;
        }
        Ok(v)
    }

    /// Bases and right-multiplication tables as JSON, for external checking.
    pub fn structure_constants_json(&self) -> Value {
        let degrees: Vec<Value> = (0..=self.max_degree)
            .map(|n| {
                let basis: Vec<Value> = (0..self.dim(n))
                    .map(|k| {
                        let b = &self.basis[n][k];
                        json!({
                            "name": self.basis_name(n, k),
                            "source": self.quiver().vertices()[b.source],
                            "target": self.quiver().vertices()[b.target],
                        })
                    })
                    .collect();
                let mut products = Vec::new();
                if n < self.max_degree && self.is_known(n + 1) {
                    for b in 0..self.dim(n) {
                        for x in 0..self.arrow_count() {
                            let terms = &self.right[n][b][x];
                            if terms.is_empty() {
                                continue;
                            }
                            let t: Vec<Value> = terms
                                .iter()
                                .map(|(k, c)| json!([self.basis_name(n + 1, *k), c.to_string()]))
                                .collect();
                            products.push(json!({
                                "left": self.basis_name(n, b),
                                "arrow": self.quiver().arrow(x).name,
                                "product": t,
                            }));
                        }
                    }
                }
                json!({ "degree": n, "basis": basis, "rightArrowProducts": products })
            })
            .collect();
        json!({
            "field": self.field().to_string(),
            "maxDegree": self.max_degree,
            "gradedLength": self.graded_length,
            "degrees": degrees,
        })
    }
}

impl GradedAlgebra for TruncatedGradedAlgebra {
    fn field(&self) -> FieldSpec {
        self.presentation.field()
    }
    fn vertex_count(&self) -> usize {
        self.quiver().vertex_count()
    }
    fn max_degree(&self) -> usize {
        self.max_degree
    }
    fn graded_length(&self) -> Option<usize> {
        self.graded_length
    }
    fn dim(&self, n: usize) -> usize {
        self.basis.get(n).map_or(0, Vec::len)
    }
    fn corner(&self, n: usize, k: usize) -> Corner {
        let b = &self.basis[n][k];
        Corner {
            source: b.source,
            target: b.target,
        }
    }

    fn multiply_basis(&self, m: usize, a: usize, n: usize, b: usize) -> Result<Vec<Scalar>, AlgebraError> {
        let degree = m + n;
        if !self.is_known(degree) {
            return Err(AlgebraError::DegreeOverflow {
                degree,
                bound: self.max_degree,
            });
        }
        if a >= self.dim(m) {
            return Err(AlgebraError::BadIndex { degree: m, index: a });
        }
        if b >= self.dim(n) {
            return Err(AlgebraError::BadIndex { degree: n, index: b });
        }
        let field = self.field();
        let (u, v) = (&self.basis[m][a], &self.basis[n][b]);
        if u.source != v.target || self.graded_length.is_some_and(|l| degree >= l) {
            return Ok(zero_vec(field, self.dim(degree)));
        }
        let mut w = unit_vec(field, self.dim(m), a);
        for (k, &x) in v.word.iter().enumerate() {
            w = self.right_multiply_arrow(m + k, &w, x)?;
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{quadratic_dual, Path, Relation};

    fn loops(names: &[&str]) -> Quiver {
        let arrows: Vec<(&str, usize, usize)> = names.iter().map(|&n| (n, 0, 0)).collect();
        Quiver::with_vertex_count(1, &arrows).unwrap()
    }

    fn pres(q: &Quiver, field: FieldSpec, rels: &[&[(i64, &[usize])]]) -> QuadraticPresentation {
        let relations = rels
            .iter()
            .map(|terms| {
                Relation::from_terms(
                    field,
                    terms
                        .iter()
                        .map(|(c, p)| (Path::new(q, p.to_vec()).unwrap(), Scalar::from_i64(field, *c)))
                        .collect(),
                )
            })
            .collect();
        QuadraticPresentation::new(field, q.clone(), relations).unwrap()
    }

    fn dims(a: &TruncatedGradedAlgebra) -> Vec<usize> {
        (0..=a.max_degree()).map(|n| a.dim(n)).collect()
    }

    #[test]
    fn polynomial_ring_in_one_variable() {
        let q = loops(&["x"]);
        let a = build_algebra(&pres(&q, FieldSpec::Rational, &[]), 4).unwrap();
        assert_eq!(dims(&a), [1, 1, 1, 1, 1]);
        assert_eq!(a.graded_length(), None);
    }

    #[test]
    fn commutative_and_xy() {
        let q = loops(&["x", "y"]);
        let f = FieldSpec::Rational;
        let comm = build_algebra(&pres(&q, f, &[&[(1, &[0, 1]), (-1, &[1, 0])]]), 4).unwrap();
        assert_eq!(dims(&comm), [1, 2, 3, 4, 5]);
        let xy = build_algebra(&pres(&q, f, &[&[(1, &[0, 1])]]), 4).unwrap();
        assert_eq!(dims(&xy), [1, 2, 3, 4, 5]);
        let names: Vec<String> = (0..3).map(|k| xy.basis_name(2, k)).collect();
        assert_eq!(names, ["xx", "yx", "yy"]);
        let x = xy.multiply_basis(1, 0, 1, 1).unwrap();
        assert!(x.iter().all(Scalar::is_zero));
        // the larger word yx is rewritten to xy
        let v = comm.reduce_word(&[1, 0]).unwrap();
        let w = comm.reduce_word(&[0, 1]).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn exterior_dual() {
        let q = loops(&["x", "y"]);
        let f = FieldSpec::Rational;
        let comm = pres(&q, f, &[&[(1, &[0, 1]), (-1, &[1, 0])]]);
        let ext = build_algebra(&quadratic_dual(&comm), 6).unwrap();
        assert_eq!(&dims(&ext)[..3], [1, 2, 1]);
        assert_eq!(ext.graded_length(), Some(3));
        assert!(ext.multiply_basis(1, 0, 1, 0).unwrap().iter().all(Scalar::is_zero));
        assert_eq!(ext.hilbert().total_series()[..4], [1, 2, 1, 0]);
    }

    #[test]
    fn dual_of_xy_series() {
        let q = loops(&["x", "y"]);
        let f = FieldSpec::Rational;
        let lam = build_algebra(&quadratic_dual(&pres(&q, f, &[&[(1, &[0, 1])]])), 4).unwrap();
        assert_eq!(dims(&lam), [1, 2, 1, 0, 0]);
        assert_eq!(lam.basis_name(2, 0), "y*x*");
    }

    #[test]
    fn truncated_nilpotent_loop() {
        let q = loops(&["x"]);
        let lam = build_algebra(&pres(&q, FieldSpec::Rational, &[&[(1, &[0, 0])]]), 5).unwrap();
        assert_eq!(lam.graded_length(), Some(2));
        assert!(lam.is_known(40));
        assert_eq!(lam.dim(3), 0);
    }

    #[test]
    fn unit_laws_and_overflow() {
        let q = loops(&["x", "y"]);
        let a = build_algebra(&pres(&q, FieldSpec::Rational, &[]), 3).unwrap();
        for k in 0..a.dim(2) {
            assert_eq!(a.multiply_basis(0, 0, 2, k).unwrap(), unit_vec(a.field(), 4, k));
            assert_eq!(a.multiply_basis(2, k, 0, 0).unwrap(), unit_vec(a.field(), 4, k));
        }
        assert!(matches!(a.multiply_basis(2, 0, 2, 0), Err(AlgebraError::DegreeOverflow { .. })));
        assert!(matches!(build_algebra(a.presentation(), 1), Err(AlgebraError::BoundTooSmall(1))));
    }

    #[test]
    fn orthogonal_idempotents() {
        let q = Quiver::with_vertex_count(2, &[("a", 0, 1), ("b", 1, 0)]).unwrap();
        let a = build_algebra(&pres(&q, FieldSpec::Rational, &[]), 3).unwrap();
        // a · a is not composable
        let ia = a.basis_index(&[0]).unwrap();
        assert!(a.multiply_basis(1, ia, 1, ia).unwrap().iter().all(Scalar::is_zero));
        assert_eq!(a.structure_constants_json()["degrees"][1]["basis"][0]["name"], "a");
    }
}
