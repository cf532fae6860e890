use serde::Serialize;

use crate::algebra::{Corner, Element, GradedAlgebra};
use crate::linalg::{axpy, is_zero_vec, projective_point_count, projective_points, zero_vec, FieldSpec, Scalar};

use super::{OracleConfig, OracleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    Full,
    Partial,
}

/// `x ∈ e_i A_d e_j` and `y ∈ e_j A_e e_ℓ`, both nonzero, with `xy = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ZeroDivisorWitness {
    pub degrees: (usize, usize),
    /// `(i, j, ℓ)`.
    pub corners: (usize, usize, usize),
    pub left: Vec<String>,
    pub right: Vec<String>,
    /// The product re-verified to vanish through the structure constants.
    pub verified: bool,
}

/// A block of corner pairs that was not enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SkippedBlock {
    pub degrees: (usize, usize),
    pub corners: (usize, usize, usize),
    pub pairs: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ZeroDivisorReport {
    pub field: String,
    /// Largest `d + e` examined.
    pub max_total_degree: usize,
    pub coverage: Coverage,
    pub pairs_checked: u64,
    pub witness: Option<ZeroDivisorWitness>,
    pub skipped: Vec<SkippedBlock>,
}

impl ZeroDivisorReport {
    /// 0: no witness with full coverage, 3: witness found, 2: partial coverage.
    pub fn exit_code(&self) -> i32 {
        match (&self.witness, self.coverage) {
            (Some(_), _) => 3,
            (None, Coverage::Full) => 0,
            (None, Coverage::Partial) => 2,
        }
    }
}

/// All nonzero vectors of `F_p^dim` in lexicographic order of residues.
fn all_nonzero(field: FieldSpec, dim: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let p = field.characteristic();
    let total = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    (1..total).map(move |mut code| {
        let mut v = zero_vec(field, dim);
        for k in (0..dim).rev() {
            v[k] = Scalar::from_i64(field, (code % p as u128) as i64);
            code /= p as u128;
        }
        v
    })
}

fn point_count(field: FieldSpec, dim: usize, projective: bool) -> Option<u64> {
    let p = field.characteristic();
    if projective {
        projective_point_count(p, dim)
    } else {
        p.checked_pow(dim as u32).map(|n| n - 1)
    }
}

fn embed(field: FieldSpec, len: usize, idx: &[usize], local: &[Scalar]) -> Vec<Scalar> {
    let mut v = zero_vec(field, len);
    for (&k, c) in idx.iter().zip(local) {
        v[k] = c.clone();
    }
    v
}

fn search(alg: &impl GradedAlgebra, cfg: &OracleConfig, projective: bool) -> Result<ZeroDivisorReport, OracleError> {
    let field = alg.field();
    if !field.is_prime_field() {
        return Err(OracleError::NotPrimeField(field.to_string()));
    }
    if field != cfg.field {
        return Err(OracleError::FieldMismatch {
            algebra: field.to_string(),
            oracle: cfg.field.to_string(),
        });
    }
    let top = cfg.max_total_degree.min(alg.max_degree());
    let r = alg.vertex_count();
    let mut report = ZeroDivisorReport {
        field: field.to_string(),
        max_total_degree: top,
        coverage: Coverage::Full,
        pairs_checked: 0,
        witness: None,
        skipped: vec![],
    };
    for total in 2..=top {
        for d in 1..total {
            let e = total - d;
            // products of basis elements a * b, computed once per degree pair
            let table: Vec<Vec<Vec<Scalar>>> = (0..alg.dim(d))
                .map(|a| (0..alg.dim(e)).map(|b| alg.multiply_basis(d, a, e, b)).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?;
            let out_len = alg.dim(total);
            for i in 0..r {
                for j in 0..r {
                    let xs = alg.corner_indices(d, Corner { source: j, target: i });
                    if xs.is_empty() {
                        continue;
                    }
                    for l in 0..r {
                        let ys = alg.corner_indices(e, Corner { source: l, target: j });
                        if ys.is_empty() {
                            continue;
                        }
                        let pairs = point_count(field, xs.len(), projective)
                            .zip(point_count(field, ys.len(), projective))
                            .and_then(|(a, b)| a.checked_mul(b));
                        match pairs {
                            Some(n) if report.pairs_checked.saturating_add(n) <= cfg.budget => {}
                            _ => {
                                report.coverage = Coverage::Partial;
                                report.skipped.push(SkippedBlock {
                                    degrees: (d, e),
                                    corners: (i, j, l),
                                    pairs,
                                });
                                continue;
                            }
                        }
                        let x_points: Vec<Vec<Scalar>> = if projective {
                            projective_points(field, xs.len()).collect()
                        } else {
                            all_nonzero(field, xs.len()).collect()
                        };
                        let y_points: Vec<Vec<Scalar>> = if projective {
                            projective_points(field, ys.len()).collect()
                        } else {
                            all_nonzero(field, ys.len()).collect()
                        };
                        for x in &x_points {
                            // x times each basis element of the y-corner
                            let xb: Vec<Vec<Scalar>> = ys
                                .iter()
                                .map(|&b| {
                                    let mut acc = zero_vec(field, out_len);
                                    for (c, &a) in x.iter().zip(&xs) {
                                        if !c.is_zero() {
                                            axpy(&mut acc, c, &table[a][b]);
                                        }
                                    }
                                    acc
                                })
                                .collect();
                            for y in &y_points {
                                report.pairs_checked += 1;
                                let mut prod = zero_vec(field, out_len);
                                for (c, col) in y.iter().zip(&xb) {
                                    if !c.is_zero() {
                                        axpy(&mut prod, c, col);
                                    }
                                }
                                if is_zero_vec(&prod) {
                                    let left = embed(field, alg.dim(d), &xs, x);
                                    let right = embed(field, alg.dim(e), &ys, y);
                                    let verified = verify_product(alg, d, &left, e, &right)?;
                                    report.witness = Some(ZeroDivisorWitness {
                                        degrees: (d, e),
                                        corners: (i, j, l),
                                        left: left.iter().map(|s| s.to_string()).collect(),
                                        right: right.iter().map(|s| s.to_string()).collect(),
                                        verified,
                                    });
                                    return Ok(report);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn verify_product(
    alg: &impl GradedAlgebra,
    d: usize,
    left: &[Scalar],
    e: usize,
    right: &[Scalar],
) -> Result<bool, OracleError> {
    let x = Element {
        degree: d,
        coeffs: left.to_vec(),
    };
    let y = Element {
        degree: e,
        coeffs: right.to_vec(),
    };
    Ok(!x.is_zero() && !y.is_zero() && alg.multiply(&x, &y)?.is_zero())
}

/// Searches homogeneous corner pairs `(x, y)` in order of total degree, then
/// left degree, then corner triple, then coefficient vectors, taking one
/// representative per line on each side. Blocks that would exceed the pair
/// budget are skipped and recorded, making the coverage partial.
pub fn zero_divisor_search(alg: &impl GradedAlgebra, cfg: &OracleConfig) -> Result<ZeroDivisorReport, OracleError> {
    search(alg, cfg, true)
}

/// The same search over every nonzero vector, without normalising scalars.
/// Only meant for validating the projective shortcut on tiny algebras.
pub fn zero_divisor_search_full(
    alg: &impl GradedAlgebra,
    cfg: &OracleConfig,
) -> Result<ZeroDivisorReport, OracleError> {
    search(alg, cfg, false)
}

/// Re-multiplies a witness through the algebra's structure constants.
pub fn verify_zero_divisor(alg: &impl GradedAlgebra, w: &ZeroDivisorWitness) -> Result<bool, OracleError> {
    let field = alg.field();
    let parse = |v: &[String]| -> Result<Vec<Scalar>, OracleError> {
        v.iter()
            .map(|s| Scalar::parse(field, s).map_err(|e| OracleError::Malformed(e.to_string())))
            .collect()
    };
    let (d, e) = w.degrees;
    let (left, right) = (parse(&w.left)?, parse(&w.right)?);
    if left.len() != alg.dim(d) || right.len() != alg.dim(e) {
        return Err(OracleError::Malformed("witness length does not match the algebra".into()));
    }
    verify_product(alg, d, &left, e, &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, quadratic_dual};
    use crate::catalog;

    const F2: FieldSpec = FieldSpec::Prime(2);
    const F3: FieldSpec = FieldSpec::Prime(3);

    fn cfg(field: FieldSpec, top: usize) -> OracleConfig {
        OracleConfig {
            field,
            max_total_degree: top,
            budget: 1_000_000,
        }
    }

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn xy_has_the_obvious_witness() {
        let a = build_algebra(&catalog::xy_monomial(F2), 4).unwrap();
        let rep = zero_divisor_search(&a, &cfg(F2, 4)).unwrap();
        let w = rep.witness.as_ref().unwrap();
        assert_eq!(w.degrees, (1, 1));
        assert_eq!((w.left.clone(), w.right.clone()), (strs(&["1", "0"]), strs(&["0", "1"])));
        assert!(w.verified && verify_zero_divisor(&a, w).unwrap());
        assert_eq!(rep.exit_code(), 3);
    }

    #[test]
    fn exterior_squares_vanish() {
        let a = build_algebra(&quadratic_dual(&catalog::commutative_plane(F2)), 4).unwrap();
        let w = zero_divisor_search(&a, &cfg(F2, 4)).unwrap().witness.unwrap();
        assert_eq!((w.degrees, w.left, w.right), ((1, 1), strs(&["1", "0"]), strs(&["1", "0"])));
    }

    #[test]
    fn polynomial_ring_has_none() {
        let a = build_algebra(&catalog::commutative_plane(F2), 4).unwrap();
        let rep = zero_divisor_search(&a, &cfg(F2, 4)).unwrap();
        assert_eq!((rep.witness.is_none(), rep.coverage, rep.exit_code()), (true, Coverage::Full, 0));
        assert!(rep.pairs_checked > 0);
    }

    #[test]
    fn budget_gives_partial_coverage() {
        let a = build_algebra(&catalog::commutative_plane(F2), 4).unwrap();
        let rep = zero_divisor_search(&a, &OracleConfig { budget: 20, ..cfg(F2, 4) }).unwrap();
        assert_eq!((rep.coverage, rep.exit_code()), (Coverage::Partial, 2));
        assert!(rep.pairs_checked <= 20 && !rep.skipped.is_empty());
    }

    #[test]
    fn projective_shortcut_agrees_with_full_enumeration() {
        for field in [F2, F3] {
            for p in [
                catalog::xy_monomial(field),
                catalog::commutative_plane(field),
                catalog::dual_numbers(field),
                quadratic_dual(&catalog::commutative_plane(field)),
                catalog::preprojective_a2(field),
            ] {
                let a = build_algebra(&p, 3).unwrap();
                let c = cfg(field, 3);
                let proj = zero_divisor_search(&a, &c).unwrap();
                let full = zero_divisor_search_full(&a, &c).unwrap();
                assert_eq!(proj.witness.is_some(), full.witness.is_some());
                assert_eq!(proj.witness.map(|w| (w.degrees, w.corners)), full.witness.map(|w| (w.degrees, w.corners)));
            }
        }
    }

    #[test]
    fn rejects_rational_algebras() {
        let a = build_algebra(&catalog::xy_monomial(FieldSpec::Rational), 3).unwrap();
        assert!(zero_divisor_search(&a, &cfg(F2, 3)).is_err());
    }
}
