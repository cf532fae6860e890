use serde::Serialize;

use crate::algebra::{GradedAlgebra, TruncatedGradedAlgebra};
use crate::modules::{projective_module, socle, DimensionVector, ModuleError};

/// Socle structure of the indecomposable projectives `e_i Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FrobeniusVerdict {
    /// `d + 1`, where `d` is the top nonzero degree, when `Λ` is finite.
    pub graded_length: Option<usize>,
    pub top_degree: Option<usize>,
    /// `soc(Λ) = Λ_d`.
    pub socle_concentrated: bool,
    /// Every `soc(e_i Λ)` is one-dimensional.
    pub per_projective_socle_simple: bool,
    /// `σ` with `soc(e_i Λ) ≅ S_{σ(i)}(-d)`, present only when it is a bijection.
    pub socle_permutation: Option<Vec<usize>>,
    pub socles: Vec<DimensionVector>,
}

impl FrobeniusVerdict {
    /// Graded Frobenius of top degree `d`, witnessed by a socle permutation.
    pub fn is_frobenius(&self) -> bool {
        self.socle_concentrated && self.socle_permutation.is_some()
    }
}

pub fn frobenius_check(alg: &TruncatedGradedAlgebra) -> Result<FrobeniusVerdict, ModuleError> {
    let r = alg.vertex_count();
    let graded_length = alg.graded_length();
    let top_degree = graded_length.map(|l| l.saturating_sub(1));
    let mut socles = Vec::with_capacity(r);
    for i in 0..r {
        socles.push(socle(&projective_module(alg, i)?));
    }
    let Some(d) = top_degree else {
        // socles of an algebra that is infinite within the window are not final
        return Ok(FrobeniusVerdict {
            graded_length,
            top_degree,
            socle_concentrated: false,
            per_projective_socle_simple: false,
            socle_permutation: None,
            socles,
        });
    };
    let d = d as i32;
    let socle_concentrated = socles
        .iter()
        .all(|s| s.dims.iter().all(|(&n, row)| n == d || row.iter().all(|&x| x == 0)));
    let per_projective_socle_simple = socles
        .iter()
        .all(|s| s.dims.values().map(|row| row.iter().sum::<usize>()).sum::<usize>() == 1);
    let socle_permutation = if socle_concentrated && per_projective_socle_simple {
        let sigma: Vec<usize> = socles
            .iter()
            .map(|s| s.dims[&d].iter().position(|&x| x == 1).expect("simple socle"))
            .collect();
        let mut seen = vec![false; r];
        for &t in &sigma {
            seen[t] = true;
        }
        seen.iter().all(|&b| b).then_some(sigma)
    } else {
        None
    };
    Ok(FrobeniusVerdict {
        graded_length,
        top_degree,
        socle_concentrated,
        per_projective_socle_simple,
        socle_permutation,
        socles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, quadratic_dual};
    use crate::catalog;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn exterior_is_frobenius() {
        let v = frobenius_check(&build_algebra(&quadratic_dual(&catalog::commutative_plane(Q)), 6).unwrap()).unwrap();
        assert_eq!((v.graded_length, v.top_degree), (Some(3), Some(2)));
        assert!(v.socle_concentrated && v.per_projective_socle_simple);
        assert_eq!(v.socle_permutation, Some(vec![0]));
    }

    #[test]
    fn xy_dual_is_not() {
        let v = frobenius_check(&build_algebra(&quadratic_dual(&catalog::xy_monomial(Q)), 6).unwrap()).unwrap();
        assert_eq!(v.top_degree, Some(2));
        assert!(!v.socle_concentrated && !v.is_frobenius());
    }

    #[test]
    fn preprojective_a2_dual_permutes_vertices() {
        let v = frobenius_check(&build_algebra(&quadratic_dual(&catalog::preprojective_a2(Q)), 6).unwrap()).unwrap();
        assert_eq!(v.top_degree, Some(2));
        let sigma = v.socle_permutation.expect("Frobenius");
        let mut sorted = sigma.clone();
        sorted.sort();
        assert_eq!(sorted, [0, 1, 2]);
    }

    #[test]
    fn infinite_algebra_has_no_verdict() {
        let v = frobenius_check(&build_algebra(&catalog::free_loop(Q), 5).unwrap()).unwrap();
        assert_eq!(v.graded_length, None);
        assert!(!v.is_frobenius());
    }
}
