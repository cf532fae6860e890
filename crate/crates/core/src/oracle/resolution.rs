//! A second, deliberately plain computation of minimal resolutions of the
//! simples: free modules are lists of generators, maps are raw matrices
//! built from `multiply_basis`, and syzygies are kernels of those matrices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::linalg::{complement_basis, zero_vec, Matrix, Scalar, Subspace};

use super::OracleError;

/// `Ω^n(S_j)` as seen by the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleStep {
    pub step: usize,
    /// Degree -> per-vertex dimensions, nonzero degrees only.
    pub dims: BTreeMap<i32, Vec<usize>>,
    /// Sorted distinct degrees of a minimal generating set.
    pub generation_degrees: Vec<i32>,
    /// Last degree in which the dimensions are certain, if the window is finite.
    pub known_through: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KoszulOracleReport {
    pub simple: usize,
    pub steps: Vec<OracleStep>,
    /// Step at which the degree window stopped the computation.
    pub exhausted_at: Option<usize>,
}

impl KoszulOracleReport {
    /// `Ω^n(S_j)` generated in degree `n` for every resolved step.
    pub fn linear(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.generation_degrees.iter().all(|&d| d == s.step as i32))
    }
}

/// Generators `(degree, vertex)` of `⊕ e_v A(-d)`; the basis of the
/// component in degree `m` at vertex `w` is every `(g, b)` with `b` a basis
/// element of `A_{m - d_g}` in the corner from `w` to `v_g`.
struct Free {
    gens: Vec<(i32, usize)>,
}

impl Free {
    fn basis(&self, alg: &impl GradedAlgebra, m: i32, w: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (g, &(d, v)) in self.gens.iter().enumerate() {
            let k = m - d;
            if k < 0 || !alg.is_known(k as usize) {
                continue;
            }
            let k = k as usize;
            for b in 0..alg.dim(k) {
                let c = alg.corner(k, b);
                if c.target == v && c.source == w {
                    out.push((g, k, b));
                }
            }
        }
        out
    }

    /// Degrees through which every component is computable.
    fn known_through(&self, alg: &impl GradedAlgebra) -> Option<i32> {
        if alg.graded_length().is_some() {
            return None;
        }
        self.gens.iter().map(|&(d, _)| d + alg.max_degree() as i32).min()
    }
}

/// Right multiplication of an element of a free module (given on its basis
/// at `(m, w)`) by a basis element `a` of `A_k` leaving `w`.
fn times(
    alg: &impl GradedAlgebra,
    free: &Free,
    m: i32,
    w: usize,
    v: &[Scalar],
    k: usize,
    a: usize,
) -> Result<Vec<Scalar>, OracleError> {
    let field = alg.field();
    let c = alg.corner(k, a);
    let src = free.basis(alg, m, w);
    let dst = free.basis(alg, m + k as i32, c.source);
    let index: BTreeMap<(usize, usize), usize> = dst.iter().enumerate().map(|(t, &(g, _, b))| ((g, b), t)).collect();
    let mut out = zero_vec(field, dst.len());
    for (coef, &(g, deg, b)) in v.iter().zip(&src) {
        if coef.is_zero() {
            continue;
        }
        let prod = alg.multiply_basis(deg, b, k, a)?;
        for (t, p) in prod.iter().enumerate() {
            if !p.is_zero() {
                out[index[&(g, t)]] = &out[index[&(g, t)]] + &(coef * p);
            }
        }
    }
    Ok(out)
}

/// Last degree with a nonzero component worth computing: the top of the
/// free module when `A` is finite, otherwise the edge of the window.
fn top_degree(alg: &impl GradedAlgebra, free: &Free, known: Option<i32>) -> i32 {
    match (known, alg.graded_length()) {
        (Some(k), _) => k,
        (None, Some(l)) => free.gens.iter().map(|g| g.0).max().unwrap_or(0) + l as i32 - 1,
        (None, None) => unreachable!("an infinite algebra always has a finite window"),
    }
}

/// Dimension tables of `Ω^n(S_j)` and the degrees of their minimal
/// generators, for `n <= up_to`.
pub fn koszul_oracle(alg: &impl GradedAlgebra, simple: usize, up_to: usize) -> Result<KoszulOracleReport, OracleError> {
    let r = alg.vertex_count();
    if simple >= r {
        return Err(OracleError::Malformed(format!("vertex {simple} out of range")));
    }
    let field = alg.field();
    let mut report = KoszulOracleReport {
        simple,
        steps: vec![OracleStep {
            step: 0,
            dims: BTreeMap::from([(0, (0..r).map(|v| usize::from(v == simple)).collect())]),
            generation_degrees: vec![0],
            known_through: None,
        }],
        exhausted_at: None,
    };
    // Ω^1 is the positive part of e_j A, inside the free module on one generator
    let mut free = Free { gens: vec![(0, simple)] };
    let mut known = free.known_through(alg);
    let mut kernel: BTreeMap<(i32, usize), Subspace> = BTreeMap::new();
    for m in 1..=top_degree(alg, &free, known) {
        for w in 0..r {
            let n = free.basis(alg, m, w).len();
            if n > 0 {
                kernel.insert((m, w), Subspace::full(field, n));
            }
        }
    }
    for step in 1..=up_to {
        // minimal generators: complements of the part reached by arrows from below
        let mut gens: Vec<(i32, usize, Vec<Scalar>)> = Vec::new();
        let mut dims: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (&(m, w), k) in &kernel {
            dims.entry(m).or_insert_with(|| vec![0; r])[w] = k.dim();
            let mut reached = Vec::new();
            for a in 0..alg.dim(1) {
                let c = alg.corner(1, a);
                if c.source != w {
                    continue;
                }
                if let Some(below) = kernel.get(&(m - 1, c.target)) {
                    for v in below.basis() {
                        reached.push(times(alg, &free, m - 1, c.target, v, 1, a)?);
                    }
                }
            }
            let j = Subspace::span(field, k.ambient(), reached);
            let coords: Vec<Vec<Scalar>> = j
                .basis()
                .iter()
                .map(|v| k.coordinates(v).ok_or_else(|| OracleError::Malformed("radical escapes the kernel".into())))
                .collect::<Result<_, _>>()?;
            let sub = Matrix::from_columns(field, k.dim(), &coords)?;
            for col in complement_basis(&sub, k.dim())?.columns() {
                gens.push((m, w, k.combine(&col)));
            }
        }
        let mut degrees: Vec<i32> = gens.iter().map(|g| g.0).collect();
        degrees.sort();
        degrees.dedup();
        report.steps.push(OracleStep {
            step,
            dims,
            generation_degrees: degrees,
            known_through: known,
        });
        if gens.is_empty() || step == up_to {
            break;
        }
        let next = Free {
            gens: gens.iter().map(|g| (g.0, g.1)).collect(),
        };
        let next_known = match (known, next.known_through(alg)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let lowest = next.gens.iter().map(|g| g.0).min().expect("generators");
        if next_known.is_some_and(|k| k < lowest + 1) {
            report.exhausted_at = Some(step + 1);
            break;
        }
        // the kernel of the map sending the (g, b) basis vector to g * b
        let mut next_kernel = BTreeMap::new();
        for m in lowest..=top_degree(alg, &next, next_known) {
            for w in 0..r {
                let basis = next.basis(alg, m, w);
                if basis.is_empty() {
                    continue;
                }
                let target_len = free.basis(alg, m, w).len();
                let ker = if target_len == 0 {
                    Subspace::full(field, basis.len())
                } else {
                    let cols = basis
                        .iter()
                        .map(|&(g, k, b)| {
                            let (gd, gv, ref gvec) = gens[g];
                            if k == 0 {
                                Ok(gvec.clone())
                            } else {
                                times(alg, &free, gd, gv, gvec, k, b)
                            }
                        })
                        .collect::<Result<Vec<_>, OracleError>>()?;
                    Subspace::kernel(&Matrix::from_columns(field, target_len, &cols)?)
                };
                if ker.dim() > 0 {
                    next_kernel.insert((m, w), ker);
                }
            }
        }
        free = next;
        kernel = next_kernel;
        known = next_known;
    }
    Ok(report)
}
