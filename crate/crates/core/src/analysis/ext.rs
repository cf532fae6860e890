use std::collections::HashMap;

use crate::algebra::{Corner, GradedAlgebra, TabulatedAlgebra, TruncatedGradedAlgebra};
use crate::linalg::{solve, Matrix, Scalar};
use crate::modules::{
    compose, functor_f_on_map, functor_tower, hom_space, simple_module, GradedModuleMap, GradedRightModule, HomSpace,
    ModuleError, SyzygyData,
};

use super::syzygy_condition::tower_module;
use super::AnalysisError;

/// Flattens the blocks of a map over the window `lo..=hi` of its source,
/// in (degree, vertex, row, column) order.
fn flatten(
    f: &GradedModuleMap,
    source: &GradedRightModule,
    target: &GradedRightModule,
    lo: i32,
    hi: i32,
) -> Result<Vec<Scalar>, ModuleError> {
    let field = source.field();
    let mut out = Vec::new();
    for n in lo..=hi {
        for v in 0..source.vertex_count() {
            let (rows, cols) = (target.dim_at(n + f.shift, v).unwrap_or(0), source.dim_at(n, v).unwrap_or(0));
            if rows * cols == 0 {
                continue;
            }
            match f.block(n, v) {
                Some(b) => {
                    for i in 0..rows {
                        out.extend_from_slice(b.row(i));
                    }
                }
                None if n < f.lo => out.extend(std::iter::repeat_n(Scalar::zero(field), rows * cols)),
                None => {
                    return Err(ModuleError::WindowExhausted {
                        degree: n,
                        known_through: f.hi,
                    })
                }
            }
        }
    }
    Ok(out)
}

/// Coordinates of `f` in a Hom basis.
fn coordinates(
    f: &GradedModuleMap,
    hom: &HomSpace,
    source: &GradedRightModule,
    target: &GradedRightModule,
) -> Result<Vec<Scalar>, AnalysisError> {
    let field = source.field();
    let rhs = flatten(f, source, target, hom.lo, hom.hi)?;
    if hom.dim() == 0 {
        if rhs.iter().all(Scalar::is_zero) {
            return Ok(vec![]);
        }
        return Err(AnalysisError::Inconsistent("nonzero map in a zero Hom-space".into()));
    }
    let cols: Vec<Vec<Scalar>> = hom
        .basis
        .iter()
        .map(|b| flatten(b, source, target, hom.lo, hom.hi))
        .collect::<Result<_, _>>()?;
    let m = Matrix::from_columns(field, rhs.len(), &cols)?;
    let b = Matrix::from_columns(field, rhs.len(), &[rhs])?;
    match solve(&m, &b)? {
        Some(x) => Ok(x.column(0)),
        None => Err(AnalysisError::Inconsistent("composite is not in the Hom-space".into())),
    }
}

/// The orbital ring `O(F, S) = ⊕_i Hom(F^i S, S)` of `S = ⊕ S_j`, with
/// product `f * g = f ∘ F^i(g)` for `f` of degree `i`. The corner
/// `e_ℓ O_i e_j` is `Hom(F^i S_j, S_ℓ)`; it realises `Ext^i(S_j, S_ℓ)`.
pub fn ext_algebra(dual: &TruncatedGradedAlgebra, max_deg: usize) -> Result<TabulatedAlgebra, AnalysisError> {
    let field = dual.field();
    let r = dual.vertex_count();
    let towers: Vec<Vec<SyzygyData>> = (0..r)
        .map(|j| functor_tower(dual, &simple_module(dual, j)?, max_deg))
        .collect::<Result<_, _>>()?;
    let simples: Vec<GradedRightModule> = (0..r).map(|l| simple_module(dual, l)).collect::<Result<_, _>>()?;
    let sources: Vec<Vec<GradedRightModule>> = towers
        .iter()
        .map(|t| (0..=max_deg).map(|i| tower_module(t, i)).collect())
        .collect();

    // homs[i][j][l] = Hom(F^i S_j, S_l); basis of degree i lists (j, l, k) lexicographically
    let mut homs: Vec<Vec<Vec<HomSpace>>> = Vec::with_capacity(max_deg + 1);
    let mut offsets: Vec<Vec<Vec<usize>>> = Vec::with_capacity(max_deg + 1);
    let mut corners: Vec<Vec<Corner>> = Vec::with_capacity(max_deg + 1);
    let mut names: Vec<Vec<String>> = Vec::with_capacity(max_deg + 1);
    for i in 0..=max_deg {
        let mut hi_row = Vec::with_capacity(r);
        let mut off_row = Vec::with_capacity(r);
        let mut cs = Vec::new();
        let mut ns = Vec::new();
        for (j, chain) in sources.iter().enumerate() {
            let mut hr = Vec::with_capacity(r);
            let mut or = Vec::with_capacity(r);
            for (l, s_l) in simples.iter().enumerate() {
                let h = hom_space(&chain[i], s_l, 0);
                if !h.exact {
                    return Err(ModuleError::WindowExhausted {
                        degree: h.hi + 1,
                        known_through: h.hi,
                    }
                    .into());
                }
                or.push(cs.len());
                for k in 0..h.dim() {
                    cs.push(Corner { source: j, target: l });
                    ns.push(format!("f{i}[{j}->{l}]#{k}"));
                }
                hr.push(h);
            }
            hi_row.push(hr);
            off_row.push(or);
        }
        homs.push(hi_row);
        offsets.push(off_row);
        corners.push(cs);
        names.push(ns);
    }

    let mut products = HashMap::new();
    for b in 1..max_deg {
        for j in 0..r {
            for m in 0..r {
                for (kg, g) in homs[b][j][m].basis.iter().enumerate() {
                    let g_idx = offsets[b][j][m] + kg;
                    // F^a(g): F^{a+b} S_j -> F^a S_m
                    let mut fg = g.clone();
                    for a in 1..=max_deg - b {
                        fg = functor_f_on_map(&towers[j][b + a - 1], &towers[m][a - 1], &fg)?;
                        for l in 0..r {
                            for (kf, f) in homs[a][m][l].basis.iter().enumerate() {
                                let composite = compose(f, &fg, &simples[l])?;
                                let target_hom = &homs[a + b][j][l];
                                let coords = coordinates(&composite, target_hom, &sources[j][a + b], &simples[l])?;
                                if coords.iter().all(Scalar::is_zero) {
                                    continue;
                                }
                                let mut v = vec![Scalar::zero(field); corners[a + b].len()];
                                let base = offsets[a + b][j][l];
                                for (t, c) in coords.into_iter().enumerate() {
                                    v[base + t] = c;
                                }
                                products.insert((a, offsets[a][m][l] + kf, b, g_idx), v);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(TabulatedAlgebra::new(field, r, corners, names, products))
}
