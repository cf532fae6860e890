use crate::linalg::{Matrix, Scalar};

use super::{GradedModuleMap, GradedRightModule, ModuleError};

/// A basis of `Hom(M, N(s))` restricted to the common known window.
/// `exact` is set when the window provably captures every homomorphism.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub shift: i32,
    pub lo: i32,
    pub hi: i32,
    pub basis: Vec<GradedModuleMap>,
    pub exact: bool,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_k basis_k`.
    pub fn combine(&self, coeffs: &[Scalar]) -> GradedModuleMap {
        let mut out = self.basis[0].scale(&coeffs[0]);
        for (b, c) in self.basis.iter().zip(coeffs).skip(1) {
            out = out.add(&b.scale(c)).expect("same window");
        }
        out
    }
}

/// Solves the commutation equations `f_{n+1} ∘ x_M = x_N ∘ f_n` for maps
/// `f_n: M_n e_v -> N_{n+s} e_v`.
pub fn hom_space(m: &GradedRightModule, n: &GradedRightModule, s: i32) -> HomSpace {
    let field = m.field();
    let r = m.vertex_count();
    let lo = m.lo();
    let mut hi = m.hi();
    if !n.is_bounded() {
        hi = hi.min(n.hi() - s);
    }
    let exact = if m.is_bounded() {
        hi == m.hi() && n.is_known(hi + 1 + s)
    } else {
        n.is_bounded() && hi >= n.hi() - s
    };
    // variable layout: blocks in (degree, vertex) order, row-major
    let mut offsets = Vec::new();
    let mut count = 0usize;
    for d in lo..=hi {
        let mut row = Vec::new();
        for v in 0..r {
            row.push(count);
            count += n.d(d + s, v) * m.d(d, v);
        }
        offsets.push(row);
    }
    let var = |d: i32, v: usize, i: usize, j: usize| -> usize {
        offsets[(d - lo) as usize][v] + i * m.d(d, v) + j
    };
    let mut equations: Vec<Vec<Scalar>> = Vec::new();
    for d in lo..=hi {
        let next_known = d < hi || (m.is_bounded() && d == m.hi() && n.is_known(d + 1 + s));
        if !next_known {
            continue;
        }
        for (x, c) in m.arrows().iter().enumerate() {
            let am = m.action(d, x);
            let an = n.action(d + s, x);
            let rows = n.d(d + 1 + s, c.source);
            let cols = m.d(d, c.target);
            let mid_m = m.d(d + 1, c.source);
            let mid_n = n.d(d + s, c.target);
            for i in 0..rows {
                for j in 0..cols {
                    let mut eq = vec![Scalar::zero(field); count];
                    if d < hi {
                        for k in 0..mid_m {
                            let a = am.get(k, j);
                            if !a.is_zero() {
                                let t = var(d + 1, c.source, i, k);
                                eq[t] = &eq[t] + a;
                            }
                        }
                    }
                    for k in 0..mid_n {
                        let a = an.get(i, k);
                        if !a.is_zero() {
                            let t = var(d, c.target, k, j);
                            eq[t] = &eq[t] - a;
                        }
                    }
                    if eq.iter().any(|e| !e.is_zero()) {
                        equations.push(eq);
                    }
                }
            }
        }
    }
    let solutions: Vec<Vec<Scalar>> = if count == 0 {
        vec![]
    } else if equations.is_empty() {
        (0..count).map(|k| crate::linalg::unit_vec(field, count, k)).collect()
    } else {
        Matrix::from_rows(field, equations).expect("uniform").kernel_basis().columns()
    };
    let basis = solutions
        .into_iter()
        .map(|sol| GradedModuleMap {
            shift: s,
            lo,
            hi,
            blocks: (lo..=hi)
                .map(|d| {
                    (0..r)
                        .map(|v| {
                            let (rows, cols) = (n.d(d + s, v), m.d(d, v));
                            let mut b = Matrix::zeros(field, rows, cols);
                            for i in 0..rows {
                                for j in 0..cols {
                                    b.set(i, j, sol[var(d, v, i, j)].clone());
                                }
                            }
                            b
                        })
                        .collect()
                })
                .collect(),
        })
        .collect();
    HomSpace {
        shift: s,
        lo,
        hi,
        basis,
        exact,
    }
}

/// `g ∘ f` on the source degrees where both are specified; `target` is the
/// codomain of `g`, needed where `g` vanishes below its window.
pub fn compose(
    g: &GradedModuleMap,
    f: &GradedModuleMap,
    target: &GradedRightModule,
) -> Result<GradedModuleMap, ModuleError> {
    let lo = f.lo;
    let hi = f.hi.min(g.hi - f.shift);
    let shift = f.shift + g.shift;
    let mut blocks = Vec::new();
    for d in lo..=hi {
        let fb = &f.blocks[(d - lo) as usize];
        let mut row = Vec::new();
        for (v, fm) in fb.iter().enumerate() {
            let composed = match g.block(d + f.shift, v) {
                Some(gm) => gm.mul(fm).map_err(|e| ModuleError::Shape(e.to_string()))?,
                None => Matrix::zeros(fm.field(), target.d(d + shift, v), fm.cols()),
            };
            row.push(composed);
        }
        blocks.push(row);
    }
    Ok(GradedModuleMap { shift, lo, hi, blocks })
}
