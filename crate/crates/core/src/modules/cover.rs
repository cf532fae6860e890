use std::collections::{BTreeMap, HashMap};

use crate::algebra::{GradedAlgebra, TruncatedGradedAlgebra};
use crate::linalg::{unit_vec, zero_vec, Matrix, Scalar, Subspace};

use super::{arrow_corners, shift, submodule, top, GradedModuleMap, GradedRightModule, ModuleError};

/// `⊕_g e_{v_g} Λ(-n_g)` with basis `(g, p)`, `p` a basis element of
/// `Λ_{n - n_g}` with target `v_g`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub module: GradedRightModule,
    /// `(degree, vertex)` of each generator.
    pub gens: Vec<(i32, usize)>,
    /// `labels[n - lo][w]`: the basis `(g, p)` of `P_n e_w`, in order.
    pub labels: Vec<Vec<Vec<(usize, usize)>>>,
    index: HashMap<(usize, usize), usize>,
}

impl FreeModule {
    /// Position of `(g, p)` within its `(degree, vertex)` block.
    pub fn position(&self, g: usize, p: usize) -> Option<usize> {
        self.index.get(&(g, p)).copied()
    }

    pub fn labels_at(&self, n: i32, w: usize) -> &[(usize, usize)] {
        let m = &self.module;
        if n < m.lo() || n > m.hi() {
            &[]
        } else {
            &self.labels[(n - m.lo()) as usize][w]
        }
    }
}

/// The free module on the given generators, computed as far as the algebra
/// allows (and no further than `cap`).
pub fn free_module(alg: &TruncatedGradedAlgebra, gens: &[(i32, usize)], cap: Option<i32>) -> FreeModule {
    let field = alg.field();
    let r = alg.vertex_count();
    let arrows = arrow_corners(alg);
    if gens.is_empty() {
        let mut module = GradedRightModule::zero(alg);
        if let Some(c) = cap {
            module = GradedRightModule::from_parts(field, r, arrows, c + 1, c, false, vec![], vec![])
                .expect("empty window");
        }
        return FreeModule {
            module,
            gens: vec![],
            labels: vec![],
            index: HashMap::new(),
        };
    }
    let lo = gens.iter().map(|g| g.0).min().expect("nonempty");
    let (mut hi, mut bounded) = match alg.graded_length() {
        Some(len) => (gens.iter().map(|g| g.0).max().expect("nonempty") + len as i32 - 1, true),
        None => (lo + alg.max_degree() as i32, false),
    };
    if let Some(c) = cap {
        if c < hi {
            hi = c;
            bounded = false;
        }
    }
    let span = (hi - lo + 1).max(0) as usize;
    let mut labels = vec![vec![Vec::new(); r]; span];
    let mut index = HashMap::new();
    for (g, &(deg, v)) in gens.iter().enumerate() {
        for n in deg..=hi {
            let k = (n - deg) as usize;
            for p in 0..alg.dim(k) {
                let c = alg.corner(k, p);
                if c.target == v {
                    let slot = &mut labels[(n - lo) as usize][c.source];
                    index.insert((g, p_key(k, p)), slot.len());
                    slot.push((g, p_key(k, p)));
                }
            }
        }
    }
    let dims: Vec<Vec<usize>> = labels.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
    let mut action = Vec::new();
    for n in lo..hi {
        let k = (n - lo) as usize;
        let mut per_arrow = Vec::new();
        for (x, c) in arrows.iter().enumerate() {
            let mut m = Matrix::zeros(field, dims[k + 1][c.source], dims[k][c.target]);
            for (col, &(g, pk)) in labels[k][c.target].iter().enumerate() {
                let (deg, p) = p_unkey(pk);
                let prod = alg.multiply_basis(deg, p, 1, x).expect("inside the window");
                for (q, coeff) in prod.iter().enumerate() {
                    if !coeff.is_zero() {
                        let row = index[&(g, p_key(deg + 1, q))];
                        m.set(row, col, coeff.clone());
                    }
                }
            }
            per_arrow.push(m);
        }
        action.push(per_arrow);
    }
    let module = GradedRightModule::from_parts(field, r, arrows, lo, hi, bounded, dims, action).expect("consistent");
    debug_assert!(gens.iter().all(|g| g.0 >= lo));
    FreeModule {
        module,
        gens: gens.to_vec(),
        labels,
        index,
    }
}

// Basis elements of Λ in all degrees share one key space: (degree, index)
// packed into a single integer.
const KEY_STRIDE: usize = 1 << 32;

fn p_key(degree: usize, index: usize) -> usize {
    degree * KEY_STRIDE + index
}

fn p_unkey(key: usize) -> (usize, usize) {
    (key / KEY_STRIDE, key % KEY_STRIDE)
}

/// A projective cover `π: P -> M`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub projective: FreeModule,
    /// `(degree, vertex, index)` of the generator of `M` behind each summand.
    pub generators: Vec<(i32, usize, usize)>,
    /// `π` as a map out of `P`.
    pub map: GradedModuleMap,
}

pub fn projective_cover(alg: &TruncatedGradedAlgebra, m: &GradedRightModule) -> Result<Cover, ModuleError> {
    let field = alg.field();
    let t = top(m);
    let gens: Vec<(i32, usize)> = t.generators.iter().map(|&(n, v, _)| (n, v)).collect();
    let cap = if m.is_bounded() { None } else { Some(m.hi()) };
    let p = free_module(alg, &gens, cap);
    let pm = &p.module;
    // π(g, p) = m_g · p, computed along the normal word of p
    let mut images: HashMap<(usize, usize), Vec<Scalar>> = HashMap::new();
    let mut blocks = Vec::new();
    for n in pm.lo()..=pm.hi() {
        let mut row = Vec::new();
        for w in 0..m.vertex_count() {
            let labels = p.labels_at(n, w);
            let target_dim = m.d(n, w);
            let mut cols = Vec::with_capacity(labels.len());
            for &(g, pk) in labels {
                let (k, q) = p_unkey(pk);
                let (gdeg, gv, gi) = t.generators[g];
                let img = if k == 0 {
                    unit_vec(field, m.d(gdeg, gv), gi)
                } else {
                    let word = &alg.basis(k)[q].word;
                    let prev = if k == 1 {
                        unit_vec(field, m.d(gdeg, gv), gi)
                    } else {
                        let prefix = alg.basis_index(&word[..k - 1]).expect("prefixes of normal words are normal");
                        images[&(g, p_key(k - 1, prefix))].clone()
                    };
                    let x = word[k - 1];
                    if n > m.hi() {
                        zero_vec(field, target_dim)
                    } else {
                        m.action(n - 1, x).mul_vec(&prev)
                    }
                };
                images.insert((g, pk), img.clone());
                cols.push(img);
            }
            let block = if cols.is_empty() {
                Matrix::zeros(field, target_dim, 0)
            } else {
                Matrix::from_columns(field, target_dim, &cols).expect("images have target length")
            };
            row.push(block);
        }
        blocks.push(row);
    }
    let map = GradedModuleMap {
        shift: 0,
        lo: pm.lo(),
        hi: pm.hi(),
        blocks,
    };
    Ok(Cover {
        projective: p,
        generators: t.generators,
        map,
    })
}

/// The syzygy `ΩM = ker(P -> M)` together with the cover it came from.
/// `omega_spaces` holds each component as a subspace of `P_n e_w`; the basis of
/// `omega` in that component is the echelon basis of the subspace.
#[derive(Clone, Debug)]
pub struct SyzygyData {
    pub module: GradedRightModule,
    pub cover: Cover,
    pub omega_spaces: BTreeMap<(i32, usize), Subspace>,
    pub omega: GradedRightModule,
}

pub fn syzygy_data(alg: &TruncatedGradedAlgebra, m: &GradedRightModule) -> Result<SyzygyData, ModuleError> {
    let field = alg.field();
    let cover = projective_cover(alg, m)?;
    let pm = &cover.projective.module;
    let (lo, hi, bounded) = (pm.lo(), pm.hi(), pm.is_bounded());
    let mut spaces = Vec::new();
    let mut omega_spaces = BTreeMap::new();
    for n in lo..=hi {
        let row: Vec<Subspace> = (0..m.vertex_count())
            .map(|w| {
                let s = match cover.map.block(n, w) {
                    Some(b) => Subspace::kernel(b),
                    None => Subspace::full(field, pm.d(n, w)),
                };
                if s.dim() > 0 {
                    omega_spaces.insert((n, w), s.clone());
                }
                s
            })
            .collect();
        spaces.push(row);
    }
    let omega = if lo > hi {
        pm.clone()
    } else {
        submodule(pm, lo, hi, bounded, &spaces)?
    }
    .trimmed();
    Ok(SyzygyData {
        module: m.clone(),
        cover,
        omega_spaces,
        omega,
    })
}

pub fn syzygy(alg: &TruncatedGradedAlgebra, m: &GradedRightModule) -> Result<GradedRightModule, ModuleError> {
    Ok(syzygy_data(alg, m)?.omega)
}

/// `F(M) = ΩM(1)`.
pub fn functor_f(alg: &TruncatedGradedAlgebra, m: &GradedRightModule) -> Result<GradedRightModule, ModuleError> {
    Ok(shift(&syzygy(alg, m)?, 1))
}

/// Syzygy data of `M, F(M), ..., F^depth(M)`.
pub fn functor_tower(
    alg: &TruncatedGradedAlgebra,
    m: &GradedRightModule,
    depth: usize,
) -> Result<Vec<SyzygyData>, ModuleError> {
    let mut out: Vec<SyzygyData> = Vec::with_capacity(depth + 1);
    let mut cur = m.clone();
    for _ in 0..=depth {
        let d = syzygy_data(alg, &cur)?;
        cur = shift(&d.omega, 1);
        out.push(d);
    }
    Ok(out)
}

/// The single generation degree of a module, if it is generated in one degree.
fn generation_degree(d: &SyzygyData) -> Result<Option<i32>, String> {
    let mut degs: Vec<i32> = d.cover.generators.iter().map(|g| g.0).collect();
    degs.dedup();
    match degs.as_slice() {
        [] => Ok(None),
        [n] => Ok(Some(*n)),
        _ => Err(format!("generators in degrees {degs:?}")),
    }
}

/// `F(f): F(M) -> F(N)` for a degree-preserving `f: M -> N` between modules
/// generated in one common degree `n`. The lift to the covers sends the
/// summand of a generator `g` to `Σ_h f[h, g]` times the summand of `h`;
/// every generator of `N` is a basis vector of `N_n`, since `J(N)_n = 0`.
pub fn functor_f_on_map(
    data_m: &SyzygyData,
    data_n: &SyzygyData,
    f: &GradedModuleMap,
) -> Result<GradedModuleMap, ModuleError> {
    if f.shift != 0 {
        return Err(ModuleError::NotGeneratedInCommonDegree("map is not degree preserving".into()));
    }
    let dm = generation_degree(data_m).map_err(ModuleError::NotGeneratedInCommonDegree)?;
    let dn = generation_degree(data_n).map_err(ModuleError::NotGeneratedInCommonDegree)?;
    let field = data_m.module.field();
    let om = &data_m.omega;
    let on = &data_n.omega;
    let r = om.vertex_count();
    let n_known_hi = if on.is_bounded() { i32::MAX } else { on.hi() };
    let lo = om.lo();
    let hi = om.hi().min(n_known_hi);
    let zero_map = |lo: i32, hi: i32| GradedModuleMap {
        shift: 0,
        lo: lo - 1,
        hi: hi - 1,
        blocks: (lo..=hi)
            .map(|n| (0..r).map(|w| Matrix::zeros(field, on.d(n, w), om.d(n, w))).collect())
            .collect(),
    };
    let deg = match (dm, dn) {
        (None, _) => return Ok(zero_map(lo, hi)),
        (Some(a), Some(b)) if a != b => {
            return Err(ModuleError::NotGeneratedInCommonDegree(format!(
                "source generated in degree {a}, target in degree {b}"
            )))
        }
        (Some(a), _) => a,
    };
    let (pm, pn) = (&data_m.cover.projective, &data_n.cover.projective);
    // generator h of N at (deg, v, i) -> summand index
    let n_gen: HashMap<(usize, usize), usize> = data_n
        .cover
        .generators
        .iter()
        .enumerate()
        .map(|(h, &(_, v, i))| ((v, i), h))
        .collect();
    let mut blocks = Vec::new();
    for n in lo..=hi {
        let mut row = Vec::new();
        for w in 0..r {
            let empty_m = Subspace::zero(field, pm.module.d(n, w));
            let empty_n = Subspace::zero(field, pn.module.d(n, w));
            let sm = data_m.omega_spaces.get(&(n, w)).unwrap_or(&empty_m);
            let sn = data_n.omega_spaces.get(&(n, w)).unwrap_or(&empty_n);
            let target_len = pn.module.d(n, w);
            let mut cols = Vec::new();
            for omega in sm.basis() {
                let mut image = zero_vec(field, target_len);
                for (pos, c) in omega.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (g, pk) = pm.labels_at(n, w)[pos];
                    let (gdeg, gv, gi) = data_m.cover.generators[g];
                    debug_assert_eq!(gdeg, deg);
                    let Some(fb) = f.block(gdeg, gv) else {
                        return Err(ModuleError::WindowExhausted {
                            degree: gdeg,
                            known_through: f.hi,
                        });
                    };
                    for hi_idx in 0..fb.rows() {
                        let coeff = fb.get(hi_idx, gi);
                        if coeff.is_zero() {
                            continue;
                        }
                        let h = n_gen[&(gv, hi_idx)];
                        let Some(q) = pn.position(h, pk) else {
                            return Err(ModuleError::WindowExhausted {
                                degree: n,
                                known_through: pn.module.hi(),
                            });
                        };
                        image[q] = &image[q] + &(c * coeff);
                    }
                }
                let coords = sn
                    .coordinates(&image)
                    .ok_or_else(|| ModuleError::Shape("lifted map does not preserve syzygies".into()))?;
                cols.push(coords);
            }
            let block = if cols.is_empty() {
                Matrix::zeros(field, sn.dim(), 0)
            } else {
                Matrix::from_columns(field, sn.dim(), &cols).expect("coordinates")
            };
            row.push(block);
        }
        blocks.push(row);
    }
    Ok(GradedModuleMap {
        shift: 0,
        lo: lo - 1,
        hi: hi - 1,
        blocks,
    })
}
