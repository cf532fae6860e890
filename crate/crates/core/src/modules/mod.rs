//! Graded right modules over a truncated quadratic algebra, computed inside
//! an explicit degree window.
//!
//! Conventions: an arrow `x: s -> t` (a degree-1 basis element in the corner
//! `e_t Λ e_s`) acts as `M_n e_t -> M_{n+1} e_s`, and `shift(M, k)_n = M_{n+k}`.

mod cover;
mod hom;
mod koszul;

pub use cover::{
    free_module, functor_f, functor_f_on_map, functor_tower, projective_cover, syzygy, syzygy_data, Cover, FreeModule, SyzygyData,
};
pub use hom::{compose, hom_space, HomSpace};
pub use koszul::{is_koszul, koszul_tower, KoszulStatus, KoszulVerdict};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Corner, GradedAlgebra, TruncatedGradedAlgebra};
use crate::linalg::{complement_basis, FieldSpec, Matrix, Scalar, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("degree window exhausted: degree {degree} is not computed (known through {known_through})")]
    WindowExhausted { degree: i32, known_through: i32 },
    #[error("the functor on maps needs source and target generated in one common degree ({0})")]
    NotGeneratedInCommonDegree(String),
    #[error("map shape does not match its modules: {0}")]
    Shape(String),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
}

/// A graded right module known in degrees `lo..=hi`; below `lo` it is zero,
/// above `hi` it is zero when `bounded` and unknown otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRightModule {
    field: FieldSpec,
    vertex_count: usize,
    arrows: Vec<Corner>,
    lo: i32,
    hi: i32,
    bounded: bool,
    dims: Vec<Vec<usize>>,
    /// `action[n - lo][x]`, for `lo <= n < hi`.
    action: Vec<Vec<Matrix>>,
}

impl GradedRightModule {
    /// Assembles a module from per-degree dimensions and arrow actions,
    /// checking every block shape.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        field: FieldSpec,
        vertex_count: usize,
        arrows: Vec<Corner>,
        lo: i32,
        hi: i32,
        bounded: bool,
        dims: Vec<Vec<usize>>,
        action: Vec<Vec<Matrix>>,
    ) -> Result<Self, ModuleError> {
        let span = (hi - lo + 1).max(0) as usize;
        if dims.len() != span || dims.iter().any(|d| d.len() != vertex_count) {
            return Err(ModuleError::Shape("dimension table does not match the window".into()));
        }
        if action.len() != span.saturating_sub(1) {
            return Err(ModuleError::Shape("action table does not match the window".into()));
        }
        for (k, per_arrow) in action.iter().enumerate() {
            if per_arrow.len() != arrows.len() {
                return Err(ModuleError::Shape("one action matrix per arrow is required".into()));
            }
            for (x, m) in per_arrow.iter().enumerate() {
                let c = arrows[x];
                if m.rows() != dims[k + 1][c.source] || m.cols() != dims[k][c.target] || m.field() != field {
                    return Err(ModuleError::Shape(format!(
                        "action of arrow {x} in degree {} has the wrong shape",
                        lo + k as i32
                    )));
                }
            }
        }
        Ok(GradedRightModule {
            field,
            vertex_count,
            arrows,
            lo,
            hi,
            bounded,
            dims,
            action,
        })
    }

    pub fn zero(alg: &TruncatedGradedAlgebra) -> Self {
        GradedRightModule {
            field: alg.field(),
            vertex_count: alg.vertex_count(),
            arrows: arrow_corners(alg),
            lo: 0,
            hi: -1,
            bounded: true,
            dims: vec![],
            action: vec![],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    pub fn arrows(&self) -> &[Corner] {
        &self.arrows
    }
    pub fn lo(&self) -> i32 {
        self.lo
    }
    pub fn hi(&self) -> i32 {
        self.hi
    }
    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn is_known(&self, n: i32) -> bool {
        self.bounded || n <= self.hi
    }

    /// Dimension of `M_n e_v`, or `None` outside the known window.
    pub fn dim_at(&self, n: i32, v: usize) -> Option<usize> {
        if n < self.lo || (n > self.hi && self.bounded) {
            Some(0)
        } else if n > self.hi {
            None
        } else {
            Some(self.dims[(n - self.lo) as usize][v])
        }
    }

    /// Dimension of `M_n e_v`, treating unknown degrees as zero; callers
    /// must stay inside the window.
    pub(crate) fn d(&self, n: i32, v: usize) -> usize {
        self.dim_at(n, v).unwrap_or(0)
    }

    pub fn degree_dim(&self, n: i32) -> Option<usize> {
        (0..self.vertex_count).map(|v| self.dim_at(n, v)).sum()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    /// True when every known component vanishes.
    pub fn is_zero_in_window(&self) -> bool {
        self.total_dim() == 0
    }

    /// The action of arrow `x` out of degree `n`, as a matrix
    /// `M_{n+1} e_{src x} <- M_n e_{tgt x}`.
    pub fn action(&self, n: i32, x: usize) -> Matrix {
        let c = self.arrows[x];
        if n >= self.lo && n < self.hi {
            self.action[(n - self.lo) as usize][x].clone()
        } else {
            Matrix::zeros(self.field, self.d(n + 1, c.source), self.d(n, c.target))
        }
    }

    pub fn dimension_vector(&self) -> DimensionVector {
        let mut dims = BTreeMap::new();
        for n in self.lo..=self.hi {
            dims.insert(n, self.dims[(n - self.lo) as usize].clone());
        }
        DimensionVector {
            dims,
            known_through: if self.bounded { None } else { Some(self.hi) },
        }
        .trimmed()
    }

    /// Drops zero degrees at the bottom of the window (and at the top, when bounded).
    pub fn trimmed(mut self) -> Self {
        let zero = |d: &Vec<usize>| d.iter().all(|&x| x == 0);
        while self.lo <= self.hi && zero(&self.dims[0]) {
            self.dims.remove(0);
            if !self.action.is_empty() {
                self.action.remove(0);
            }
            self.lo += 1;
        }
        if self.bounded {
            while self.lo <= self.hi && zero(self.dims.last().expect("nonempty")) {
                self.dims.pop();
                self.action.pop();
                self.hi -= 1;
            }
        }
        if self.lo > self.hi {
            self.action.clear();
            if self.bounded {
                self.lo = 0;
                self.hi = -1;
            }
        }
        self
    }

    /// Restricts to degrees `<= hi`, forgetting what lies above.
    pub fn truncate_window(mut self, hi: i32) -> Self {
        if hi >= self.hi {
            return self;
        }
        let keep = (hi - self.lo + 1).max(0) as usize;
        self.dims.truncate(keep);
        self.action.truncate(keep.saturating_sub(1));
        self.hi = hi;
        self.bounded = false;
        self
    }

    /// Checks `m · ρ = 0` for every relation of the algebra, in every degree
    /// where both ends are known.
    pub fn satisfies_relations(&self, alg: &TruncatedGradedAlgebra) -> bool {
        for rho in alg.presentation().relations() {
            let c = rho.corner();
            for n in self.lo..=self.hi - 2 {
                let mut acc = Matrix::zeros(self.field, self.d(n + 2, c.source), self.d(n, c.target));
                for (p, coeff) in rho.terms() {
                    let (a, b) = (p.arrows()[0], p.arrows()[1]);
                    let step = self.action(n + 1, b).mul(&self.action(n, a)).expect("compatible");
                    acc = acc.add(&step.scale(coeff)).expect("same shape");
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn arrow_corners(alg: &TruncatedGradedAlgebra) -> Vec<Corner> {
    (0..alg.dim(1)).map(|x| alg.corner(1, x)).collect()
}

/// Per-degree, per-vertex dimensions. `known_through` is `None` when the
/// module is known to vanish above the listed degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DimensionVector {
    pub dims: BTreeMap<i32, Vec<usize>>,
    pub known_through: Option<i32>,
}

impl DimensionVector {
    fn trimmed(mut self) -> Self {
        let bounded = self.known_through.is_none();
        while let Some((&n, d)) = self.dims.iter().next() {
            if d.iter().all(|&x| x == 0) {
                self.dims.remove(&n);
            } else {
                break;
            }
        }
        if bounded {
            while let Some((&n, d)) = self.dims.iter().next_back() {
                if d.iter().all(|&x| x == 0) {
                    self.dims.remove(&n);
                } else {
                    break;
                }
            }
        }
        self
    }

    /// Total dimension in each listed degree.
    pub fn totals(&self) -> BTreeMap<i32, usize> {
        self.dims.iter().map(|(&n, d)| (n, d.iter().sum())).collect()
    }
}

/// A degree-preserving family of linear maps `f_n: M_n e_v -> N_{n+shift} e_v`,
/// specified on source degrees `lo..=hi` (and zero below `lo`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModuleMap {
    pub shift: i32,
    pub lo: i32,
    pub hi: i32,
    /// `blocks[n - lo][v]`
    pub blocks: Vec<Vec<Matrix>>,
}

impl GradedModuleMap {
    pub fn block(&self, n: i32, v: usize) -> Option<&Matrix> {
        if n < self.lo || n > self.hi {
            None
        } else {
            Some(&self.blocks[(n - self.lo) as usize][v])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Matrix::is_zero)
    }

    pub fn identity(m: &GradedRightModule) -> Self {
        GradedModuleMap {
            shift: 0,
            lo: m.lo,
            hi: m.hi,
            blocks: (m.lo..=m.hi)
                .map(|n| (0..m.vertex_count).map(|v| Matrix::identity(m.field, m.d(n, v))).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ModuleError> {
        if (self.shift, self.lo, self.hi) != (other.shift, other.lo, other.hi) {
            return Err(ModuleError::Shape("cannot add maps on different windows".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.add(y).map_err(|e| ModuleError::Shape(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GradedModuleMap { blocks, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        GradedModuleMap {
            blocks: self.blocks.iter().map(|b| b.iter().map(|m| m.scale(c)).collect()).collect(),
            ..self.clone()
        }
    }

    /// Verifies commutation with every arrow wherever both sides are known.
    pub fn commutes(&self, source: &GradedRightModule, target: &GradedRightModule) -> bool {
        for n in self.lo..self.hi {
            for (x, c) in source.arrows.iter().enumerate() {
                let (Some(f0), Some(f1)) = (self.block(n, c.target), self.block(n + 1, c.source)) else {
                    continue;
                };
                let lhs = f1.mul(&source.action(n, x)).expect("shapes");
                let rhs = target.action(n + self.shift, x).mul(f0).expect("shapes");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Surjective in every target degree covered by the map window; `None`
    /// when some nonzero target degree lies outside it.
    pub fn is_surjective(&self, source: &GradedRightModule, target: &GradedRightModule) -> Option<bool> {
        let top = if target.bounded { target.hi } else { target.hi.min(self.hi + self.shift) };
        for n in target.lo..=top {
            for v in 0..target.vertex_count {
                let need = target.d(n, v);
                if need == 0 {
                    continue;
                }
                let m = n - self.shift;
                if m < source.lo {
                    return Some(false);
                }
                let block = self.block(m, v)?;
                if block.rank() < need {
                    return Some(false);
                }
            }
        }
        if !target.bounded && self.hi + self.shift < target.hi {
            return None;
        }
        Some(true)
    }

    pub fn is_injective(&self, source: &GradedRightModule) -> Option<bool> {
        if !source.bounded && self.hi < source.hi {
            return None;
        }
        for n in source.lo..=source.hi {
            for v in 0..source.vertex_count {
                let d = source.d(n, v);
                if d == 0 {
                    continue;
                }
                match self.block(n, v) {
                    Some(b) if b.rank() == d => {}
                    Some(_) => return Some(false),
                    None => return None,
                }
            }
        }
        Some(true)
    }
}

pub fn simple_module(alg: &TruncatedGradedAlgebra, i: usize) -> Result<GradedRightModule, ModuleError> {
    let r = alg.vertex_count();
    if i >= r {
        return Err(ModuleError::BadVertex(i));
    }
    let mut d = vec![0; r];
    d[i] = 1;
    GradedRightModule::from_parts(alg.field(), r, arrow_corners(alg), 0, 0, true, vec![d], vec![])
}

/// `shift(M, k)_n = M_{n+k}`.
pub fn shift(m: &GradedRightModule, k: i32) -> GradedRightModule {
    GradedRightModule {
        lo: m.lo - k,
        hi: m.hi - k,
        ..m.clone()
    }
}

/// The indecomposable projective `e_j Λ`.
pub fn projective_module(alg: &TruncatedGradedAlgebra, j: usize) -> Result<GradedRightModule, ModuleError> {
    if j >= alg.vertex_count() {
        return Err(ModuleError::BadVertex(j));
    }
    Ok(free_module(alg, &[(0, j)], None).module)
}

/// `J(M)_n e_v`: the image of the arrow actions landing in degree `n` at `v`.
fn radical_part(m: &GradedRightModule, n: i32, v: usize) -> Subspace {
    let dim = m.d(n, v);
    let mut vecs = Vec::new();
    if n > m.lo {
        for (x, c) in m.arrows.iter().enumerate() {
            if c.source == v {
                vecs.extend(m.action(n - 1, x).columns());
            }
        }
    }
    Subspace::span(m.field, dim, vecs)
}

/// The top `M / J(M)` and the basis vectors of `M` chosen to represent it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Top {
    pub dims: DimensionVector,
    /// `(degree, vertex, index)` of each generator, a standard basis vector of `M_n e_v`.
    pub generators: Vec<(i32, usize, usize)>,
}

impl Top {
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.generators.iter().map(|g| g.0).collect();
        d.dedup();
        d
    }
}

pub fn top(m: &GradedRightModule) -> Top {
    let mut dims = BTreeMap::new();
    let mut generators = Vec::new();
    for n in m.lo..=m.hi {
        let mut row = vec![0; m.vertex_count];
        for (v, slot) in row.iter_mut().enumerate() {
            let dim = m.d(n, v);
            if dim == 0 {
                continue;
            }
            let j = radical_part(m, n, v);
            let sub = Matrix::from_columns(m.field, dim, j.basis()).expect("vectors in ambient");
            let comp = complement_basis(&sub, dim).expect("independent basis");
            for col in comp.columns() {
                let idx = col.iter().position(|s| !s.is_zero()).expect("unit vector");
                generators.push((n, v, idx));
            }
            *slot = comp.cols();
        }
        dims.insert(n, row);
    }
    Top {
        dims: DimensionVector {
            dims,
            known_through: if m.bounded { None } else { Some(m.hi) },
        }
        .trimmed(),
        generators,
    }
}

/// `soc(M) = {m : m · Λ_1 = 0}` in each known degree, as subspaces.
pub fn socle_spaces(m: &GradedRightModule) -> BTreeMap<(i32, usize), Subspace> {
    let mut out = BTreeMap::new();
    for n in m.lo..=m.hi {
        if !m.is_known(n + 1) {
            break;
        }
        for v in 0..m.vertex_count {
            let dim = m.d(n, v);
            if dim == 0 {
                continue;
            }
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for (x, c) in m.arrows.iter().enumerate() {
                if c.target == v {
                    let a = m.action(n, x);
                    rows.extend((0..a.rows()).map(|i| a.row(i).to_vec()));
                }
            }
            let k = if rows.is_empty() {
                Subspace::full(m.field, dim)
            } else {
                Subspace::kernel(&Matrix::from_rows(m.field, rows).expect("uniform"))
            };
            out.insert((n, v), k);
        }
    }
    out
}

pub fn socle(m: &GradedRightModule) -> DimensionVector {
    let spaces = socle_spaces(m);
    let mut dims: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    let top = if m.bounded { m.hi } else { m.hi - 1 };
    for n in m.lo..=top {
        dims.insert(n, vec![0; m.vertex_count]);
    }
    for ((n, v), s) in spaces {
        dims.entry(n).or_insert_with(|| vec![0; m.vertex_count])[v] = s.dim();
    }
    DimensionVector {
        dims,
        known_through: if m.bounded { None } else { Some(top) },
    }
    .trimmed()
}

/// The kernel of a map as a submodule of its source, restricted to the
/// degrees where the map is specified.
pub fn kernel_module(source: &GradedRightModule, f: &GradedModuleMap) -> Result<GradedRightModule, ModuleError> {
    let lo = source.lo;
    let hi = if source.bounded && f.hi >= source.hi { source.hi } else { source.hi.min(f.hi) };
    let bounded = source.bounded && f.hi >= source.hi;
    let mut spaces = Vec::new();
    for n in lo..=hi {
        let row: Vec<Subspace> = (0..source.vertex_count)
            .map(|v| {
                let dim = source.d(n, v);
                match f.block(n, v) {
                    Some(b) if n >= f.lo => Subspace::kernel(b),
                    _ => Subspace::full(source.field, dim),
                }
            })
            .collect();
        spaces.push(row);
    }
    submodule(source, lo, hi, bounded, &spaces)
}

/// The submodule with components `spaces[n - lo][v]` (which must be closed
/// under the action), in the coordinates of each subspace's basis.
pub(crate) fn submodule(
    parent: &GradedRightModule,
    lo: i32,
    hi: i32,
    bounded: bool,
    spaces: &[Vec<Subspace>],
) -> Result<GradedRightModule, ModuleError> {
    let field = parent.field;
    let dims: Vec<Vec<usize>> = spaces.iter().map(|r| r.iter().map(Subspace::dim).collect()).collect();
    let mut action = Vec::new();
    for n in lo..hi {
        let k = (n - lo) as usize;
        let mut per_arrow = Vec::new();
        for (x, c) in parent.arrows.iter().enumerate() {
            let src = &spaces[k][c.target];
            let dst = &spaces[k + 1][c.source];
            let a = parent.action(n, x);
            let cols: Vec<Vec<Scalar>> = src
                .basis()
                .iter()
                .map(|b| {
                    let image = a.mul_vec(b);
                    dst.coordinates(&image).ok_or_else(|| {
                        ModuleError::Shape(format!("subspace in degree {n} is not closed under arrow {x}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            let m = if cols.is_empty() {
                Matrix::zeros(field, dst.dim(), 0)
            } else {
                Matrix::from_columns(field, dst.dim(), &cols).expect("coordinates")
            };
            per_arrow.push(m);
        }
        action.push(per_arrow);
    }
    GradedRightModule::from_parts(field, parent.vertex_count, parent.arrows.clone(), lo, hi, bounded, dims, action)
}
