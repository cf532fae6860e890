//! Quivers, incidence matrices, connectivity and the preprojective construction.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Path, PresentationError, QuadraticPresentation, Relation};
use crate::linalg::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("a quiver needs at least one vertex")]
    NoVertices,
    #[error("duplicate vertex name '{0}'")]
    DuplicateVertex(String),
    #[error("duplicate arrow name '{0}'")]
    DuplicateArrow(String),
    #[error("arrow '{arrow}' refers to unknown vertex {vertex}")]
    BadEndpoint { arrow: String, vertex: String },
    #[error("permutation search exceeded its budget at {vertices} vertices")]
    SearchExceeded { vertices: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph. Vertex and arrow order is the input order
/// and every basis built on top of the quiver inherits it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        if vertices.is_empty() {
            return Err(QuiverError::NoVertices);
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(QuiverError::DuplicateArrow(a.name.clone()));
            }
            for v in [a.source, a.target] {
                if v >= vertices.len() {
                    return Err(QuiverError::BadEndpoint {
                        arrow: a.name.clone(),
                        vertex: v.to_string(),
                    });
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor from `(name, source, target)` triples with
    /// vertices named `1..=r`.
    pub fn with_vertex_count(r: usize, arrows: &[(&str, usize, usize)]) -> Result<Self, QuiverError> {
        let vertices = (1..=r).map(|i| i.to_string()).collect();
        let arrows = arrows
            .iter()
            .map(|&(n, s, t)| Arrow {
                name: n.to_string(),
                source: s,
                target: t,
            })
            .collect();
        Quiver::new(vertices, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Same vertices, every arrow reversed and renamed `name*`.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: format!("{}*", a.name),
                source: a.target,
                target: a.source,
            })
            .collect();
        Quiver {
            vertices: self.vertices.clone(),
            arrows,
        }
    }

    /// Restriction to a set of vertices (kept in order) and the arrows between them.
    pub fn restrict(&self, keep: &[usize]) -> (Quiver, Vec<usize>) {
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (k, &v) in keep.iter().enumerate() {
            new_index[v] = k;
        }
        let mut arrow_map = Vec::new();
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| new_index[a.source] != usize::MAX && new_index[a.target] != usize::MAX)
            .map(|(i, a)| {
                arrow_map.push(i);
                Arrow {
                    name: a.name.clone(),
                    source: new_index[a.source],
                    target: new_index[a.target],
                }
            })
            .collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        (Quiver { vertices, arrows }, arrow_map)
    }
}

/// `B[j][i]` is the number of arrows from `i` to `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceMatrix(pub Vec<Vec<u64>>);

impl IncidenceMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn transpose(&self) -> IncidenceMatrix {
        let r = self.size();
        IncidenceMatrix((0..r).map(|i| (0..r).map(|j| self.0[j][i]).collect()).collect())
    }
}

pub fn incidence_matrix(q: &Quiver) -> IncidenceMatrix {
    let r = q.vertex_count();
    let mut b = vec![vec![0u64; r]; r];
    for a in q.arrows() {
        b[a.target][a.source] += 1;
    }
    IncidenceMatrix(b)
}

fn reachable(q: &Quiver, start: usize, forward: bool, undirected: bool) -> Vec<bool> {
    let r = q.vertex_count();
    let mut adj = vec![Vec::new(); r];
    for a in q.arrows() {
        if forward || undirected {
            adj[a.source].push(a.target);
        }
        if !forward || undirected {
            adj[a.target].push(a.source);
        }
    }
    let mut seen = vec![false; r];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

pub fn is_connected(q: &Quiver) -> bool {
    reachable(q, 0, true, true).into_iter().all(|b| b)
}

pub fn is_strongly_connected(q: &Quiver) -> bool {
    reachable(q, 0, true, false).into_iter().all(|b| b)
        && reachable(q, 0, false, false).into_iter().all(|b| b)
}

/// Some ordered pair `(i, j)`, `i != j`, with no path from `i` to `j`.
pub fn missing_path(q: &Quiver) -> Option<(usize, usize)> {
    (0..q.vertex_count()).find_map(|i| {
        let seen = reachable(q, i, true, false);
        seen.iter().position(|&b| !b).map(|j| (i, j))
    })
}

/// Connected components of the underlying undirected graph, each sorted,
/// ordered by smallest vertex.
pub fn connected_components(q: &Quiver) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; q.vertex_count()];
    let mut out = Vec::new();
    for v in 0..q.vertex_count() {
        if assigned[v] {
            continue;
        }
        let seen = reachable(q, v, true, true);
        let comp: Vec<usize> = (0..q.vertex_count()).filter(|&w| seen[w]).collect();
        for &w in &comp {
            assigned[w] = true;
        }
        out.push(comp);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeProfile {
    /// `(indegree, outdegree)` per vertex.
    pub degrees: Vec<(usize, usize)>,
    pub min_outdegree_at_least_two: bool,
    pub min_indegree_at_least_two: bool,
}

pub fn degree_profile(q: &Quiver) -> DegreeProfile {
    let mut degrees = vec![(0usize, 0usize); q.vertex_count()];
    for a in q.arrows() {
        degrees[a.target].0 += 1;
        degrees[a.source].1 += 1;
    }
    DegreeProfile {
        min_outdegree_at_least_two: degrees.iter().all(|d| d.1 >= 2),
        min_indegree_at_least_two: degrees.iter().all(|d| d.0 >= 2),
        degrees,
    }
}

fn fresh_name(taken: &HashSet<String>, base: &str) -> String {
    let mut name = format!("{base}*");
    while taken.contains(&name) {
        name.push('*');
    }
    name
}

/// The double quiver: every arrow `a: i -> j` followed (after all original
/// arrows) by a reverse arrow `a*: j -> i`.
pub fn double_quiver(g: &Quiver) -> Quiver {
    let mut taken: HashSet<String> = g.arrows().iter().map(|a| a.name.clone()).collect();
    let mut arrows = g.arrows().to_vec();
    for a in g.arrows() {
        let name = fresh_name(&taken, &a.name);
        taken.insert(name.clone());
        arrows.push(Arrow {
            name,
            source: a.target,
            target: a.source,
        });
    }
    Quiver {
        vertices: g.vertices.clone(),
        arrows,
    }
}

/// Preprojective relations on the double quiver: for each vertex `v`,
/// `sum_{src(a)=v} a* a - sum_{tgt(a)=v} a a*` (paths composed right to left).
pub fn preprojective_presentation(
    g: &Quiver,
    field: FieldSpec,
) -> Result<QuadraticPresentation, PresentationError> {
    let double = double_quiver(g);
    let n = g.arrows().len();
    let mut per_vertex: BTreeMap<usize, Vec<(Path, Scalar)>> = BTreeMap::new();
    for (k, a) in g.arrows().iter().enumerate() {
        let star = n + k;
        // a* a : loop at src(a)
        per_vertex
            .entry(a.source)
            .or_default()
            .push((Path::new(&double, vec![star, k]).expect("composable"), Scalar::one(field)));
        // a a* : loop at tgt(a)
        per_vertex
            .entry(a.target)
            .or_default()
            .push((Path::new(&double, vec![k, star]).expect("composable"), -Scalar::one(field)));
    }
    let relations = per_vertex
        .into_values()
        .map(|terms| Relation::from_terms(field, terms))
        .collect();
    QuadraticPresentation::new(field, double, relations)
}

/// A permutation `sigma` (as `P[j][sigma(j)] = 1`) with `B = P B^T`, if any.
/// Exhaustive over all `r!` candidates for `r <= 8`; larger quivers use a
/// backtracking match of rows of `B` against columns of `B`.
pub fn check_cy2_incidence(b: &IncidenceMatrix) -> Result<Option<Vec<usize>>, QuiverError> {
    const EXHAUSTIVE_LIMIT: usize = 8;
    const NODE_BUDGET: u64 = 10_000_000;
    let r = b.size();
    let bt = b.transpose();
    // (P B^T)[j][i] = B^T[sigma(j)][i] = B[i][sigma(j)], so row j of B must
    // equal column sigma(j) of B
    let fits = |j: usize, c: usize| b.0[j] == bt.0[c];
    let found = if r <= EXHAUSTIVE_LIMIT {
        let mut perm: Vec<usize> = (0..r).collect();
        loop {
            if (0..r).all(|j| fits(j, perm[j])) {
                break Some(perm);
            }
            if !next_permutation(&mut perm) {
                break None;
            }
        }
    } else {
        let mut used = vec![false; r];
        let mut perm = vec![0; r];
        let mut nodes = 0u64;
        match backtrack(0, r, &fits, &mut used, &mut perm, &mut nodes, NODE_BUDGET) {
            Some(true) => Some(perm),
            Some(false) => None,
            None => return Err(QuiverError::SearchExceeded { vertices: r }),
        }
    };
    if let Some(p) = &found {
        debug_assert!(verify_permutation(b, p));
    }
    Ok(found)
}

fn backtrack(
    j: usize,
    r: usize,
    fits: &dyn Fn(usize, usize) -> bool,
    used: &mut [bool],
    perm: &mut [usize],
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    if j == r {
        return Some(true);
    }
    for c in 0..r {
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        if used[c] || !fits(j, c) {
            continue;
        }
        used[c] = true;
        perm[j] = c;
        if backtrack(j + 1, r, fits, used, perm, nodes, budget)? {
            return Some(true);
        }
        used[c] = false;
    }
    Some(false)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Recomputes `P B^T` by explicit multiplication and compares with `B`.
pub fn verify_permutation(b: &IncidenceMatrix, sigma: &[usize]) -> bool {
    let r = b.size();
    let bt = b.transpose();
    (0..r).all(|j| {
        (0..r).all(|i| {
            let pbt: u64 = (0..r).map(|k| u64::from(sigma[j] == k) * bt.0[k][i]).sum();
            pbt == b.0[j][i]
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle3() -> Quiver {
        Quiver::with_vertex_count(3, &[("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).unwrap()
    }

    fn star_d4() -> Quiver {
        Quiver::with_vertex_count(5, &[("a", 1, 0), ("b", 2, 0), ("c", 3, 0), ("d", 4, 0)]).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(Quiver::with_vertex_count(0, &[]), Err(QuiverError::NoVertices));
        assert!(matches!(
            Quiver::with_vertex_count(1, &[("a", 0, 0), ("a", 0, 0)]),
            Err(QuiverError::DuplicateArrow(_))
        ));
        assert!(matches!(
            Quiver::with_vertex_count(1, &[("a", 0, 3)]),
            Err(QuiverError::BadEndpoint { .. })
        ));
    }

    #[test]
    fn incidence_examples() {
        let loop1 = Quiver::with_vertex_count(1, &[("x", 0, 0)]).unwrap();
        assert_eq!(incidence_matrix(&loop1).0, vec![vec![1]]);
        let arrow = Quiver::with_vertex_count(2, &[("a", 0, 1)]).unwrap();
        assert_eq!(incidence_matrix(&arrow).0, vec![vec![0, 0], vec![1, 0]]);
        let b = incidence_matrix(&double_quiver(&cycle3()));
        assert_eq!(b.0, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn connectivity_examples() {
        let point = Quiver::with_vertex_count(1, &[]).unwrap();
        assert!(is_connected(&point) && is_strongly_connected(&point));
        let arrow = Quiver::with_vertex_count(2, &[("a", 0, 1)]).unwrap();
        assert!(is_connected(&arrow));
        assert!(!is_strongly_connected(&arrow));
        assert_eq!(missing_path(&arrow), Some((1, 0)));
        assert!(is_connected(&cycle3()) && is_strongly_connected(&cycle3()));
        let two = Quiver::with_vertex_count(2, &[]).unwrap();
        assert_eq!(connected_components(&two), vec![vec![0], vec![1]]);
    }

    #[test]
    fn degree_examples() {
        let loop1 = Quiver::with_vertex_count(1, &[("x", 0, 0)]).unwrap();
        assert_eq!(degree_profile(&loop1).degrees, vec![(1, 1)]);
        let p = degree_profile(&double_quiver(&cycle3()));
        assert_eq!(p.degrees, vec![(2, 2); 3]);
        assert!(p.min_indegree_at_least_two && p.min_outdegree_at_least_two);
        let p = degree_profile(&double_quiver(&star_d4()));
        assert_eq!(p.degrees, vec![(4, 4), (1, 1), (1, 1), (1, 1), (1, 1)]);
        assert!(!p.min_outdegree_at_least_two);
    }

    #[test]
    fn double_examples() {
        let arrow = Quiver::with_vertex_count(2, &[("a", 0, 1)]).unwrap();
        let d = double_quiver(&arrow);
        assert_eq!(
            d.arrows(),
            &[
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "a*".into(), source: 1, target: 0 }
            ]
        );
        let loop1 = Quiver::with_vertex_count(1, &[("x", 0, 0)]).unwrap();
        assert_eq!(double_quiver(&loop1).arrows().len(), 2);
        assert_eq!(double_quiver(&cycle3()).arrows().len(), 6);
        // names stay distinct even when the input already uses a starred name
        let odd = Quiver::with_vertex_count(1, &[("a", 0, 0), ("a*", 0, 0)]).unwrap();
        let d = double_quiver(&odd);
        let names: HashSet<_> = d.arrows().iter().map(|a| a.name.clone()).collect();
        assert_eq!(names.len(), 4);
    }

    #[test]
    fn double_degrees_equal_graph_degree() {
        for g in [cycle3(), star_d4()] {
            let p = degree_profile(&double_quiver(&g));
            let base = degree_profile(&g);
            for (v, (i, o)) in p.degrees.iter().enumerate() {
                let deg = base.degrees[v].0 + base.degrees[v].1;
                assert_eq!((*i, *o), (deg, deg));
            }
        }
    }

    #[test]
    fn preprojective_examples() {
        let q = FieldSpec::Rational;
        let arrow = Quiver::with_vertex_count(2, &[("a", 0, 1)]).unwrap();
        let pres = preprojective_presentation(&arrow, q).unwrap();
        let shown: Vec<String> = pres.relations().iter().map(|r| r.display(pres.quiver())).collect();
        assert_eq!(shown, vec!["a*a", "-aa*"]);
        let loop1 = Quiver::with_vertex_count(1, &[("x", 0, 0)]).unwrap();
        let pres = preprojective_presentation(&loop1, q).unwrap();
        let shown: Vec<String> = pres.relations().iter().map(|r| r.display(pres.quiver())).collect();
        assert_eq!(shown, vec!["-xx* + x*x"]);
        let pres = preprojective_presentation(&cycle3(), q).unwrap();
        assert_eq!(pres.relations().len(), 3);
        for r in pres.relations() {
            assert_eq!(r.terms().len(), 2);
            let c = r.corner();
            assert_eq!(c.source, c.target);
        }
    }

    #[test]
    fn cy2_incidence_examples() {
        let sym = incidence_matrix(&double_quiver(&cycle3()));
        assert_eq!(check_cy2_incidence(&sym).unwrap(), Some(vec![0, 1, 2]));
        let b = IncidenceMatrix(vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(check_cy2_incidence(&b).unwrap(), None);
        let b = IncidenceMatrix(vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(check_cy2_incidence(&b).unwrap(), None);
        // a 3-cycle: B = P B^T with P the cyclic shift
        let b = incidence_matrix(&cycle3());
        let p = check_cy2_incidence(&b).unwrap().unwrap();
        assert!(verify_permutation(&b, &p));
    }

    #[test]
    fn cy2_incidence_backtracking_path() {
        // ten disjoint doubled edges: symmetric, beyond the exhaustive limit
        let arrows: Vec<(String, usize, usize)> =
            (0..5).map(|k| (format!("e{k}"), 2 * k, 2 * k + 1)).collect();
        let refs: Vec<(&str, usize, usize)> = arrows.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
        let g = Quiver::with_vertex_count(10, &refs).unwrap();
        let b = incidence_matrix(&double_quiver(&g));
        let p = check_cy2_incidence(&b).unwrap().unwrap();
        assert!(verify_permutation(&b, &p));
        let b = incidence_matrix(&Quiver::with_vertex_count(10, &refs).unwrap());
        assert_eq!(check_cy2_incidence(&b).unwrap(), None);
    }
}
