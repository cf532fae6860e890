//! Small named presentations used throughout the tests and by the CLI demos.

use crate::algebra::{Path, QuadraticPresentation, Relation};
use crate::linalg::{FieldSpec, Scalar};
use crate::quiver::{preprojective_presentation, Quiver};

/// Builds a presentation from integer-coefficient terms over arrow indices.
pub fn presentation(field: FieldSpec, q: Quiver, relations: &[&[(i64, &[usize])]]) -> QuadraticPresentation {
    let rels = relations
        .iter()
        .map(|terms| {
            Relation::from_terms(
                field,
                terms
                    .iter()
                    .map(|(c, p)| (Path::new(&q, p.to_vec()).expect("valid path"), Scalar::from_i64(field, *c)))
                    .collect(),
            )
        })
        .collect();
    QuadraticPresentation::new(field, q, rels).expect("valid presentation")
}

fn loops(names: &[&str]) -> Quiver {
    let arrows: Vec<(&str, usize, usize)> = names.iter().map(|&n| (n, 0, 0)).collect();
    Quiver::with_vertex_count(1, &arrows).expect("valid quiver")
}

/// `k[x]`: one loop, no relations.
pub fn free_loop(field: FieldSpec) -> QuadraticPresentation {
    presentation(field, loops(&["x"]), &[])
}

/// `k[x]/(x^2)`.
pub fn dual_numbers(field: FieldSpec) -> QuadraticPresentation {
    presentation(field, loops(&["x"]), &[&[(1, &[0, 0])]])
}

/// `k<x,y>` with no relations.
pub fn free_two_loops(field: FieldSpec) -> QuadraticPresentation {
    presentation(field, loops(&["x", "y"]), &[])
}

/// `k[x,y] = k<x,y>/(xy - yx)`.
pub fn commutative_plane(field: FieldSpec) -> QuadraticPresentation {
    presentation(field, loops(&["x", "y"]), &[&[(1, &[0, 1]), (-1, &[1, 0])]])
}

/// `k<x,y>/(xy)`.
pub fn xy_monomial(field: FieldSpec) -> QuadraticPresentation {
    presentation(field, loops(&["x", "y"]), &[&[(1, &[0, 1])]])
}

/// The exterior algebra on two generators, `k<x,y>/(x^2, y^2, xy + yx)`.
pub fn exterior_plane(field: FieldSpec) -> QuadraticPresentation {
    presentation(
        field,
        loops(&["x", "y"]),
        &[&[(1, &[0, 0])], &[(1, &[1, 1])], &[(1, &[0, 1]), (1, &[1, 0])]],
    )
}

/// The oriented 3-cycle `1 -> 2 -> 3 -> 1`.
pub fn cycle3() -> Quiver {
    Quiver::with_vertex_count(3, &[("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).expect("valid quiver")
}

/// The star with four leaves pointing at a centre (vertex 1).
pub fn star_d4() -> Quiver {
    Quiver::with_vertex_count(5, &[("a", 1, 0), ("b", 2, 0), ("c", 3, 0), ("d", 4, 0)]).expect("valid quiver")
}

/// Two disjoint 3-cycles.
pub fn two_cycles() -> Quiver {
    Quiver::with_vertex_count(
        6,
        &[("a", 0, 1), ("b", 1, 2), ("c", 2, 0), ("d", 3, 4), ("e", 4, 5), ("f", 5, 3)],
    )
    .expect("valid quiver")
}

/// Preprojective algebra of the 3-cycle (type Ã₂).
pub fn preprojective_a2(field: FieldSpec) -> QuadraticPresentation {
    preprojective_presentation(&cycle3(), field).expect("valid presentation")
}

/// Preprojective algebra of the four-leaf star (type D̃₄).
pub fn preprojective_d4(field: FieldSpec) -> QuadraticPresentation {
    preprojective_presentation(&star_d4(), field).expect("valid presentation")
}

/// Preprojective algebra of two disjoint 3-cycles.
pub fn preprojective_two_a2(field: FieldSpec) -> QuadraticPresentation {
    preprojective_presentation(&two_cycles(), field).expect("valid presentation")
}
