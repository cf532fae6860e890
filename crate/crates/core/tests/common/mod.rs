//! Fixtures and property checks shared by the integration targets.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use quiver_koszul::algebra::{
    build_algebra, double_dual_roundtrip, quadratic_dual, Element, GradedAlgebra, Path, QuadraticPresentation,
    Relation,
};
use quiver_koszul::analysis::{
    classify, koszul_syzygy_condition, ClassifyOptions, SyzygyConfig, VerdictStatus, Witness,
};
use quiver_koszul::catalog;
use quiver_koszul::linalg::{unit_vec, FieldSpec, Matrix, Scalar};
use quiver_koszul::modules::{simple_module, syzygy_data};
use quiver_koszul::oracle::{koszul_oracle, zero_divisor_search, Coverage, OracleConfig};
use quiver_koszul::quiver::Quiver;

pub const F2: FieldSpec = FieldSpec::Prime(2);
pub const F3: FieldSpec = FieldSpec::Prime(3);

/// Every catalog presentation over `field`.
pub fn corpus(field: FieldSpec) -> Vec<(&'static str, QuadraticPresentation)> {
    vec![
        ("k[x]", catalog::free_loop(field)),
        ("k[x]/(x^2)", catalog::dual_numbers(field)),
        ("k<x,y>", catalog::free_two_loops(field)),
        ("k[x,y]", catalog::commutative_plane(field)),
        ("k<x,y>/(xy)", catalog::xy_monomial(field)),
        ("exterior", catalog::exterior_plane(field)),
        ("preprojective A2~", catalog::preprojective_a2(field)),
        ("preprojective D4~", catalog::preprojective_d4(field)),
        ("two preprojective A2~", catalog::preprojective_two_a2(field)),
    ]
}

fn seeded(cases: u32, seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

pub fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rational), Just(F2), Just(F3), Just(FieldSpec::Prime(7))]
}

pub fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1usize..7, 1usize..7).prop_flat_map(|(field, r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..4, c), r).prop_map(move |rows| {
            let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            Matrix::from_i64(field, &rows)
        })
    })
}

/// rank + nullity = columns, and the kernel basis really is killed.
pub fn rank_nullity_holds(m: &Matrix) -> bool {
    let k = m.kernel_basis();
    m.rank() + k.cols() == m.cols() && m.mul(&k).map(|p| p.is_zero()).unwrap_or(false)
}

pub fn check_rank_nullity(cases: u32) -> Result<usize, String> {
    seeded(cases, 7)
        .run(&matrix_strategy(), |m| {
            prop_assert!(rank_nullity_holds(&m));
            Ok(())
        })
        .map(|_| cases as usize)
        .map_err(|e| e.to_string())
}

/// Random quadratic presentations: at most 3 vertices and 4 arrows over
/// `F_2` or `F_3`, each relation a random combination of length-2 paths.
pub fn presentation_strategy() -> impl Strategy<Value = QuadraticPresentation> {
    let field = prop_oneof![Just(F2), Just(F3)];
    (field, 1usize..=3)
        .prop_flat_map(|(field, r)| {
            let arrows = prop::collection::vec((0..r, 0..r), 1..=4);
            (Just(field), Just(r), arrows)
        })
        .prop_flat_map(|(field, r, arrows)| {
            let named: Vec<(String, usize, usize)> =
                arrows.iter().enumerate().map(|(k, &(s, t))| (format!("a{k}"), s, t)).collect();
            let refs: Vec<(&str, usize, usize)> = named.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
            let q = Quiver::with_vertex_count(r, &refs).expect("valid quiver");
            let paths: Vec<Vec<usize>> = (0..arrows.len())
                .flat_map(|a| (0..arrows.len()).map(move |b| vec![a, b]))
                .filter(|p| arrows[p[0]].0 == arrows[p[1]].1)
                .collect();
            let n = paths.len();
            let p = field.characteristic() as i64;
            let rels = prop::collection::vec(prop::collection::vec(0..p, n), 0..=3);
            (Just(field), Just(q), Just(paths), rels)
        })
        .prop_map(|(field, q, paths, rels)| {
            let relations = rels
                .into_iter()
                .map(|coeffs| {
                    let terms = paths
                        .iter()
                        .zip(coeffs)
                        .filter(|(_, c)| *c != 0)
                        .map(|(p, c)| (Path::new(&q, p.clone()).unwrap(), Scalar::from_i64(field, c)))
                        .collect();
                    Relation::from_terms(field, terms)
                })
                .collect();
            QuadraticPresentation::new(field, q, relations).expect("quadratic")
        })
}

pub fn double_dual_is_identity(p: &QuadraticPresentation) -> bool {
    double_dual_roundtrip(p).same_relation_space(p)
}

pub fn check_double_dual(cases: u32) -> Result<usize, String> {
    seeded(cases, 11)
        .run(&presentation_strategy(), |p| {
            prop_assert!(double_dual_is_identity(&p));
            Ok(())
        })
        .map(|_| cases as usize)
        .map_err(|e| e.to_string())
}

/// `(ab)c = a(bc)` on every triple of basis elements with total degree
/// at most the build bound. Returns the number of triples checked.
pub fn check_associativity(alg: &impl GradedAlgebra) -> Result<usize, String> {
    let field = alg.field();
    let top = alg.max_degree();
    let unit = |d: usize, i: usize| Element {
        degree: d,
        coeffs: unit_vec(field, alg.dim(d), i),
    };
    let mut count = 0;
    for da in 0..=top {
        for db in 0..=top - da {
            for dc in 0..=top - da - db {
                for a in 0..alg.dim(da) {
                    for b in 0..alg.dim(db) {
                        let ab = alg.multiply(&unit(da, a), &unit(db, b)).map_err(|e| e.to_string())?;
                        for c in 0..alg.dim(dc) {
                            let ec = unit(dc, c);
                            let bc = alg.multiply(&unit(db, b), &ec).map_err(|e| e.to_string())?;
                            let left = alg.multiply(&ab, &ec).map_err(|e| e.to_string())?;
                            let right = alg.multiply(&unit(da, a), &bc).map_err(|e| e.to_string())?;
                            if left != right {
                                return Err(format!("({da},{a})({db},{b})({dc},{c}) not associative"));
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

/// `dim Ω M + dim M = dim P` in every degree and vertex of the covers met
/// while resolving each simple `steps` times. Returns the number of covers.
pub fn check_cover_exactness(p: &QuadraticPresentation, bound: usize, steps: usize) -> Result<usize, String> {
    let alg = build_algebra(p, bound).map_err(|e| e.to_string())?;
    let mut covers = 0;
    for j in 0..alg.vertex_count() {
        let mut m = simple_module(&alg, j).map_err(|e| e.to_string())?;
        for _ in 0..steps {
            let d = match syzygy_data(&alg, &m) {
                Ok(d) => d,
                // the window ran out; nothing more to compare for this simple
                Err(_) => break,
            };
            let proj = &d.cover.projective.module;
            for n in proj.lo()..=proj.hi() {
                if !d.omega.is_known(n) || !m.is_known(n) {
                    continue;
                }
                for v in 0..proj.vertex_count() {
                    let (o, x, y) = (
                        d.omega.dim_at(n, v).unwrap_or(0),
                        m.dim_at(n, v).unwrap_or(0),
                        proj.dim_at(n, v).unwrap_or(0),
                    );
                    if o + x != y {
                        return Err(format!("vertex {v}, degree {n}: {o} + {x} != {y}"));
                    }
                }
            }
            covers += 1;
            if d.omega.is_zero_in_window() {
                break;
            }
            m = d.omega;
        }
    }
    Ok(covers)
}

/// The oracles and the classifier never contradict each other on the
/// prime-field corpus: zero divisors against piecewise-domain verdicts, and
/// raw resolutions against the module engine's Koszul checks.
pub fn check_oracle_agreement(field: FieldSpec) -> Result<usize, String> {
    let mut checked = 0;
    for (name, p) in corpus(field) {
        // agreement, not depth, is the point here: keep the map scans small
        let opts = ClassifyOptions {
            max_degree: 6,
            max_syzygy: 4,
            budget: 10_000,
            oracle: None,
        };
        let rep = classify(&p, &opts).map_err(|e| format!("{name}: {e}"))?;
        let alg = build_algebra(&p, 6).map_err(|e| e.to_string())?;
        let zd = zero_divisor_search(
            &alg,
            &OracleConfig {
                field,
                max_total_degree: 4,
                budget: 1_000_000,
            },
        )
        .map_err(|e| e.to_string())?;
        match (rep.piecewise_domain.status, &zd.witness) {
            (VerdictStatus::YesUpToBound, Some(_)) => return Err(format!("{name}: oracle found a zero divisor")),
            // a zero product of arrows sits in degrees (1, 1), inside any full search
            (VerdictStatus::NoWithWitness, None)
                if zd.coverage == Coverage::Full
                    && matches!(rep.piecewise_domain.witness, Some(Witness::ZeroProduct { .. })) =>
            {
                return Err(format!("{name}: classifier found a zero product, oracle did not"))
            }
            _ => {}
        }
        for side in [p.clone(), quadratic_dual(&p)] {
            let alg = build_algebra(&side, 6).map_err(|e| e.to_string())?;
            for j in 0..alg.vertex_count() {
                let raw = koszul_oracle(&alg, j, 3).map_err(|e| e.to_string())?;
                let engine = quiver_koszul::modules::is_koszul(&alg, &simple_module(&alg, j).unwrap(), 3)
                    .map_err(|e| e.to_string())?;
                use quiver_koszul::modules::KoszulStatus::*;
                let contradiction = match engine.status {
                    KoszulUpTo => !raw.linear(),
                    NotKoszul => raw.linear() && raw.exhausted_at.is_none(),
                    Undetermined => false,
                };
                if contradiction {
                    return Err(format!("{name}: oracle and engine disagree on simple {j}"));
                }
                checked += 1;
            }
        }
        checked += 1;
    }
    Ok(checked)
}

/// Runs the exhaustive syzygy-condition scan over `F_2` on the duals of the
/// corpus and returns `(maps compared, disagreements)`.
pub fn detector_tally() -> Result<(usize, usize), String> {
    let mut compared = 0;
    let mut disagreements = 0;
    for (name, p) in corpus(F2) {
        let dual = build_algebra(&quadratic_dual(&p), 6).map_err(|e| e.to_string())?;
        let v = koszul_syzygy_condition(
            &dual,
            &SyzygyConfig {
                max_syzygy: 4,
                budget: 1_000_000,
                exhaustive: true,
            },
        )
        .map_err(|e| format!("{name}: {e}"))?;
        compared += v.detectors.compared;
        disagreements += v.detectors.disagreements.len();
    }
    Ok((compared, disagreements))
}
