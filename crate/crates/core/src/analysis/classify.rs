use serde::Serialize;

use crate::algebra::{
    build_algebra, hilbert, quadratic_dual, GradedAlgebra, HilbertData, QuadraticPresentation, TruncatedGradedAlgebra,
};
use crate::modules::{is_koszul, simple_module, KoszulStatus, KoszulVerdict};
use crate::oracle::{zero_divisor_search, Coverage, OracleConfig, ZeroDivisorReport};
use crate::quiver::{
    check_cy2_incidence, connected_components, degree_profile, incidence_matrix, is_strongly_connected, missing_path,
};

use super::frobenius::{frobenius_check, FrobeniusVerdict};
use super::syzygy_condition::{
    koszul_syzygy_condition, frobenius_fastpath, ConditionStatus, SyzygyConditionVerdict, SyzygyConfig, SyzygyWitness,
};
use super::AnalysisError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Degree through which `A` and `A^!` are built.
    pub max_degree: usize,
    pub max_syzygy: usize,
    pub budget: u64,
    /// Cross-check against the zero-divisor oracle (over the oracle field).
    pub oracle: Option<OracleConfig>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_degree: 8,
            max_syzygy: 6,
            budget: 1_000_000,
            oracle: Some(OracleConfig::default()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    YesUpToBound,
    NoWithWitness,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Two arrows whose product is a relation.
    ZeroProduct {
        left: String,
        right: String,
        degrees: (usize, usize),
    },
    /// A map out of a normalized syzygy of a simple with non-Koszul kernel.
    NonKoszulKernel(SyzygyWitness),
    /// No path from `from` to `to`, so the corner `e_to A e_from` vanishes.
    MissingPath { from: String, to: String },
    /// Two distinct vertex idempotents multiply to zero.
    OrthogonalIdempotents { first: String, second: String },
    /// Some connected component is not a piecewise domain.
    Component { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub status: VerdictStatus,
    /// For a "yes": the bound it holds to, or "unconditional (fast path)".
    pub qualifier: Option<String>,
    pub witness: Option<Witness>,
    pub reason: Option<String>,
}

impl Verdict {
    fn yes(qualifier: String) -> Self {
        Verdict {
            status: VerdictStatus::YesUpToBound,
            qualifier: Some(qualifier),
            witness: None,
            reason: None,
        }
    }

    fn no(witness: Witness, reason: impl Into<String>) -> Self {
        Verdict {
            status: VerdictStatus::NoWithWitness,
            qualifier: None,
            witness: Some(witness),
            reason: Some(reason.into()),
        }
    }

    fn undetermined(reason: impl Into<String>) -> Self {
        Verdict {
            status: VerdictStatus::Undetermined,
            qualifier: None,
            witness: None,
            reason: Some(reason.into()),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.status == VerdictStatus::YesUpToBound
    }

    pub fn is_no(&self) -> bool {
        self.status == VerdictStatus::NoWithWitness
    }

    /// `YES (qualifier)`, `NO` or `UNDETERMINED`.
    pub fn label(&self) -> String {
        match self.status {
            VerdictStatus::YesUpToBound => match &self.qualifier {
                Some(q) => format!("YES ({q})"),
                None => "YES".into(),
            },
            VerdictStatus::NoWithWitness => "NO".into(),
            VerdictStatus::Undetermined => "UNDETERMINED".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ArrowEcho {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PresentationEcho {
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowEcho>,
    pub relations: Vec<String>,
}

impl PresentationEcho {
    pub fn of(p: &QuadraticPresentation) -> Self {
        let q = p.quiver();
        PresentationEcho {
            field: p.field().to_string(),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowEcho {
                    name: a.name.clone(),
                    source: q.vertices()[a.source].clone(),
                    target: q.vertices()[a.target].clone(),
                })
                .collect(),
            relations: p.relation_strings(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KoszulSummary {
    /// Koszul check of each simple over `A` itself, inside the window.
    pub algebra: Vec<KoszulVerdict>,
    /// The same over `A^!`.
    pub dual: Vec<KoszulVerdict>,
    /// `Σ_n (-1)^n H_A(m-n)^T H_{A^!}(n) = δ_{m,0} I` through the window.
    pub hilbert_identity: bool,
    /// No failure was observed on either side.
    pub consistent_with_koszul: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleCrossCheck {
    pub field: String,
    pub report: ZeroDivisorReport,
    /// The oracle never contradicts the piecewise-domain verdict.
    pub consistent: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub input: PresentationEcho,
    pub max_degree: usize,
    pub max_syzygy: usize,
    pub hilbert: HilbertData,
    pub koszul: KoszulSummary,
    pub dual_presentation: PresentationEcho,
    pub frobenius: FrobeniusVerdict,
    pub syzygy_condition: SyzygyConditionVerdict,
    pub strongly_connected: bool,
    pub piecewise_domain: Verdict,
    pub prime: Verdict,
    pub domain: Verdict,
    pub oracle_cross_check: Option<OracleCrossCheck>,
}

impl ClassificationReport {
    pub fn has_undetermined(&self) -> bool {
        [&self.piecewise_domain, &self.prime, &self.domain]
            .iter()
            .any(|v| v.status == VerdictStatus::Undetermined)
    }
}

/// `Σ_{n<=m} (-1)^n H_A(m-n)^T H_{A^!}(n)` equals `δ_{m,0} I` for every `m`
/// covered by both tables; necessary for Koszulness.
pub fn hilbert_identity_holds(a: &HilbertData, dual: &HilbertData) -> bool {
    let r = a.grids.first().map_or(0, |g| g.len());
    let top = a.grids.len().min(dual.grids.len());
    for m in 0..top {
        for k in 0..r {
            for i in 0..r {
                let mut acc: i128 = 0;
                for n in 0..=m {
                    let sign = if n % 2 == 0 { 1 } else { -1 };
                    for j in 0..r {
                        acc += sign * a.grids[m - n][j][k] as i128 * dual.grids[n][j][i] as i128;
                    }
                }
                let expected = i128::from(m == 0 && k == i);
                if acc != expected {
                    return false;
                }
            }
        }
    }
    true
}

/// The first pair of arrows `(a, b)` with `a·b = 0` in `A`.
pub fn zero_product_of_arrows(alg: &TruncatedGradedAlgebra) -> Result<Option<(usize, usize)>, AnalysisError> {
    if !alg.is_known(2) {
        return Ok(None);
    }
    let q = alg.quiver();
    for (ia, a) in q.arrows().iter().enumerate() {
        for (ib, b) in q.arrows().iter().enumerate() {
            if a.source != b.target {
                continue;
            }
            let (Some(x), Some(y)) = (alg.basis_index(&[ia]), alg.basis_index(&[ib])) else {
                continue;
            };
            if alg.multiply_basis(1, x, 1, y)?.iter().all(|c| c.is_zero()) {
                return Ok(Some((ia, ib)));
            }
        }
    }
    Ok(None)
}

fn koszul_side(alg: &TruncatedGradedAlgebra, up_to: usize) -> Result<Vec<KoszulVerdict>, AnalysisError> {
    (0..alg.vertex_count())
        .map(|j| Ok(is_koszul(alg, &simple_module(alg, j)?, up_to)?))
        .collect()
}

fn oracle_cross_check(
    pres: &QuadraticPresentation,
    cfg: &OracleConfig,
    piecewise: &Verdict,
    max_degree: usize,
) -> Result<Option<OracleCrossCheck>, AnalysisError> {
    let field = if pres.field().is_prime_field() { pres.field() } else { cfg.field };
    let reduced = match pres.change_field(field) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    let top = cfg.max_total_degree.min(max_degree).max(2);
    let alg = build_algebra(&reduced, top)?;
    let cfg = OracleConfig {
        field,
        max_total_degree: top,
        budget: cfg.budget,
    };
    let report = zero_divisor_search(&alg, &cfg)?;
    let same_field = field == pres.field();
    let contradiction = match (&report.witness, piecewise.status) {
        (Some(_), VerdictStatus::YesUpToBound) => true,
        // a degree-(1,1) zero product must show up in any complete search
        (None, VerdictStatus::NoWithWitness) => {
            report.coverage == Coverage::Full && matches!(piecewise.witness, Some(Witness::ZeroProduct { .. }))
        }
        _ => false,
    };
    let note = (!same_field).then(|| {
        format!(
            "oracle ran on the reduction mod {} of a presentation over {}; agreement is informative, not implied",
            field.characteristic(),
            pres.field()
        )
    });
    Ok(Some(OracleCrossCheck {
        field: field.to_string(),
        report,
        consistent: !(same_field && contradiction),
        note,
    }))
}

/// Decides whether `A = kQ/(I)` is a piecewise domain, prime, or a domain,
/// through the Koszul dual `A^!`: for Koszul `A`, `A` is a piecewise domain
/// exactly when `A^!` satisfies the Koszul syzygy condition, and it is then
/// prime exactly when `Q` is strongly connected.
pub fn classify(pres: &QuadraticPresentation, opts: &ClassifyOptions) -> Result<ClassificationReport, AnalysisError> {
    let n = opts.max_degree.max(2);
    let max_i = opts.max_syzygy;
    let a = build_algebra(pres, n)?;
    let dual_pres = quadratic_dual(pres);
    let dual = build_algebra(&dual_pres, n)?;
    let q = pres.quiver();
    let r = q.vertex_count();

    let koszul_a = koszul_side(&a, max_i)?;
    let koszul_dual = koszul_side(&dual, max_i)?;
    let hilbert_a = hilbert(&a);
    let hilbert_identity = hilbert_identity_holds(&hilbert_a, &hilbert(&dual));
    let not_koszul = koszul_a
        .iter()
        .chain(&koszul_dual)
        .any(|v| v.status == KoszulStatus::NotKoszul);
    let koszul = KoszulSummary {
        algebra: koszul_a,
        dual: koszul_dual,
        hilbert_identity,
        consistent_with_koszul: !not_koszul && hilbert_identity,
    };

    let frobenius = frobenius_check(&dual)?;
    let syzygy_condition = match frobenius_fastpath(&dual, max_i)? {
        Some(v) => v,
        None => koszul_syzygy_condition(
            &dual,
            &SyzygyConfig {
                max_syzygy: max_i,
                budget: opts.budget,
                exhaustive: false,
            },
        )?,
    };

    let name = |v: usize| q.vertices()[v].clone();
    let zero_product = zero_product_of_arrows(&a)?;
    let piecewise_domain = if let Some((x, y)) = zero_product {
        Verdict::no(
            Witness::ZeroProduct {
                left: q.arrow(x).name.clone(),
                right: q.arrow(y).name.clone(),
                degrees: (1, 1),
            },
            "a product of two arrows is zero",
        )
    } else if !koszul.consistent_with_koszul {
        Verdict::undetermined("A is not Koszul, so the syzygy criterion does not apply")
    } else {
        match syzygy_condition.status {
            ConditionStatus::HoldsUpToBound => Verdict::yes(syzygy_condition.qualifier()),
            ConditionStatus::Fails => Verdict::no(
                Witness::NonKoszulKernel(syzygy_condition.witness.clone().expect("failure has a witness")),
                "the dual fails the Koszul syzygy condition",
            ),
            ConditionStatus::Undetermined => {
                Verdict::undetermined("the syzygy condition could not be decided inside the window")
            }
        }
    };

    let strongly_connected = is_strongly_connected(q);
    let prime = if let Some((from, to)) = missing_path(q) {
        Verdict::no(
            Witness::MissingPath {
                from: name(from),
                to: name(to),
            },
            "some off-diagonal corner vanishes",
        )
    } else if piecewise_domain.is_yes() {
        Verdict::yes(piecewise_domain.qualifier.clone().unwrap_or_default())
    } else {
        Verdict::undetermined("primeness is only decided here for piecewise domains")
    };
    let domain = if r > 1 {
        Verdict::no(
            Witness::OrthogonalIdempotents {
                first: name(0),
                second: name(1),
            },
            "distinct vertex idempotents are orthogonal",
        )
    } else {
        piecewise_domain.clone()
    };

    let oracle_cross_check = match &opts.oracle {
        Some(cfg) => oracle_cross_check(pres, cfg, &piecewise_domain, n)?,
        None => None,
    };

    Ok(ClassificationReport {
        input: PresentationEcho::of(pres),
        max_degree: n,
        max_syzygy: max_i,
        hilbert: hilbert_a,
        koszul,
        dual_presentation: PresentationEcho::of(&dual_pres),
        frobenius,
        syzygy_condition,
        strongly_connected,
        piecewise_domain,
        prime,
        domain,
        oracle_cross_check,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IncidenceScreen {
    /// `B = P B^T` for some permutation matrix `P`.
    pub passed: Option<bool>,
    pub permutation: Option<Vec<usize>>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentReport {
    pub vertices: Vec<String>,
    pub piecewise_domain: Verdict,
    pub prime: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Cy2Report {
    pub classification: ClassificationReport,
    /// Every vertex has at least two outgoing arrows.
    pub outdegree_at_least_two: bool,
    /// Whether the structural guarantee for this class applies or the
    /// report falls back to the general classifier.
    pub guarantee: String,
    pub incidence_screen: IncidenceScreen,
    pub components: Vec<ComponentReport>,
    pub semiprime_piecewise_domain: Verdict,
    pub prime: Verdict,
    pub prime_components: usize,
}

impl Cy2Report {
    pub fn has_undetermined(&self) -> bool {
        self.classification.has_undetermined()
            || [&self.semiprime_piecewise_domain, &self.prime]
                .iter()
                .any(|v| v.status == VerdictStatus::Undetermined)
    }
}

/// The classifier specialised to inputs screened as twisted Calabi-Yau of
/// dimension 2: with every outdegree at least 2 such an algebra is a
/// product of prime piecewise domains, one per connected component.
pub fn cy2_classify(pres: &QuadraticPresentation, opts: &ClassifyOptions) -> Result<Cy2Report, AnalysisError> {
    let q = pres.quiver();
    let classification = classify(pres, opts)?;
    let outdegree_at_least_two = degree_profile(q).min_outdegree_at_least_two;
    let incidence_screen = match check_cy2_incidence(&incidence_matrix(q)) {
        Ok(p) => IncidenceScreen {
            passed: Some(p.is_some()),
            permutation: p,
            error: None,
        },
        Err(e) => IncidenceScreen {
            passed: None,
            permutation: None,
            error: Some(e.to_string()),
        },
    };
    let guarantee = if outdegree_at_least_two {
        "outdegree condition met: product of prime piecewise domains expected".to_string()
    } else {
        "outdegree below 2 somewhere: no structural guarantee, general classifier used".to_string()
    };

    let comps = connected_components(q);
    let mut components = Vec::with_capacity(comps.len());
    if comps.len() == 1 {
        components.push(ComponentReport {
            vertices: q.vertices().to_vec(),
            piecewise_domain: classification.piecewise_domain.clone(),
            prime: classification.prime.clone(),
        });
    } else {
        // components are independent; the oracle already ran on the whole algebra
        let sub_opts = ClassifyOptions {
            oracle: None,
            ..opts.clone()
        };
        for c in &comps {
            let sub = classify(&pres.restrict(c)?, &sub_opts)?;
            components.push(ComponentReport {
                vertices: sub.input.vertices.clone(),
                piecewise_domain: sub.piecewise_domain,
                prime: sub.prime,
            });
        }
    }
    let prime_components = components.iter().filter(|c| c.prime.is_yes()).count();
    let semiprime_piecewise_domain = if let Some(k) = components.iter().position(|c| c.piecewise_domain.is_no()) {
        Verdict::no(Witness::Component { index: k }, "a component is not a piecewise domain")
    } else if prime_components == components.len() {
        let qualifier = components
            .iter()
            .filter_map(|c| c.prime.qualifier.clone())
            .min_by_key(|q| q.starts_with("unconditional"))
            .unwrap_or_default();
        Verdict::yes(qualifier)
    } else {
        Verdict::undetermined("some component is not confirmed to be a prime piecewise domain")
    };
    let prime = if components.len() > 1 {
        classification.prime.clone()
    } else {
        components[0].prime.clone()
    };
    Ok(Cy2Report {
        classification,
        outdegree_at_least_two,
        guarantee,
        incidence_screen,
        components,
        semiprime_piecewise_domain,
        prime,
        prime_components,
    })
}
