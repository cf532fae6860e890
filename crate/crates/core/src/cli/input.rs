//! The JSON input document. Coefficients travel as strings so that
//! rationals survive unchanged; paths list arrow names left to right as in
//! the product they denote (`["x", "y"]` is `x·y`, `y` applied first).

use serde::{Deserialize, Serialize};

use crate::algebra::{Path, QuadraticPresentation, Relation};
use crate::linalg::{FieldSpec, Scalar};
use crate::quiver::{Arrow, Quiver};

use super::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDoc {
    #[serde(alias = "rational", alias = "Q")]
    Q,
    Prime { p: u64 },
}

impl FieldDoc {
    pub fn to_spec(&self) -> Result<FieldSpec, CliError> {
        match self {
            FieldDoc::Q => Ok(FieldSpec::Rational),
            FieldDoc::Prime { p } => FieldSpec::prime(*p).map_err(|e| CliError::invalid("field.p", e)),
        }
    }

    pub fn of(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => FieldDoc::Q,
            FieldSpec::Prime(p) => FieldDoc::Prime { p: p as u64 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_syzygy: Option<usize>,
    /// `"q"` or `"pN"`, as on the command line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl OptionsDoc {
    fn is_empty(&self) -> bool {
        *self == OptionsDoc::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub field: FieldDoc,
    pub quiver: QuiverDoc,
    #[serde(default)]
    pub relations: Vec<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "OptionsDoc::is_empty")]
    pub options: OptionsDoc,
}

impl InputDocument {
    /// Parses JSON text; syntax errors carry their line and column.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn quiver(&self) -> Result<Quiver, CliError> {
        let q = &self.quiver;
        let vertex = |name: &str, at: String| {
            q.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| CliError::invalid(at, format!("unknown vertex {name:?}")))
        };
        let arrows = q
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                Ok(Arrow {
                    name: a.name.clone(),
                    source: vertex(&a.src, format!("quiver.arrows[{k}].src"))?,
                    target: vertex(&a.tgt, format!("quiver.arrows[{k}].tgt"))?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Quiver::new(q.vertices.clone(), arrows).map_err(|e| CliError::invalid("quiver", e))
    }

    pub fn presentation(&self) -> Result<QuadraticPresentation, CliError> {
        let field = self.field.to_spec()?;
        let q = self.quiver()?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for (i, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::with_capacity(rel.len());
            for (k, t) in rel.iter().enumerate() {
                let at = |f: &str| format!("relations[{i}][{k}].{f}");
                let c = Scalar::parse(field, &t.coeff).map_err(|e| CliError::invalid(at("coeff"), e))?;
                let arrows = t
                    .path
                    .iter()
                    .map(|n| {
                        q.arrow_index(n)
                            .ok_or_else(|| CliError::invalid(at("path"), format!("unknown arrow {n:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let p = Path::new(&q, arrows).map_err(|e| CliError::invalid(at("path"), e))?;
                terms.push((p, c));
            }
            relations.push(Relation::from_terms(field, terms));
        }
        QuadraticPresentation::new(field, q, relations).map_err(|e| CliError::invalid("relations", e))
    }

    /// The document describing a presentation, with no options.
    pub fn of(p: &QuadraticPresentation) -> Self {
        let q = p.quiver();
        let name = |v: usize| q.vertices()[v].clone();
        InputDocument {
            field: FieldDoc::of(p.field()),
            quiver: QuiverDoc {
                vertices: q.vertices().to_vec(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| ArrowDoc {
                        name: a.name.clone(),
                        src: name(a.source),
                        tgt: name(a.target),
                    })
                    .collect(),
            },
            relations: p
                .relations()
                .iter()
                .map(|r| {
                    r.terms()
                        .iter()
                        .map(|(path, c)| TermDoc {
                            coeff: c.to_string(),
                            path: path.arrows().iter().map(|&a| q.arrow(a).name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            options: OptionsDoc::default(),
        }
    }
}
