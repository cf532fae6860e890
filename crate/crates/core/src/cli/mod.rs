//! The command-line surface: input parsing, option resolution, running one
//! command, and rendering its report as JSON or text. Everything here is
//! pure (text in, text and exit code out) so the binary and the C ABI share
//! it verbatim.

mod input;
mod render;

pub use input::{ArrowDoc, FieldDoc, InputDocument, OptionsDoc, QuiverDoc, TermDoc};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{build_algebra, hilbert, quadratic_dual, GradedAlgebra, HilbertData, QuadraticPresentation};
use crate::analysis::{
    classify, cy2_classify, ext_algebra, koszul_syzygy_condition, frobenius_fastpath, AnalysisError, ClassifyOptions,
    ConditionStatus, SyzygyConfig,
};
use crate::linalg::FieldSpec;
use crate::modules::{is_koszul, simple_module, KoszulStatus, KoszulVerdict};
use crate::oracle::{primeness_oracle, zero_divisor_search, OracleConfig, PrimenessReport, ZeroDivisorReport};
use crate::quiver::preprojective_presentation;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;

pub const DEFAULT_MAX_DEGREE: usize = 8;
pub const DEFAULT_MAX_SYZYGY: usize = 6;
pub const DEFAULT_BUDGET: u64 = 1_000_000;
/// `ext` tabulates products in every degree pair, so it starts smaller.
pub const DEFAULT_EXT_DEGREE: usize = 5;
pub const ORACLE_MAX_TOTAL_DEGREE: usize = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid input at {at}: {message}")]
    Invalid { at: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

impl CliError {
    pub(crate) fn invalid(at: impl Into<String>, message: impl fmt::Display) -> Self {
        CliError::Invalid {
            at: at.into(),
            message: message.to_string(),
        }
    }
}

macro_rules! analysis_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Analysis(e.into())
            }
        }
    )*};
}
analysis_from!(
    crate::modules::ModuleError,
    crate::algebra::AlgebraError,
    crate::oracle::OracleError
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Dual,
    Classify,
    Cy2,
    Preprojective,
    Hilbert,
    Ext,
    Koszul,
    SyzygyCondition,
    Oracle,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Dual,
        Command::Classify,
        Command::Cy2,
        Command::Preprojective,
        Command::Hilbert,
        Command::Ext,
        Command::Koszul,
        Command::SyzygyCondition,
        Command::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Dual => "dual",
            Command::Classify => "classify",
            Command::Cy2 => "cy2",
            Command::Preprojective => "preprojective",
            Command::Hilbert => "hilbert",
            Command::Ext => "ext",
            Command::Koszul => "koszul",
            Command::SyzygyCondition => "syzygy-condition",
            Command::Oracle => "oracle",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown command {s:?}")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Usage(format!("unknown format {s:?}"))),
        }
    }
}

/// Command-line overrides; `None` defers to the input's options, then to
/// the defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub max_degree: Option<usize>,
    pub max_syzygy: Option<usize>,
    pub field: Option<FieldSpec>,
    pub budget: Option<u64>,
    /// Try every projective class of maps, not only `{0, 1}` combinations.
    pub exhaustive: bool,
}

/// The options a command actually ran with; echoed in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Settings {
    pub field: String,
    pub max_degree: usize,
    pub max_syzygy: usize,
    pub oracle_field: String,
    pub budget: u64,
    pub exhaustive: bool,
}

struct Resolved {
    pres: QuadraticPresentation,
    max_degree: usize,
    max_syzygy: usize,
    oracle_field: FieldSpec,
    budget: u64,
    exhaustive: bool,
}

impl Resolved {
    fn settings(&self) -> Settings {
        Settings {
            field: self.pres.field().to_string(),
            max_degree: self.max_degree,
            max_syzygy: self.max_syzygy,
            oracle_field: self.oracle_field.to_string(),
            budget: self.budget,
            exhaustive: self.exhaustive,
        }
    }

    fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            max_degree: self.max_degree,
            max_syzygy: self.max_syzygy,
            budget: self.budget,
            oracle: Some(self.oracle_config()),
        }
    }

    fn oracle_config(&self) -> OracleConfig {
        OracleConfig {
            field: self.oracle_field,
            max_total_degree: ORACLE_MAX_TOTAL_DEGREE,
            budget: self.budget,
        }
    }
}

fn resolve(doc: &InputDocument, cmd: Command, ov: &Overrides) -> Result<Resolved, CliError> {
    let mut pres = if cmd == Command::Preprojective {
        let field = doc.field.to_spec()?;
        preprojective_presentation(&doc.quiver()?, field).map_err(|e| CliError::invalid("quiver", e))?
    } else {
        doc.presentation()?
    };
    if let Some(f) = ov.field {
        if f != pres.field() {
            pres = pres.change_field(f).map_err(|e| CliError::invalid("--field", e))?;
        }
    }
    let oracle_field = match (&doc.options.oracle_field, pres.field()) {
        (_, f @ FieldSpec::Prime(_)) => f,
        (Some(s), _) => FieldSpec::parse_flag(s).map_err(|e| CliError::invalid("options.oracleField", e))?,
        (None, _) => FieldSpec::Prime(2),
    };
    let default_degree = if cmd == Command::Ext { DEFAULT_EXT_DEGREE } else { DEFAULT_MAX_DEGREE };
    Ok(Resolved {
        pres,
        max_degree: ov.max_degree.or(doc.options.max_degree).unwrap_or(default_degree),
        max_syzygy: ov.max_syzygy.or(doc.options.max_syzygy).unwrap_or(DEFAULT_MAX_SYZYGY),
        oracle_field,
        budget: ov.budget.or(doc.options.budget).unwrap_or(DEFAULT_BUDGET),
        exhaustive: ov.exhaustive,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDocument<T: Serialize> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    /// SHA-256 of the raw input bytes.
    pub input_sha256: String,
    pub settings: Settings,
    pub report: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HilbertReport {
    pub vertices: Vec<String>,
    /// `series[j][n] = dim e_j A_n`.
    pub series: Vec<Vec<u64>>,
    pub grids: HilbertData,
    /// `Some(L)` when the algebra vanishes from degree `L` on.
    pub graded_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtReport {
    pub through: usize,
    /// Corner dimensions of `A`.
    pub algebra: HilbertData,
    /// Corner dimensions of the Ext algebra of the dual.
    pub ext: HilbertData,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KoszulReport {
    pub vertices: Vec<String>,
    pub simples: Vec<KoszulVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleReport {
    pub zero_divisors: ZeroDivisorReport,
    pub primeness: PrimenessReport,
    pub note: Option<String>,
}

/// Result of one command: what to print and how to exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn emit<T: Serialize>(
    cmd: Command,
    input: &str,
    r: &Resolved,
    format: Format,
    report: T,
    text: impl FnOnce(&T) -> String,
    exit_code: i32,
) -> Outcome {
    let output = match format {
        Format::Text => text(&report),
        Format::Json => {
            let doc = ReportDocument {
                schema_version: SCHEMA_VERSION,
                tool: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                command: cmd.name(),
                input_sha256: sha256_hex(input.as_bytes()),
                settings: r.settings(),
                report,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    Outcome { output, exit_code }
}

/// Runs `cmd` on the JSON document `input`.
pub fn run(cmd: Command, input: &str, format: Format, ov: &Overrides) -> Result<Outcome, CliError> {
    let doc = InputDocument::parse(input)?;
    let r = resolve(&doc, cmd, ov)?;
    let undetermined = |b: bool| if b { EXIT_UNDETERMINED } else { EXIT_OK };
    Ok(match cmd {
        Command::Dual => {
            let dual = InputDocument::of(&quadratic_dual(&r.pres));
            emit(cmd, input, &r, format, dual, render::presentation, EXIT_OK)
        }
        Command::Preprojective => {
            let doc = InputDocument::of(&r.pres);
            emit(cmd, input, &r, format, doc, render::presentation, EXIT_OK)
        }
        Command::Classify => {
            let rep = classify(&r.pres, &r.classify_options())?;
            let code = undetermined(rep.has_undetermined());
            emit(cmd, input, &r, format, rep, render::classification, code)
        }
        Command::Cy2 => {
            let rep = cy2_classify(&r.pres, &r.classify_options())?;
            let code = undetermined(rep.has_undetermined());
            emit(cmd, input, &r, format, rep, render::cy2, code)
        }
        Command::Hilbert => {
            let a = build_algebra(&r.pres, r.max_degree)?;
            let grids = hilbert(&a);
            let rep = HilbertReport {
                vertices: r.pres.quiver().vertices().to_vec(),
                series: (0..a.vertex_count()).map(|j| grids.vertex_series(j)).collect(),
                graded_length: crate::algebra::graded_length(&a),
                grids,
            };
            emit(cmd, input, &r, format, rep, render::hilbert, EXIT_OK)
        }
        Command::Ext => {
            let n = r.max_degree;
            let a = build_algebra(&r.pres, n)?;
            let dual = build_algebra(&quadratic_dual(&r.pres), n + 2)?;
            let ext = hilbert(&ext_algebra(&dual, n)?);
            let algebra = hilbert(&a).truncated(n);
            let rep = ExtReport {
                through: n,
                equal: algebra == ext,
                algebra,
                ext,
            };
            emit(cmd, input, &r, format, rep, render::ext, EXIT_OK)
        }
        Command::Koszul => {
            let a = build_algebra(&r.pres, r.max_degree)?;
            let simples = (0..a.vertex_count())
                .map(|j| Ok(is_koszul(&a, &simple_module(&a, j)?, r.max_syzygy)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            let code = undetermined(simples.iter().any(|v| v.status == KoszulStatus::Undetermined));
            let rep = KoszulReport {
                vertices: r.pres.quiver().vertices().to_vec(),
                simples,
            };
            emit(cmd, input, &r, format, rep, render::koszul, code)
        }
        Command::SyzygyCondition => {
            let dual = build_algebra(&quadratic_dual(&r.pres), r.max_degree)?;
            let fast = if r.exhaustive { None } else { frobenius_fastpath(&dual, r.max_syzygy)? };
            let rep = match fast {
                Some(v) => v,
                None => koszul_syzygy_condition(
                    &dual,
                    &SyzygyConfig {
                        max_syzygy: r.max_syzygy,
                        budget: r.budget,
                        exhaustive: r.exhaustive,
                    },
                )?,
            };
            let code = undetermined(rep.status == ConditionStatus::Undetermined);
            emit(cmd, input, &r, format, rep, render::syzygy_condition, code)
        }
        Command::Oracle => {
            let field = r.oracle_field;
            let reduced = r.pres.change_field(field).map_err(|e| CliError::invalid("oracleField", e))?;
            let top = ORACLE_MAX_TOTAL_DEGREE.max(2);
            let a = build_algebra(&reduced, r.max_degree.max(top))?;
            let zero_divisors = zero_divisor_search(
                &a,
                &OracleConfig {
                    field,
                    max_total_degree: top,
                    budget: r.budget,
                },
            )?;
            let note = (field != r.pres.field())
                .then(|| format!("searched the reduction mod {} of the input", field.characteristic()));
            let rep = OracleReport {
                primeness: primeness_oracle(&a, r.max_degree),
                zero_divisors,
                note,
            };
            let code = rep.zero_divisors.exit_code();
            emit(cmd, input, &r, format, rep, render::oracle, code)
        }
    })
}

/// Reads `path` (`-` for standard input) and runs `cmd` on it.
pub fn run_path(cmd: Command, path: &str, format: Format, ov: &Overrides) -> Result<Outcome, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    };
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io)?
    } else {
        std::fs::read_to_string(path).map_err(io)?
    };
    run(cmd, &text, format, ov)
}
