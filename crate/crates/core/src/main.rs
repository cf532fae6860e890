use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use quiver_koszul::cli::{run_path, Command, Format, Overrides, EXIT_ERROR};
use quiver_koszul::linalg::FieldSpec;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Quadratic dual presentation.
    Dual,
    /// Piecewise-domain, prime and domain verdicts with certificates.
    Classify,
    /// The classifier for twisted Calabi-Yau-2 inputs, split by component.
    Cy2,
    /// Preprojective presentation of the input quiver.
    Preprojective,
    /// Per-vertex Hilbert series and corner dimension grids.
    Hilbert,
    /// Corner grids of A next to those of the Ext algebra of its dual.
    Ext,
    /// Koszulness of each simple module.
    Koszul,
    /// The Koszul syzygy condition on the dual of the input.
    SyzygyCondition,
    /// Brute-force zero-divisor search over a prime field.
    Oracle,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Dual => Command::Dual,
            Cmd::Classify => Command::Classify,
            Cmd::Cy2 => Command::Cy2,
            Cmd::Preprojective => Command::Preprojective,
            Cmd::Hilbert => Command::Hilbert,
            Cmd::Ext => Command::Ext,
            Cmd::Koszul => Command::Koszul,
            Cmd::SyzygyCondition => Command::SyzygyCondition,
            Cmd::Oracle => Command::Oracle,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

/// Domain, piecewise-domain and primeness tests for quadratic quiver algebras.
///
/// Exit status: 0 when every verdict is definitive, 2 when some verdict is
/// undetermined, 1 on error. `oracle` exits 0 (no zero divisor, full
/// coverage), 3 (witness found) or 2 (partial coverage).
#[derive(Debug, Parser)]
#[command(name = "quiver-koszul", version)]
struct Args {
    command: Cmd,
    /// JSON input document; `-` reads standard input.
    #[arg(long, default_value = "-")]
    input: String,
    /// Degree through which algebras are built.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Number of syzygy steps to check.
    #[arg(long)]
    max_syzygy: Option<usize>,
    /// Field to work over: `q` or `pN`.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,
    #[arg(long, value_enum, default_value = "text")]
    format: Fmt,
    /// Budget for map enumeration and zero-divisor search.
    #[arg(long)]
    budget: Option<u64>,
    /// Enumerate all maps up to scalars (prime fields only).
    #[arg(long)]
    exhaustive: bool,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    FieldSpec::parse_flag(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    let format = match args.format {
        Fmt::Text => Format::Text,
        Fmt::Json => Format::Json,
    };
    let overrides = Overrides {
        max_degree: args.max_degree,
        max_syzygy: args.max_syzygy,
        field: args.field,
        budget: args.budget,
        exhaustive: args.exhaustive,
    };
    match run_path(args.command.into(), &args.input, format, &overrides) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.output.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
