mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liecurrent::arith::{parse_scalar, Scalar};
use liecurrent::AlgebraType;

#[derive(Parser)]
#[command(name = "liecurrent", version)]
#[command(about = "Exact checks for Lie bialgebra structures on current algebras g[x]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Manin, CYBE, skew, cobracket and dual-basis checks for one case.
    Verify(VerifyArgs),
    /// Enumerate Belavin-Drinfeld triples at a vertex of the extended diagram.
    Bd(BdArgs),
    /// Trace extensions: automorphism normalization and A-case classification.
    #[command(subcommand)]
    Trace(TraceCmd),
    /// Write algebra or r-matrix data as JSON.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct CaseArgs {
    /// A1, A2, A3, A4, B1, B2 or C.
    #[arg(long)]
    pub case: String,
    #[arg(long, value_parser = scalar_arg)]
    pub m1: Option<Scalar>,
    #[arg(long, value_parser = scalar_arg)]
    pub m2: Option<Scalar>,
    #[arg(long, default_value = "sl2", value_parser = algebra_arg)]
    pub algebra: AlgebraType,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Degree window lo:hi for the Manin checks.
    #[arg(long, default_value = "-10:6", allow_hyphen_values = true, value_parser = window_arg)]
    pub window: (i64, i64),
    /// Largest x-power for the cobracket and dual-basis checks.
    #[arg(long, default_value_t = 4)]
    pub depth: u32,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args)]
pub struct BdArgs {
    #[arg(long, value_parser = algebra_arg)]
    pub algebra: AlgebraType,
    #[arg(long)]
    pub vertex: usize,
    /// JSON file with {basis, form} to check as F-data at this vertex.
    #[arg(long)]
    pub fdata: Option<PathBuf>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Subcommand)]
pub enum TraceCmd {
    /// Solve for the automorphism bringing A(n, alpha) to normal form.
    Normalize {
        #[arg(long)]
        n: u32,
        /// alpha_{n-2}, alpha_{n-3}, ... (missing entries are zero).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = scalar_arg)]
        alpha: Vec<Scalar>,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Normal form of a(x)^-1 = p0 + p1 x + p2 x^2 under x -> c x.
    Classify {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = scalar_arg)]
        poly: Vec<Scalar>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
pub enum ExportCmd {
    /// Basis, root data, structure constants and invariant forms.
    Algebra {
        #[arg(long, value_parser = algebra_arg)]
        algebra: AlgebraType,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The rational r-matrix of a case.
    Rmatrix {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn scalar_arg(s: &str) -> Result<Scalar, String> {
    parse_scalar(s.trim()).map_err(|e| e.to_string())
}

fn algebra_arg(s: &str) -> Result<AlgebraType, String> {
    s.parse().map_err(|e: liecurrent::Error| e.to_string())
}

fn window_arg(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<i64>().map_err(|e| e.to_string())?;
    if !(lo < 0 && 0 < hi) {
        return Err(format!("window {lo}:{hi} must satisfy lo < 0 < hi"));
    }
    Ok((lo, hi))
}

/// LIECURRENT_THREADS caps the rayon pool; 0 means serial.
fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("LIECURRENT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("LIECURRENT_THREADS={v} is not a number"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let res = match cli.command {
        Command::Verify(a) => run::verify(&a),
        Command::Bd(a) => run::bd(&a),
        Command::Trace(t) => run::trace(&t),
        Command::Export(x) => run::export(&x),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
