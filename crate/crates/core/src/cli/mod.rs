//! The `magicbch` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failed its tolerance, 2 input
//! error, 3 math-domain error, 4 internal-consistency error.

pub mod document;
pub mod sweep;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{coeffs_from_so4, so4_from_coeffs, vec_from_hermitian, Complex64, Mat4r};
use crate::error::{Channel, Error};
use crate::magic::{merge, split, SplitPair};
use crate::oracle::{bch_reference, mat_exp_taylor, mat_log_near_identity, OracleConfig};
use crate::so4::{bch_so4, bch_so4_entries_with_coefficients, so4_exp, so4_log};
use crate::su2::{
    bch_su2_with_coefficients, su2_algebra_matrix, su2_exp, su2_log, BchCoefficients, BranchMode,
};

pub use document::{MatrixDocument, SplitDocument};
pub use sweep::{SweepConfig, SweepReport};

/// Environment variable overriding the default comparison tolerance.
pub const TOL_ENV: &str = "MAGICBCH_TOL";
pub const DEFAULT_TOL: f64 = 1e-10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Math(#[from] Error),
}

impl CliError {
    pub(crate) fn from_json(e: serde_json::Error) -> Self {
        CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. }
            | CliError::Schema(_)
            | CliError::Usage(_)
            | CliError::Io { .. } => EXIT_INPUT,
            CliError::Math(e) => match e {
                Error::InvalidArgument(_) | Error::Shape(_) => EXIT_INPUT,
                Error::Domain(_) | Error::AntipodalSingularity { .. } | Error::Convergence(_) => {
                    EXIT_MATH
                }
                Error::InternalConsistency(_) => EXIT_INTERNAL,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Paper,
    Corrected,
}

impl From<ModeArg> for BranchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => BranchMode::PaperFaithful,
            ModeArg::Corrected => BranchMode::BranchCorrected,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "magicbch", version, about = "Closed-form BCH composition on SU(2) and SO(4)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponentiate an su2_vec or so(4) document.
    Exp {
        /// Input document (`-` for stdin).
        input: PathBuf,
        /// Use the Taylor-series oracle instead of the closed form.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Logarithm of an su2_matrix or orthogonal so4_matrix document.
    Log {
        input: PathBuf,
        /// Use the square-root / Mercator oracle instead of the closed form.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compose two generators: C with exp(A) exp(B) = exp(C).
    Bch {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
        mode: ModeArg,
        /// Evaluate SO(4) through the six expanded entry formulas.
        #[arg(long, conflicts_with = "oracle")]
        entries_path: bool,
        /// Use log(exp(A) exp(B)) instead of the closed form.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Split an so(4) generator into self-dual and anti-self-dual parts.
    Split {
        input: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Inverse of `split`: one split document, or two su2_vec documents.
    Merge {
        input: PathBuf,
        anti_self_dual: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Randomized check of the SO(4) group law.
    Verify {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Time the closed form against the series oracle.
    Bench {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Entries are drawn uniformly from [-bound, bound].
    #[arg(long, default_value_t = 0.3)]
    pub bound: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
    pub mode: ModeArg,
    /// Pass threshold on the maximum error (default: $MAGICBCH_TOL or 1e-10).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Spread trials over threads; the report is unchanged.
    #[arg(long)]
    pub parallel: bool,
}

impl SweepArgs {
    fn config(&self) -> Result<SweepConfig, CliError> {
        Ok(SweepConfig {
            trials: self.trials,
            seed: self.seed,
            bound: self.bound,
            mode: self.mode.into(),
            tolerance: match self.tol {
                Some(t) => t,
                None => default_tolerance()?,
            },
            parallel: self.parallel,
        })
    }
}

/// `$MAGICBCH_TOL` if set, else [`DEFAULT_TOL`].
pub fn default_tolerance() -> Result<f64, CliError> {
    match std::env::var(TOL_ENV) {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .ok_or_else(|| CliError::Usage(format!("{TOL_ENV}={s:?} is not a positive number"))),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err =
        |e: io::Error| CliError::Io { path: path.display().to_string(), message: e.to_string() };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn read_document(path: &Path) -> Result<MatrixDocument, CliError> {
    MatrixDocument::parse(&read_input(path)?)
}

fn write_output(value: &Value, out: &OutputArgs) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Math(Error::InternalConsistency(e.to_string())))?;
    text.push('\n');
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() }),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io { path: "<stdout>".into(), message: e.to_string() }),
    }
}

fn emit(doc: MatrixDocument) -> Result<Value, CliError> {
    if !doc.is_finite() {
        return Err(Error::InternalConsistency("result has non-finite entries".into()).into());
    }
    Ok(doc.to_value())
}

/// so(4) generator from either so(4) document kind.
fn so4_generator(doc: &MatrixDocument) -> Option<Mat4r> {
    match doc {
        MatrixDocument::So4Coeffs(c) => Some(so4_from_coeffs(*c)),
        MatrixDocument::So4Matrix(m) => Some(*m),
        _ => None,
    }
}

fn coefficients_value(k: &BchCoefficients, mode: BranchMode) -> Value {
    json!({
        "alpha": k.alpha,
        "beta": k.beta,
        "gamma": k.gamma,
        "rho": k.rho,
        "theta": k.theta,
        "within_branch": k.theta <= mode.theta_limit(),
    })
}

pub fn cmd_exp(doc: &MatrixDocument, oracle: bool) -> Result<MatrixDocument, CliError> {
    let cfg = OracleConfig::default();
    match doc {
        MatrixDocument::Su2Vec(v) => {
            let u =
                if oracle { mat_exp_taylor(&su2_algebra_matrix(*v), &cfg)? } else { su2_exp(*v) };
            Ok(MatrixDocument::Su2Matrix(u))
        }
        _ => {
            let a = so4_generator(doc).ok_or_else(|| {
                CliError::Schema(format!(
                    "exp expects su2_vec, so4_coeffs or an antisymmetric so4_matrix, got {}",
                    describe(doc)
                ))
            })?;
            let o = if oracle { mat_exp_taylor(&a, &cfg)? } else { so4_exp(&a)? };
            Ok(MatrixDocument::So4Orthogonal(o))
        }
    }
}

pub fn cmd_log(doc: &MatrixDocument, oracle: bool) -> Result<MatrixDocument, CliError> {
    let cfg = OracleConfig::default();
    match doc {
        MatrixDocument::Su2Matrix(u) => {
            let v = if oracle {
                let l = mat_log_near_identity(u, &cfg)?;
                vec_from_hermitian(&l.scale(Complex64::new(0.0, -1.0)))
            } else {
                su2_log(u)?
            };
            Ok(MatrixDocument::Su2Vec(v))
        }
        MatrixDocument::So4Orthogonal(o) => {
            let a = if oracle {
                let l = mat_log_near_identity(o, &cfg)?;
                so4_from_coeffs(coeffs_from_so4(&l)?)
            } else {
                so4_log(o)?
            };
            Ok(MatrixDocument::So4Matrix(a))
        }
        other => Err(CliError::Schema(format!(
            "log expects su2_matrix or an so4_matrix marked orthogonal, got {}",
            describe(other)
        ))),
    }
}

fn describe(doc: &MatrixDocument) -> &'static str {
    match doc {
        MatrixDocument::So4Orthogonal(_) => "orthogonal so4_matrix",
        other => other.kind(),
    }
}

/// Runs `bch` and returns the full output object (result plus
/// diagnostics).
pub fn cmd_bch(
    a: &MatrixDocument,
    b: &MatrixDocument,
    mode: BranchMode,
    entries_path: bool,
    oracle: bool,
) -> Result<Value, CliError> {
    let cfg = OracleConfig::default();
    let mut out = Map::new();
    match (a, b) {
        (MatrixDocument::Su2Vec(x), MatrixDocument::Su2Vec(y)) => {
            if entries_path {
                return Err(CliError::Usage("--entries-path applies to SO(4) inputs only".into()));
            }
            if oracle {
                let l = bch_reference(&su2_algebra_matrix(*x), &su2_algebra_matrix(*y), &cfg)?;
                let z = vec_from_hermitian(&l.scale(Complex64::new(0.0, -1.0)));
                out.insert("result".into(), emit(MatrixDocument::Su2Vec(z))?);
            } else {
                let (z, k) = bch_su2_with_coefficients(*x, *y, mode)?;
                out.insert("result".into(), emit(MatrixDocument::Su2Vec(z))?);
                out.insert("mode".into(), json!(mode.as_str()));
                out.insert("coefficients".into(), json!({ "su2": coefficients_value(&k, mode) }));
            }
        }
        _ => {
            let (ma, mb) = match (so4_generator(a), so4_generator(b)) {
                (Some(ma), Some(mb)) => (ma, mb),
                _ => {
                    return Err(CliError::Schema(format!(
                        "bch expects two su2_vec or two so(4) generators, got {} and {}",
                        describe(a),
                        describe(b)
                    )))
                }
            };
            let wrap = |m: Mat4r| -> Result<MatrixDocument, CliError> {
                Ok(match a {
                    MatrixDocument::So4Coeffs(_) => MatrixDocument::So4Coeffs(coeffs_from_so4(&m)?),
                    _ => MatrixDocument::So4Matrix(m),
                })
            };
            if oracle {
                let c = bch_reference(&ma, &mb, &cfg)?;
                let c = so4_from_coeffs(coeffs_from_so4(&c)?);
                out.insert("result".into(), emit(wrap(c)?)?);
            } else {
                let (c, k1, k2) = if entries_path {
                    let (c, k1, k2) = bch_so4_entries_with_coefficients(
                        coeffs_from_so4(&ma)?,
                        coeffs_from_so4(&mb)?,
                        mode,
                    )?;
                    (so4_from_coeffs(c), k1, k2)
                } else {
                    let r = bch_so4(&ma, &mb, mode)?;
                    (r.result, r.coeffs1, r.coeffs2)
                };
                out.insert("result".into(), emit(wrap(c)?)?);
                out.insert("mode".into(), json!(mode.as_str()));
                out.insert(
                    "coefficients".into(),
                    json!({
                        Channel::SelfDual.label(): coefficients_value(&k1, mode),
                        Channel::AntiSelfDual.label(): coefficients_value(&k2, mode),
                    }),
                );
            }
        }
    }
    Ok(Value::Object(out))
}

pub fn cmd_split(doc: &MatrixDocument) -> Result<SplitDocument, CliError> {
    let a = so4_generator(doc).ok_or_else(|| {
        CliError::Schema(format!("split expects an so(4) generator, got {}", describe(doc)))
    })?;
    Ok(split(&a)?.into())
}

pub fn cmd_merge(pair: SplitPair) -> MatrixDocument {
    MatrixDocument::So4Matrix(merge(pair))
}

fn read_split_pair(first: &Path, second: Option<&Path>) -> Result<SplitPair, CliError> {
    match second {
        None => {
            let text = read_input(first)?;
            let value: Value = serde_json::from_str(&text).map_err(CliError::from_json)?;
            let d: SplitDocument = serde_json::from_value(value).map_err(|e| {
                CliError::Schema(format!(
                    "merge expects {{\"self_dual\": [..3..], \"anti_self_dual\": [..3..]}}: {e}"
                ))
            })?;
            Ok(d.into())
        }
        Some(second) => match (read_document(first)?, read_document(second)?) {
            (MatrixDocument::Su2Vec(a1), MatrixDocument::Su2Vec(a2)) => Ok(SplitPair::new(a1, a2)),
            (x, y) => Err(CliError::Schema(format!(
                "merge with two inputs expects two su2_vec documents, got {} and {}",
                describe(&x),
                describe(&y)
            ))),
        },
    }
}

/// Executes one command, writing its output. Returns the process exit code
/// on success paths (`verify` may return [`EXIT_VERIFY_FAILED`]).
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Exp { input, oracle, out } => {
            let doc = read_document(&input)?;
            write_output(&emit(cmd_exp(&doc, oracle)?)?, &out)?;
        }
        Command::Log { input, oracle, out } => {
            let doc = read_document(&input)?;
            write_output(&emit(cmd_log(&doc, oracle)?)?, &out)?;
        }
        Command::Bch { a, b, mode, entries_path, oracle, out } => {
            let da = read_document(&a)?;
            let db = read_document(&b)?;
            write_output(&cmd_bch(&da, &db, mode.into(), entries_path, oracle)?, &out)?;
        }
        Command::Split { input, out } => {
            let doc = read_document(&input)?;
            let s = cmd_split(&doc)?;
            write_output(&serde_json::to_value(s).expect("plain arrays serialize"), &out)?;
        }
        Command::Merge { input, anti_self_dual, out } => {
            let pair = read_split_pair(&input, anti_self_dual.as_deref())?;
            write_output(&emit(cmd_merge(pair))?, &out)?;
        }
        Command::Verify { sweep, out } => {
            let report = sweep::verify(&sweep.config()?)?;
            write_output(&serde_json::to_value(&report).expect("report serializes"), &out)?;
            return Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
        Command::Bench { sweep, out } => {
            let report = sweep::bench(&sweep.config()?)?;
            write_output(&serde_json::to_value(&report).expect("report serializes"), &out)?;
        }
    }
    Ok(EXIT_OK)
}
