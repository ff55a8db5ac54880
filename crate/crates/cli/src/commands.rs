//! Command dispatch: flag parsing, input loading, payload serialization
//! and the exit-code contract.
//!
//! Exit codes: `0` success, `1` a verification suite reported a failed
//! identity, `2` usage or parse errors (flags, expressions, schema
//! violations), `3` precondition errors (input not polymonogenic, not
//! harmonic, not degree-homogeneous).

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};

use umbral_clifford::almansi::{almansi_decompose, fischer_decompose, AlmansiResult};
use umbral_clifford::dirac::{
    apply_dirac, apply_euler, apply_gamma, apply_laplacian, apply_vector,
};
use umbral_clifford::error::Error;
use umbral_clifford::json::{
    almansi_to_json, from_json_str, poly_from_json, poly_to_json, report_to_json, to_json_string,
    PolyJson, ReportJson,
};
use umbral_clifford::oscillator::{apply_hamiltonian, apply_j, apply_potential, OscillatorConfig};
use umbral_clifford::poly::{CliffordPolynomial, MultiIndex};
use umbral_clifford::rational::{parse_rational, Rational};
use umbral_clifford::umbral::{
    basic_sequence, sheffer_inverse_apply, CalculusConfig, Family, RaisingVariant,
};
use umbral_clifford::verify::{run_suite, IdentityReport};

use crate::expr::parse_polynomial;

pub const USAGE_EXIT: i32 = 2;
pub const PRECONDITION_EXIT: i32 = 3;
pub const IDENTITY_FAILURE_EXIT: i32 = 1;

/// Payload printed to stdout as JSON.
#[derive(Debug, Clone)]
pub enum Payload {
    Polynomial(CliffordPolynomial),
    Almansi(AlmansiResult),
    Reports(Vec<IdentityReport>),
}

/// Outcome of one invocation.
#[derive(Debug, Clone)]
pub struct CommandResult {
    pub command: String,
    pub payload: Payload,
    pub exit_code: i32,
    pub summary: String,
}

impl CommandResult {
    pub fn payload_json(&self) -> String {
        match &self.payload {
            Payload::Polynomial(poly) => to_json_string(&poly_to_json(poly)),
            Payload::Almansi(result) => to_json_string(&almansi_to_json(result)),
            Payload::Reports(reports) => {
                let docs: Vec<ReportJson> = reports.iter().map(report_to_json).collect();
                to_json_string(&docs)
            }
        }
    }
}

/// Failure with its exit code; the message goes to stderr.
#[derive(Debug, Clone)]
pub struct CommandFailure {
    pub exit_code: i32,
    pub message: String,
}

impl CommandFailure {
    fn usage(message: impl Into<String>) -> Self {
        CommandFailure {
            exit_code: USAGE_EXIT,
            message: message.into(),
        }
    }
}

/// Classifies an engine error under the exit-code contract: violated
/// mathematical preconditions are `3`, everything else is usage `2`.
pub fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::NotPolymonogenic { .. }
        | Error::ComponentNotMonogenic { .. }
        | Error::NotHarmonic { .. }
        | Error::NotEulerHomogeneous { .. }
        | Error::NotDegreeGraded(_)
        | Error::NotLocallyNilpotent(_)
        | Error::ScaleNotPositive(_) => PRECONDITION_EXIT,
        _ => USAGE_EXIT,
    }
}

fn engine(error: Error) -> CommandFailure {
    CommandFailure {
        exit_code: exit_code_for(&error),
        message: error.to_string(),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "uclifford",
    about = "Exact umbral Clifford analysis: decompositions and identity verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Parser, Debug, Clone)]
struct CalculusArgs {
    /// Number of variables and Clifford generators.
    #[arg(long)]
    n: usize,
    /// Delta-operator family: continuum, forward or central.
    #[arg(long)]
    family: String,
    /// Step as a rational "p/q"; required for forward and central.
    #[arg(long)]
    h: Option<String>,
    /// Raising variant: plain or symmetrized.
    #[arg(long, default_value = "plain")]
    variant: String,
}

impl CalculusArgs {
    fn build(&self) -> Result<CalculusConfig, CommandFailure> {
        let family = Family::from_name(&self.family).ok_or_else(|| {
            CommandFailure::usage(format!(
                "unknown family {:?}; expected continuum, forward or central",
                self.family
            ))
        })?;
        let variant = RaisingVariant::from_name(&self.variant).ok_or_else(|| {
            CommandFailure::usage(format!(
                "unknown variant {:?}; expected plain or symmetrized",
                self.variant
            ))
        })?;
        let h = self
            .h
            .as_ref()
            .map(|text| parse_rational(text).map_err(engine))
            .transpose()?;
        CalculusConfig::new(self.n, family, h, variant).map_err(engine)
    }
}

#[derive(Parser, Debug, Clone)]
#[command(group(ArgGroup::new("source").required(true).args(["expr", "input"])))]
struct InputArgs {
    /// Polynomial expression, e.g. "x1^2 - 1/2*e1*e2".
    #[arg(long)]
    expr: Option<String>,
    /// Path to a polynomial JSON document.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl InputArgs {
    fn load(&self, n: usize) -> Result<CliffordPolynomial, CommandFailure> {
        if let Some(text) = &self.expr {
            return parse_polynomial(text, n)
                .map_err(|error| CommandFailure::usage(error.to_string()));
        }
        let path = self.input.as_ref().expect("clap enforces the input group");
        let text = std::fs::read_to_string(path).map_err(|error| {
            CommandFailure::usage(format!("cannot read {}: {error}", path.display()))
        })?;
        let doc: PolyJson = from_json_str(&text).map_err(engine)?;
        let poly = poly_from_json(&doc).map_err(engine)?;
        if poly.n() != n {
            return Err(CommandFailure::usage(format!(
                "input document has dimension {}, expected {n}",
                poly.n()
            )));
        }
        Ok(poly)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Almansi decomposition of a polymonogenic input of order k.
    Decompose {
        #[command(flatten)]
        calculus: CalculusArgs,
        /// Decomposition order: the input must satisfy (D')^k f = 0.
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Fischer decomposition of a degree-homogeneous input.
    Fischer {
        #[command(flatten)]
        calculus: CalculusArgs,
        /// Basic-sequence degree of the input; inferred when omitted.
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Basic sequence element V_alpha = (x')^alpha 1.
    BasicSeq {
        #[command(flatten)]
        calculus: CalculusArgs,
        /// Comma-separated exponents, e.g. "3,0".
        #[arg(long)]
        alpha: String,
    },
    /// Applies one named operator to the input.
    Apply {
        #[command(flatten)]
        calculus: CalculusArgs,
        /// One of: dirac, vector, euler, gamma, laplacian, potential, J, H.
        #[arg(long)]
        op: String,
        /// Oscillator parameter for potential, J and H; defaults to 0.
        #[arg(long)]
        hbar: Option<String>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Runs a named identity suite and reports each identity.
    Verify {
        #[command(flatten)]
        calculus: CalculusArgs,
        /// One of: weyl, lemma-x-D, osp12, intertwining, gamma-commute,
        /// star-laplacian, oscillator.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses `argv` (including the program name) and runs the command.
///
/// Help and version requests surface as `Ok` results with empty payloads
/// upstream in `main`; this function treats them as usage outcomes.
pub fn run_command(argv: &[String]) -> Result<CommandResult, CommandFailure> {
    let cli = Cli::try_parse_from(argv).map_err(|error| {
        let exit_code = match error.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
            _ => USAGE_EXIT,
        };
        CommandFailure {
            exit_code,
            message: error.to_string(),
        }
    })?;
    match cli.command {
        Command::Decompose { calculus, k, input } => {
            let cfg = calculus.build()?;
            if k == 0 {
                return Err(CommandFailure::usage("--k must be at least 1"));
            }
            let poly = input.load(cfg.n())?;
            let result = almansi_decompose(&cfg, &poly, k).map_err(engine)?;
            let summary = format!(
                "decomposed into {} umbral monogenic components for {}",
                result.k(),
                cfg.label()
            );
            Ok(CommandResult {
                command: "decompose".into(),
                payload: Payload::Almansi(result),
                exit_code: 0,
                summary,
            })
        }
        Command::Fischer {
            calculus,
            degree,
            input,
        } => {
            let cfg = calculus.build()?;
            let poly = input.load(cfg.n())?;
            let degree = match degree {
                Some(value) => value,
                None => infer_degree(&cfg, &poly)?,
            };
            let result = fischer_decompose(&cfg, &poly, degree).map_err(engine)?;
            let summary = format!(
                "Fischer pieces of a degree-{degree} input: {} components for {}",
                result.k(),
                cfg.label()
            );
            Ok(CommandResult {
                command: "fischer".into(),
                payload: Payload::Almansi(result),
                exit_code: 0,
                summary,
            })
        }
        Command::BasicSeq { calculus, alpha } => {
            let cfg = calculus.build()?;
            let exponents = parse_alpha(&alpha, cfg.n())?;
            let poly = basic_sequence(&cfg, &exponents).map_err(engine)?;
            let summary = format!("V_({alpha}) for {}", cfg.label());
            Ok(CommandResult {
                command: "basic-seq".into(),
                payload: Payload::Polynomial(poly),
                exit_code: 0,
                summary,
            })
        }
        Command::Apply {
            calculus,
            op,
            hbar,
            input,
        } => {
            let cfg = calculus.build()?;
            let poly = input.load(cfg.n())?;
            let hbar = hbar
                .as_deref()
                .map(parse_rational)
                .transpose()
                .map_err(engine)?
                .unwrap_or_else(|| Rational::from_integer(0.into()));
            let image = apply_named_operator(&cfg, &op, hbar, &poly)?;
            let summary = format!("applied {op} for {}", cfg.label());
            Ok(CommandResult {
                command: "apply".into(),
                payload: Payload::Polynomial(image),
                exit_code: 0,
                summary,
            })
        }
        Command::Verify {
            calculus,
            suite,
            max_degree,
            trials,
            seed,
        } => {
            let cfg = calculus.build()?;
            let reports = run_suite(&suite, &cfg, max_degree, trials, seed).map_err(engine)?;
            let failures = reports.iter().filter(|report| !report.passed).count();
            let mut summary = String::new();
            for report in &reports {
                summary.push_str(&format!(
                    "{} {} ({} trials, degree <= {})\n",
                    if report.passed { "PASS" } else { "FAIL" },
                    report.identity_name,
                    report.trials,
                    report.max_degree
                ));
            }
            summary.push_str(&format!(
                "suite {suite} on {}: {}/{} identities passed",
                cfg.label(),
                reports.len() - failures,
                reports.len()
            ));
            Ok(CommandResult {
                command: "verify".into(),
                payload: Payload::Reports(reports),
                exit_code: if failures == 0 {
                    0
                } else {
                    IDENTITY_FAILURE_EXIT
                },
                summary,
            })
        }
    }
}

fn parse_alpha(text: &str, n: usize) -> Result<MultiIndex, CommandFailure> {
    let mut exponents = Vec::new();
    for part in text.split(',') {
        let value: u32 = part
            .trim()
            .parse()
            .map_err(|_| CommandFailure::usage(format!("invalid exponent {part:?} in --alpha")))?;
        exponents.push(value);
    }
    if exponents.len() != n {
        return Err(CommandFailure::usage(format!(
            "--alpha has {} entries, expected {n}",
            exponents.len()
        )));
    }
    Ok(MultiIndex::new(exponents))
}

/// Basic-sequence degree of a homogeneous input.
fn infer_degree(cfg: &CalculusConfig, poly: &CliffordPolynomial) -> Result<usize, CommandFailure> {
    let coordinates = sheffer_inverse_apply(cfg, poly).map_err(engine)?;
    let degrees: Vec<usize> = coordinates
        .homogeneous_components()
        .iter()
        .map(|(degree, _)| *degree)
        .collect();
    match degrees.as_slice() {
        [] => Ok(0),
        [degree] => Ok(*degree),
        _ => Err(engine(Error::NotEulerHomogeneous {
            expected: degrees[degrees.len() - 1],
            found: degrees,
        })),
    }
}

fn apply_named_operator(
    cfg: &CalculusConfig,
    name: &str,
    hbar: Rational,
    poly: &CliffordPolynomial,
) -> Result<CliffordPolynomial, CommandFailure> {
    let oscillator = OscillatorConfig::new(cfg.clone(), hbar);
    match name {
        "dirac" => apply_dirac(cfg, poly).map_err(engine),
        "vector" => apply_vector(cfg, poly).map_err(engine),
        "euler" => apply_euler(cfg, poly).map_err(engine),
        "gamma" => apply_gamma(cfg, poly).map_err(engine),
        "laplacian" => apply_laplacian(cfg, poly).map_err(engine),
        "potential" => apply_potential(&oscillator, poly).map_err(engine),
        "J" => apply_j(&oscillator, poly).map_err(engine),
        "H" => apply_hamiltonian(&oscillator, poly).map_err(engine),
        _ => Err(CommandFailure::usage(format!(
            "unknown operator {name:?}; expected dirac, vector, euler, gamma, laplacian, potential, J or H"
        ))),
    }
}
