//! Argument parsing and command execution for the `knotdeform` binary.
//!
//! [`parse_args`] validates everything (knots, ring specs, ring elements)
//! before [`run`] computes anything. Exit codes: 0 ok, 1 domain error,
//! 2 verification failure, 64 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use knotdeform::charvar::{character_point, Component};
use knotdeform::deform::DeformationWire;
use knotdeform::{
    check_axioms_c, check_axioms_p, curve_model, equivalence_harness, make_ring, riley_data, trace_reduce,
    trace_table, AxiomReport, DeformationData, DeformationReport, FreeWord, PseudoRepTable, RingElement, RingSpec,
    TwoBridgeKnot, WordSet,
};

mod verify;

pub use verify::{verify_all, VerifyOptions, VerifyRow, VerifySummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable that turns off ANSI colors.
pub const NO_COLOR_ENV: &str = "KNOTDEFORM_NO_COLOR";

const NEGATIVE_HELP: &str = "Negative integers may be written as -1 or with the escape m1 (m1 = -1, m3/5 = -3/5).";

#[derive(Debug, Parser)]
#[command(name = "knotdeform", version, about = "Riley polynomials and universal deformations of two-bridge knot groups", after_help = NEGATIVE_HELP)]
struct Cli {
    #[command(subcommand)]
    sub: Sub,
}

#[derive(Debug, Args)]
struct KnotArgs {
    /// Odd m > 0
    #[arg(allow_negative_numbers = true)]
    m: String,
    /// Odd n with -m < n < m, coprime to m
    #[arg(allow_negative_numbers = true)]
    n: String,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// The sign sequence eps_i = (-1)^floor(i n / m)
    Epsilon(KnotArgs),
    /// The Schubert word w
    Word(KnotArgs),
    /// Riley polynomial Phi(x,u), Phi(2,u) and its discriminant
    Riley {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        json: bool,
    },
    /// Roots of Phi(2,u) in F_p
    Roots {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        prime: u64,
    },
    /// The character curve (y - x^2 + 2) Phi(x, y - x^2 + 2) = 0
    Charvar {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        json: bool,
    },
    /// Reduce tr(w) to a polynomial in x = tr a, z = tr b, y = tr ab
    TraceReduce { word: String },
    /// Check the pseudo-representation axioms on a JSON table
    PseudoCheck { table: PathBuf },
    /// Universal deformation of the Riley representation r_(1, beta)
    Deform {
        #[command(flatten)]
        knot: KnotArgs,
        /// rational | padic:<p>:<M> | hbar:<p>:<M>
        #[arg(long)]
        coeff: String,
        /// Residual root of Phi(2,u) in the residue field
        #[arg(long, allow_negative_numbers = true)]
        beta: String,
        /// z-adic precision N
        #[arg(long)]
        prec: usize,
        /// Also check the conjugation identities in O[[s]], s^2 = x - 2, mod s^Ns
        #[arg(long, value_name = "NS")]
        ramified: Option<usize>,
        /// Specialize at x0 = (1+e)^n + (1+e)^-n, e the uniformizer
        #[arg(long, value_name = "N", allow_negative_numbers = true)]
        specialize: Option<String>,
        /// Exit with status 2 unless every check passes
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant suite over knots and primes
    VerifyAll {
        #[arg(long, default_value_t = 15)]
        max_m: i64,
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,11")]
        primes: Vec<u64>,
        /// Enables the randomized checks
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformRequest {
    pub knot: TwoBridgeKnot,
    pub coeff: RingSpec,
    pub beta: RingElement,
    pub precision: usize,
    pub ramified: Option<usize>,
    pub specialize: Option<i64>,
    pub verify: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Epsilon(TwoBridgeKnot),
    Word(TwoBridgeKnot),
    Riley { knot: TwoBridgeKnot, json: bool },
    Roots { knot: TwoBridgeKnot, prime: u64 },
    Charvar { knot: TwoBridgeKnot, json: bool },
    TraceReduce(FreeWord),
    PseudoCheck(PathBuf),
    Deform(DeformRequest),
    VerifyAll(VerifyOptions),
    /// `--help` or `--version`: text to print, exit 0.
    Info(String),
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub action: Action,
    pub color: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn unescape(s: &str) -> String {
    match s.strip_prefix('m') {
        Some(rest) if rest.starts_with(|c: char| c.is_ascii_digit()) => format!("-{rest}"),
        _ => s.to_string(),
    }
}

fn int_arg(name: &str, s: &str) -> Result<i64, UsageError> {
    unescape(s).parse().map_err(|_| UsageError(format!("invalid integer for {name}: '{s}'")))
}

fn knot_arg(k: &KnotArgs) -> Result<TwoBridgeKnot, UsageError> {
    let m = int_arg("m", &k.m)?;
    let n = int_arg("n", &k.n)?;
    TwoBridgeKnot::new(m, n).map_err(|e| UsageError(e.to_string()))
}

pub fn parse_args<I, T>(argv: I) -> Result<Command, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(std::iter::once("knotdeform".into()).chain(argv.into_iter().map(Into::into))) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return Ok(Command { action: Action::Info(e.to_string()), color: false });
        }
        Err(e) => return Err(UsageError(e.to_string().trim_end().to_string())),
    };
    let action = match cli.sub {
        Sub::Epsilon(k) => Action::Epsilon(knot_arg(&k)?),
        Sub::Word(k) => Action::Word(knot_arg(&k)?),
        Sub::Riley { knot, json } => Action::Riley { knot: knot_arg(&knot)?, json },
        Sub::Roots { knot, prime } => Action::Roots { knot: knot_arg(&knot)?, prime },
        Sub::Charvar { knot, json } => Action::Charvar { knot: knot_arg(&knot)?, json },
        Sub::TraceReduce { word } => {
            Action::TraceReduce(word.parse().map_err(|e: knotdeform::WordParseError| UsageError(e.to_string()))?)
        }
        Sub::PseudoCheck { table } => Action::PseudoCheck(table),
        Sub::Deform { knot, coeff, beta, prec, ramified, specialize, verify, json: _ } => {
            let knot = knot_arg(&knot)?;
            let coeff: RingSpec = coeff.parse().map_err(|e| UsageError(format!("--coeff: {e}")))?;
            let residue = coeff.residue_field().unwrap_or(coeff);
            let beta = make_ring(residue)
                .and_then(|r| r.parse(&unescape(&beta)))
                .map_err(|e| UsageError(format!("--beta: {e}")))?;
            if prec < 2 {
                return Err(UsageError("--prec must be at least 2".into()));
            }
            if ramified == Some(0) {
                return Err(UsageError("--ramified must be at least 1".into()));
            }
            let specialize = specialize.map(|s| int_arg("--specialize", &s)).transpose()?;
            Action::Deform(DeformRequest { knot, coeff, beta, precision: prec, ramified, specialize, verify })
        }
        Sub::VerifyAll { max_m, primes, seed } => {
            if max_m < 3 {
                return Err(UsageError("--max-m must be at least 3".into()));
            }
            for &p in &primes {
                RingSpec::PrimeField(p).validate().map_err(|e| UsageError(format!("--primes {p}: {e}")))?;
            }
            Action::VerifyAll(VerifyOptions { max_m, primes, seed })
        }
    };
    Ok(Command { action, color: false })
}

/// Whether ANSI colors should be used on a stream that is a terminal.
pub fn color_enabled() -> bool {
    std::env::var_os(NO_COLOR_ENV).is_none()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Domain(#[from] knotdeform::Error),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

macro_rules! domain_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Domain(e.into())
            }
        })*
    };
}

domain_errors!(knotdeform::RingError, knotdeform::RileyError, knotdeform::PseudoError, knotdeform::DeformError);

type Outcome = Result<i32, Failure>;

/// Execute a command, writing results to `out` and diagnostics to `err`.
pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn io(r: std::io::Result<()>) -> Result<(), Failure> {
    r.map_err(Failure::Io)
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Outcome {
    match &cmd.action {
        Action::Info(text) => io(write!(out, "{text}"))?,
        Action::Epsilon(k) => {
            let eps: Vec<String> = k.epsilon_sequence().iter().map(ToString::to_string).collect();
            io(writeln!(out, "{}", eps.join(" ")))?;
        }
        Action::Word(k) => io(writeln!(out, "{}", k.schubert_word()))?,
        Action::Riley { knot, json: as_json } => {
            let data = riley_data(*knot)?;
            if *as_json {
                io(writeln!(out, "{}", json(&data.summary()?)))?;
            } else {
                io(writeln!(out, "{}", data.text()?))?;
            }
        }
        Action::Roots { knot, prime } => {
            let roots = riley_data(*knot)?.roots_mod(*prime)?;
            let strs: Vec<String> = roots.iter().map(ToString::to_string).collect();
            io(writeln!(out, "{}", serde_json::to_string(&strs).expect("strings")))?;
        }
        Action::Charvar { knot, json: as_json } => {
            let model = curve_model(*knot)?;
            if *as_json {
                io(writeln!(out, "{}", json(&model.wire())))?;
            } else {
                io(writeln!(out, "{}", model.equation()))?;
            }
        }
        Action::TraceReduce(w) => io(writeln!(out, "{}", trace_reduce(w)))?,
        Action::PseudoCheck(path) => return pseudo_check(path, out),
        Action::Deform(req) => return deform(req, out),
        Action::VerifyAll(opts) => {
            let summary = verify_all(opts);
            io(write!(out, "{}", summary.render(cmd.color)))?;
            return Ok(if summary.passed() { EXIT_OK } else { EXIT_VERIFY });
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PseudoOutput {
    ring: RingSpec,
    words: usize,
    #[serde(rename = "P")]
    p: AxiomReport,
    #[serde(rename = "C")]
    c: AxiomReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdicts_agree: Option<bool>,
}

fn pseudo_check(path: &PathBuf, out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let tbl = PseudoRepTable::from_json(&text)?;
    let (p, c, agree) = match equivalence_harness(&tbl) {
        Ok(v) => (v.p, v.c, Some(v.agree)),
        Err(_) => (check_axioms_p(&tbl), check_axioms_c(&tbl), None),
    };
    let passed = p.passed() && c.passed();
    let output = PseudoOutput { ring: tbl.ring(), words: tbl.words().len(), p, c, verdicts_agree: agree };
    io(writeln!(out, "{}", json(&output)))?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY })
}

#[derive(Serialize)]
struct Specialization {
    n: String,
    x0: String,
    a: [String; 4],
    b: [String; 4],
}

#[derive(Serialize)]
struct DeformOutput {
    #[serde(flatten)]
    data: DeformationWire,
    #[serde(skip_serializing_if = "Option::is_none")]
    ramified: Option<DeformationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    specialization: Option<Specialization>,
}

fn deform(req: &DeformRequest, out: &mut dyn Write) -> Outcome {
    let data = DeformationData::compute(req.knot, &req.beta, req.coeff, req.precision)?;
    let ramified = req.ramified.map(|ns| data.ramified_check(ns)).transpose()?;
    let specialization = match req.specialize {
        None => None,
        Some(n) => {
            let ring = make_ring(req.coeff)?;
            let e = ring.uniformizer()?;
            let base = (ring.one() + e).pow(n.unsigned_abs());
            let base = if n < 0 { base.inverse()? } else { base };
            let x0 = base.clone() + base.inverse()?;
            let rho = data.specialize(&x0)?;
            let entries = |m: &knotdeform::SL2Matrix<RingElement>| m.mat().entries().map(ToString::to_string);
            Some(Specialization { n: n.to_string(), x0: x0.to_string(), a: entries(&rho.a), b: entries(&rho.b) })
        }
    };
    let passed = data.verification.passed() && ramified.as_ref().map_or(true, DeformationReport::passed);
    let output = DeformOutput { data: data.to_wire(), ramified, specialization };
    io(writeln!(out, "{}", json(&output)))?;
    Ok(if req.verify && !passed { EXIT_VERIFY } else { EXIT_OK })
}

/// Shared by `verify-all`: whether the Riley character of `beta` lies on
/// the irreducible component.
pub(crate) fn residual_point_on_curve(knot: TwoBridgeKnot, beta: &RingElement) -> Result<bool, knotdeform::Error> {
    let one = beta.ring_handle().one();
    let (x, y) = character_point(&one, beta)?;
    Ok(curve_model(knot)?.contains_point(&x, &y, Component::Irreducible))
}

pub(crate) fn residual_table(
    knot: TwoBridgeKnot,
    beta: &RingElement,
    words: Arc<WordSet>,
) -> Result<PseudoRepTable, knotdeform::Error> {
    let rho = knotdeform::riley_rep(knot, &beta.ring_handle().one(), beta)?;
    Ok(trace_table(&rho, words))
}
