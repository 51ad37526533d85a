//! `hopfcalc` command-line front end: argument parsing, input resolution,
//! report assembly and rendering. The binary is a thin wrapper over [`run`].

pub mod input;
pub mod report;
mod text;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use hopfcalc_core::autos::{self, JacobianSpectrum, ProbeVerdict, QuadricAutoParams, QuadricCheck, QuadricVariant};
use hopfcalc_core::gauss::{format_gaussian, format_rational, Gaussian};
use hopfcalc_core::groupcoh::{self, ActionProvenance, DeckAction, GroupCohError, LocalSystemRep};
use hopfcalc_core::hopfcoh::{self, BvdvMode, BvdvTable, Feasibility, HopfError, ManifoldKind};
use hopfcalc_core::link::{self, LinkError, SphereCaveat, DELTA_DISPLAY_BITS};
use hopfcalc_core::milnor::{self, MilnorError};
use hopfcalc_core::poly::{self, PolyError, WeightInference};
use hopfcalc_core::{Exec, ExponentVector, RationalMatrix, WeightedPoly};

use input::InputFile;
use report::*;

/// Largest middle Betti number for which an identity action is assumed.
pub const DEFAULT_ACTION_LIMIT: usize = 128;
/// Relative tolerance of the numeric `Delta(1)` comparison.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Input(String),
    Refused(String),
    Unsupported(String),
    OracleMismatch(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Refused(_) => "refused",
            CliError::Unsupported(_) => "unsupported",
            CliError::OracleMismatch(_) => "oracle-mismatch",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            _ => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Input(m)
            | CliError::Refused(m)
            | CliError::Unsupported(m)
            | CliError::OracleMismatch(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // one line, whatever the source message contains
        write!(f, "error: {}: {}", self.code(), self.message().replace('\n', " "))
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GroupCohError> for CliError {
    fn from(e: GroupCohError) -> Self {
        match e {
            GroupCohError::ClosureBound { .. } | GroupCohError::DimensionTooSmall(_) => CliError::Refused(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<HopfError> for CliError {
    fn from(e: HopfError) -> Self {
        match e {
            HopfError::GroupCoh(g) => g.into(),
            HopfError::SearchBound(_) | HopfError::DimensionTooSmall(_) | HopfError::ZeroFormDegree => {
                CliError::Refused(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<LinkError> for CliError {
    fn from(e: LinkError) -> Self {
        CliError::Refused(e.to_string())
    }
}

impl From<MilnorError> for CliError {
    fn from(e: MilnorError) -> Self {
        match e {
            MilnorError::LengthMismatch { .. } | MilnorError::OutOfRange { .. } => CliError::Input(e.to_string()),
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<autos::AutosError> for CliError {
    fn from(e: autos::AutosError) -> Self {
        CliError::Input(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// Arguments

#[derive(Parser, Debug)]
#[command(name = "hopfcalc", version, about = "Invariants of homological Hopf manifolds built from weighted-homogeneous singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every invariant available for the input.
    Analyze(AnalyzeArgs),
    /// Monodromy divisor, Delta(1) and homology-sphere tests of the link.
    Link(LinkArgs),
    /// Milnor number, weights and the scaling-fixed subspace.
    Milnor(LinkArgs),
    /// Form-degree tables H^q(Omega^p) on the cover and the quotients.
    Cohomology(CohomologyArgs),
    /// Betti numbers of the quotient by the deck group.
    Quotient(QuotientArgs),
    /// Cohomology of a local system on the quotient.
    LocalSystem(LocalSystemArgs),
    /// Finiteness of the automorphism group via sum 1/a_i < k.
    Autocheck(AutocheckArgs),
    /// Automorphisms of X1 X2 + X3^2 + ... + Xn^2.
    Quadric(QuadricArgs),
    /// Feasibility of E2 degeneration for a Hodge-de Rham E1 grid.
    Hodge(HodgeArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct SourceArgs {
    /// Exponents of z0^a0 + ... + zn^an, comma separated.
    #[arg(long, conflicts_with = "poly")]
    exponents: Option<String>,
    /// Polynomial text, e.g. "x^2 + y^3 + z^5".
    #[arg(long)]
    poly: Option<String>,
    /// TOML input file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Milnor number override, for complete intersections with generic coefficients.
    #[arg(long)]
    tau: Option<String>,
    /// Complex dimension, when no exponents are given.
    #[arg(long)]
    n: Option<usize>,
    /// Emit the JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    /// Recompute by brute-force enumeration and compare.
    #[arg(long)]
    oracle: bool,
    /// Largest enumeration the oracle accepts.
    #[arg(long, default_value_t = 10_000_000)]
    cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Theorem,
    Derivation,
    Both,
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Theorem => "theorem",
            ModeArg::Derivation => "derivation",
            ModeArg::Both => "both",
        }
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "theorem" => Ok(ModeArg::Theorem),
            "derivation" => Ok(ModeArg::Derivation),
            "both" => Ok(ModeArg::Both),
            _ => Err(CliError::Input(format!("mode must be theorem, derivation or both, got {s:?}"))),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct ModeArgs {
    /// Brieskorn-van de Ven table convention [default: both].
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Single form degree; all of 0..=n when omitted.
    #[arg(long)]
    p: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
struct ActionArgs {
    /// Deck generator on H^{n-1}, rows separated by ';', e.g. "0,-1;1,-1".
    #[arg(long, allow_hyphen_values = true)]
    action: Option<String>,
    /// Generator of the finite part of the deck group (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    finite: Vec<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct LocalArgs {
    /// Monodromy of the local system along the central generator.
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    /// Deck generator on H^{n-1}; identity when omitted.
    #[arg(long, allow_hyphen_values = true)]
    deck: Option<String>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    oracle: OracleArgs,
    #[command(flatten)]
    mode: ModeArgs,
    #[command(flatten)]
    action: ActionArgs,
    #[command(flatten)]
    local: LocalArgs,
    /// Codimension for the finiteness criterion.
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Args, Debug)]
struct LinkArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    oracle: OracleArgs,
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args, Debug)]
struct QuotientArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    action: ActionArgs,
}

#[derive(Args, Debug)]
struct LocalSystemArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    local: LocalArgs,
}

#[derive(Args, Debug)]
struct AutocheckArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Codimension: 1 for hypersurfaces.
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Printed,
    Corrected,
    Both,
}

impl VariantArg {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "printed" => Ok(VariantArg::Printed),
            "corrected" => Ok(VariantArg::Corrected),
            "both" => Ok(VariantArg::Both),
            _ => Err(CliError::Input(format!("variant must be printed, corrected or both, got {s:?}"))),
        }
    }

    fn variants(self) -> Vec<QuadricVariant> {
        match self {
            VariantArg::Printed => vec![QuadricVariant::Printed],
            VariantArg::Corrected => vec![QuadricVariant::Corrected],
            VariantArg::Both => vec![QuadricVariant::Printed, QuadricVariant::Corrected],
        }
    }
}

#[derive(Args, Debug)]
struct QuadricArgs {
    /// Number of variables (at least 4).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Polynomial in x, e.g. "x^2 - 1/3".
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Number of sample points for the orbit probe (0 disables it).
    #[arg(long, default_value_t = 0)]
    probe: usize,
    #[arg(long, default_value_t = 200)]
    iterations: usize,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct HodgeArgs {
    /// E1 grid, rows p separated by ';', entries q by ','.
    #[arg(long)]
    e1: Option<String>,
    /// Betti numbers the sequence abuts to.
    #[arg(long)]
    target: Option<String>,
    #[arg(long, default_value_t = hopfcoh::DEFAULT_NODE_BOUND)]
    node_bound: u64,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

// ---------------------------------------------------------------------------
// Entry point

/// A finished report plus a failure to signal after printing it.
struct Outcome {
    report: Report,
    failure: Option<CliError>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, failure: None }
    }
}

/// Runs one command; `argv[0]` is the program name. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = write!(err, "{e}");
                return 2;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let msg = first.trim_start_matches("error:").trim();
            let _ = writeln!(err, "{}", CliError::Usage(msg.to_string()));
            return 2;
        }
    };
    let (json, result) = dispatch(cli.command);
    match result {
        Ok(outcome) => {
            let rendered = if json { outcome.report.to_json() } else { text::render(&outcome.report) };
            let _ = writeln!(out, "{rendered}");
            for w in &outcome.report.warnings {
                if !json {
                    let _ = writeln!(err, "warning: {w}");
                }
            }
            match outcome.failure {
                None => 0,
                Some(e) => {
                    let _ = writeln!(err, "{e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> (bool, Result<Outcome, CliError>) {
    match cmd {
        Command::Analyze(a) => (a.source.json, cmd_analyze(a)),
        Command::Link(a) => (a.source.json, cmd_link(a)),
        Command::Milnor(a) => (a.source.json, cmd_milnor(a)),
        Command::Cohomology(a) => (a.source.json, cmd_cohomology(a).map(Outcome::from)),
        Command::Quotient(a) => (a.source.json, cmd_quotient(a).map(Outcome::from)),
        Command::LocalSystem(a) => (a.source.json, cmd_local_system(a).map(Outcome::from)),
        Command::Autocheck(a) => (a.source.json, cmd_autocheck(a).map(Outcome::from)),
        Command::Quadric(a) => (a.json, cmd_quadric(a).map(Outcome::from)),
        Command::Hodge(a) => (a.json, cmd_hodge(a)),
    }
}

// ---------------------------------------------------------------------------
// Input resolution

/// Singularity data merged from flags and the input file; flags win.
struct Source {
    file: InputFile,
    file_path: Option<String>,
    exponents: Option<ExponentVector>,
    poly_text: Option<String>,
    poly: Option<WeightedPoly>,
    n: Option<usize>,
    tau_override: Option<BigUint>,
}

impl Source {
    fn resolve(args: &SourceArgs) -> Result<Self, CliError> {
        let file = match &args.input {
            Some(p) => input::load(p)?,
            None => InputFile::default(),
        };
        let sing = file.singularity.clone().unwrap_or_default();
        let from_flags = args.exponents.is_some() || args.poly.is_some();
        if !from_flags && sing.exponents.is_some() && sing.poly.is_some() {
            return Err(CliError::Input("[singularity] takes exponents or poly, not both".into()));
        }
        let mut exponents = None;
        let mut poly_text = None;
        let mut poly = None;
        if let Some(text) = &args.exponents {
            exponents = Some(ExponentVector::parse_csv(text)?);
        } else if let Some(text) = &args.poly {
            poly_text = Some(text.clone());
        } else if let Some(a) = &sing.exponents {
            exponents = Some(ExponentVector::new(a.clone())?);
        } else if let Some(text) = &sing.poly {
            poly_text = Some(text.clone());
        }
        if let Some(text) = &poly_text {
            let p = poly::parse_polynomial(text)?;
            exponents = poly::detect_brieskorn_pham(&p);
            poly = Some(p);
        }
        let tau_text = args.tau.clone().or_else(|| sing.tau.as_ref().map(input::Cell::text));
        let tau_override = match tau_text {
            None => None,
            Some(t) => {
                let v: BigUint = t
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Input(format!("tau must be a positive integer, got {t:?}")))?;
                if v.is_zero() {
                    return Err(CliError::Input("tau must be at least 1".into()));
                }
                Some(v)
            }
        };
        let implied_n = exponents
            .as_ref()
            .map(ExponentVector::dim)
            .or_else(|| poly.as_ref().map(|p: &WeightedPoly| p.nvars().saturating_sub(1)));
        let n = match (args.n.or(sing.n), implied_n) {
            (Some(given), Some(implied)) if given != implied => {
                return Err(CliError::Input(format!("n = {given} disagrees with the input, which has n = {implied}")))
            }
            (given, implied) => given.or(implied),
        };
        Ok(Self {
            file,
            file_path: args.input.as_ref().map(|p| p.display().to_string()),
            exponents,
            poly_text,
            poly,
            n,
            tau_override,
        })
    }

    fn echo(&self) -> InputEcho {
        InputEcho {
            input_file: self.file_path.clone(),
            exponents: self.exponents.as_ref().map(|a| a.as_slice().to_vec()),
            poly: self.poly_text.clone(),
            n: self.n,
            tau_override: self.tau_override.as_ref().map(BigUint::to_string),
            ..InputEcho::default()
        }
    }

    fn has_singularity(&self) -> bool {
        self.exponents.is_some() || self.poly.is_some() || self.n.is_some() || self.tau_override.is_some()
    }

    fn require_exponents(&self, what: &str) -> Result<&ExponentVector, CliError> {
        match (&self.exponents, &self.poly) {
            (Some(a), _) => Ok(a),
            (None, Some(_)) => Err(CliError::Unsupported(format!(
                "{what} needs a polynomial of the form z0^a0 + ... + zn^an"
            ))),
            (None, None) => Err(missing_source()),
        }
    }

    fn require_n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(missing_source)
    }

    /// `tau` with its source; the override wins.
    fn tau(&self, warnings: &mut Vec<String>) -> Option<(BigUint, &'static str)> {
        let computed = self.exponents.as_ref().map(milnor::milnor_number);
        match (&self.tau_override, computed) {
            (Some(t), Some(c)) => {
                if *t != c {
                    warnings.push(format!(
                        "tau-override: tau = {t} replaces prod(a_i - 1) = {c} for all tau-dependent output"
                    ));
                }
                Some((t.clone(), "override"))
            }
            (Some(t), None) => Some((t.clone(), "override")),
            (None, Some(c)) => Some((c, "exponents")),
            (None, None) => None,
        }
    }
}

fn missing_source() -> CliError {
    CliError::Usage("pass --exponents, --poly or --input".into())
}

fn parse_matrix_rows(rows: &[Vec<String>], what: &str) -> Result<RationalMatrix, CliError> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|c| input::rational(c)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Err(CliError::Input(format!("{what}: empty matrix")));
    }
    RationalMatrix::from_rows(parsed).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn parse_matrix(text: &str, what: &str) -> Result<RationalMatrix, CliError> {
    parse_matrix_rows(&input::matrix_rows(text), what)
}

fn parse_u64_csv(text: &str, what: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Input(format!("{what}: '{}' is not a non-negative integer", s.trim())))
        })
        .collect()
}

fn matrix_echo(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

fn big_to_usize(v: &BigUint, what: &str) -> Result<usize, CliError> {
    v.to_usize().ok_or_else(|| CliError::Refused(format!("{what} = {v} is too large")))
}

// ---------------------------------------------------------------------------
// Sections

fn milnor_section(src: &Source, warnings: &mut Vec<String>) -> Result<MilnorSection, CliError> {
    let (tau, tau_source) = match src.tau(warnings) {
        Some(t) => t,
        None => {
            src.require_exponents("the Milnor number")?;
            unreachable!("exponents give tau");
        }
    };
    let mut s = MilnorSection {
        tau: tau.to_string(),
        tau_source: tau_source.to_string(),
        basis_bounds: None,
        weights: None,
        degree: None,
        fixed_subspace_dim: None,
        enumerated_tau: None,
    };
    if let Some(a) = &src.exponents {
        let desc = milnor::MilnorAlgebraDesc::new(a);
        let (w, d) = a.canonical_weights();
        s.basis_bounds = Some(desc.basis_bounds);
        s.weights = Some(w.iter().map(format_rational).collect());
        s.degree = Some(format_rational(&d));
        s.fixed_subspace_dim = Some(milnor::fixed_subspace_dim(a).to_string());
    } else if let Some(p) = &src.poly {
        if let WeightInference::Determined { weights, degree } = poly::infer_weights(p) {
            s.weights = Some(weights.iter().map(format_rational).collect());
            s.degree = Some(format_rational(&degree));
        }
    }
    Ok(s)
}

fn link_section(a: &ExponentVector, oracle: Option<&OracleArgs>) -> Result<(LinkSection, Option<CliError>), CliError> {
    let r = link::classify_link(a);
    let divisor = r
        .divisor
        .entries()
        .iter()
        .map(|(m, s)| DivisorEntry { m: m.to_string(), s: s.to_string() })
        .collect();
    let mut section = LinkSection {
        link_dimension: r.link_dimension,
        divisor,
        divisor_text: r.divisor.to_string(),
        degree: r.divisor.degree().to_string(),
        eig1_multiplicity: r.eig1_multiplicity.to_string(),
        middle_betti: r.middle_betti.to_string(),
        delta_at_one: r.delta_at_one.as_ref().and_then(|d| d.value(DELTA_DISPLAY_BITS)).map(|v| v.to_string()),
        delta_at_one_factors: r
            .delta_at_one
            .as_ref()
            .map(|d| d.factors().iter().map(|(b, e)| [b.to_string(), e.to_string()]).collect()),
        q_sphere: r.q_sphere,
        z_sphere: r.z_sphere,
        sphere_caveat: match r.sphere_caveat {
            SphereCaveat::None => "none",
            SphereCaveat::LowDimension => "low-dimension",
        }
        .to_string(),
        oracle: None,
    };
    let mut failure = None;
    if let Some(o) = oracle.filter(|o| o.oracle) {
        let rep = link::brute_force_oracle(a, o.cap, Exec::default())?;
        let agrees = rep.agrees_with(&r, ORACLE_TOLERANCE);
        if !agrees {
            failure = Some(CliError::OracleMismatch(format!(
                "brute-force enumeration disagrees with the divisor computation for exponents {a}"
            )));
        }
        section.oracle = Some(OracleSection {
            tuples: rep.tuples.to_string(),
            multiplicity: rep.multiplicity.to_string(),
            delta_at_one_estimate: rep.delta_at_one_estimate().map(|v| format!("{v:.9e}")),
            agrees,
        });
    }
    Ok((section, failure))
}

fn deck_action(
    n: usize,
    middle_betti: Option<usize>,
    action: Option<RationalMatrix>,
    finite: Vec<RationalMatrix>,
    warnings: &mut Vec<String>,
) -> Result<DeckAction, CliError> {
    let finite = (!finite.is_empty()).then_some(finite);
    match action {
        Some(m) => {
            if let Some(b) = middle_betti {
                if m.rows() != b || m.cols() != b {
                    return Err(CliError::Input(format!(
                        "action is {}x{}, the middle cohomology has dimension {b}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
            Ok(DeckAction::new(n, m, finite)?)
        }
        None => {
            let b = middle_betti.ok_or_else(|| {
                CliError::Usage("without exponents the deck action must be given (--action)".into())
            })?;
            if b > DEFAULT_ACTION_LIMIT {
                return Err(CliError::Refused(format!(
                    "middle Betti number {b} exceeds {DEFAULT_ACTION_LIMIT}; refusing to assume an identity action, pass --action"
                )));
            }
            if b > 0 {
                warnings.push(format!(
                    "default-identity-action: no deck action given; the identity on H^{{n-1}} (dimension {b}) is assumed"
                ));
            }
            let mut d = DeckAction::default_identity(n, b)?;
            if let Some(f) = finite {
                d = DeckAction::new(n, d.action_mid, Some(f))?;
                d.provenance = ActionProvenance::DefaultIdentity;
            }
            Ok(d)
        }
    }
}

fn quotient_section(d: &DeckAction) -> Result<QuotientSection, CliError> {
    let betti = groupcoh::quotient_betti(d, groupcoh::DEFAULT_CLOSURE_BOUND)?;
    Ok(QuotientSection {
        n: d.n,
        middle_betti: d.middle_betti,
        betti,
        is_homological_hopf: groupcoh::is_homological_hopf(d, groupcoh::DEFAULT_CLOSURE_BOUND)?,
        action_provenance: match d.provenance {
            ActionProvenance::DefaultIdentity => "default-identity",
            ActionProvenance::UserSupplied => "user-supplied",
        }
        .to_string(),
    })
}

/// Action matrix and finite generators from flags, falling back to `[quotient]`.
fn action_inputs(args: &ActionArgs, file: &InputFile) -> Result<(Option<RationalMatrix>, Vec<RationalMatrix>), CliError> {
    let q = file.quotient.clone().unwrap_or_default();
    let action = match (&args.action, &q.action) {
        (Some(t), _) => Some(parse_matrix(t, "action")?),
        (None, Some(cells)) => Some(parse_matrix_rows(&input::cells_to_rows(cells), "action")?),
        (None, None) => None,
    };
    let finite = if !args.finite.is_empty() {
        args.finite.iter().map(|t| parse_matrix(t, "finite generator")).collect::<Result<_, _>>()?
    } else {
        q.finite
            .unwrap_or_default()
            .iter()
            .map(|m| parse_matrix_rows(&input::cells_to_rows(m), "finite generator"))
            .collect::<Result<_, _>>()?
    };
    Ok((action, finite))
}

fn local_inputs(args: &LocalArgs, file: &InputFile) -> Result<(Option<RationalMatrix>, Option<RationalMatrix>), CliError> {
    let l = file.local_system.clone().unwrap_or_default();
    let rho = match (&args.rho, &l.rho) {
        (Some(t), _) => Some(parse_matrix(t, "rho")?),
        (None, Some(c)) => Some(parse_matrix_rows(&input::cells_to_rows(c), "rho")?),
        (None, None) => None,
    };
    let deck = match (&args.deck, &l.deck) {
        (Some(t), _) => Some(parse_matrix(t, "deck")?),
        (None, Some(c)) => Some(parse_matrix_rows(&input::cells_to_rows(c), "deck")?),
        (None, None) => None,
    };
    Ok((rho, deck))
}

fn local_system_section(
    n: usize,
    middle_betti: Option<usize>,
    rho: RationalMatrix,
    deck: Option<RationalMatrix>,
    warnings: &mut Vec<String>,
) -> Result<LocalSystemSection, CliError> {
    let b = match (&deck, middle_betti) {
        (Some(d), Some(b)) if d.rows() != b => {
            return Err(CliError::Input(format!("deck action is {}x{}, the middle cohomology has dimension {b}", d.rows(), d.cols())))
        }
        (Some(d), _) => d.rows(),
        (None, Some(b)) => b,
        (None, None) => {
            return Err(CliError::Usage("without exponents the deck action must be given (--deck)".into()));
        }
    };
    let deck = match deck {
        Some(d) => Some(d),
        None if b == 0 => None,
        None if b > DEFAULT_ACTION_LIMIT => {
            return Err(CliError::Refused(format!(
                "middle Betti number {b} exceeds {DEFAULT_ACTION_LIMIT}; refusing to assume an identity action, pass --deck"
            )))
        }
        None => {
            warnings.push(format!(
                "default-identity-action: no deck action given; the identity on H^{{n-1}} (dimension {b}) is assumed"
            ));
            Some(RationalMatrix::identity(b))
        }
    };
    let rep = LocalSystemRep::new(rho, deck)?;
    let rank = rep.rank;
    let c = groupcoh::local_system_cohomology(n, &rep, b)?;
    warnings.extend(c.warnings);
    Ok(LocalSystemSection { n, rank, middle_betti: b, dims: c.dims })
}

fn bvdv_row(t: &BvdvTable) -> BvdvRow {
    BvdvRow {
        row: t.row.to_vec().iter().map(ToString::to_string).collect(),
        w_center: t.w_center,
        w_part: t.w_part.iter().map(|&(q, r)| [q, r as i64]).collect(),
        clipped_mass: t.clipped_mass,
    }
}

fn dims_strings(g: &hopfcoh::GradedDims) -> Vec<String> {
    g.to_vec().iter().map(ToString::to_string).collect()
}

fn cohomology_section(
    src: &Source,
    n: usize,
    tau: Option<&BigUint>,
    mode: ModeArg,
    p: Option<usize>,
    warnings: &mut Vec<String>,
) -> Result<CohomologySection, CliError> {
    if n < 3 {
        return Err(HopfError::DimensionTooSmall(n).into());
    }
    let degrees: Vec<usize> = match p {
        Some(p) if p > n => return Err(HopfError::FormDegree { p, n }.into()),
        Some(p) => vec![p],
        None => (0..=n).collect(),
    };
    let bvdv = |p: usize, m: BvdvMode| match &src.exponents {
        Some(a) => hopfcoh::bvdv_omega_table_for(a, p, m),
        None => hopfcoh::bvdv_omega_table(n, p, m),
    };
    let mut tables = Vec::new();
    let mut differing = Vec::new();
    for p in degrees {
        let cover = tau.map(|t| hopfcoh::cover_omega_dims(n, p, t)).transpose()?;
        let hopf = hopfcoh::hopf_omega_table(n, p)?;
        let (theorem, derivation) = if p == 0 {
            (None, None)
        } else {
            let t = bvdv(p, BvdvMode::Theorem)?;
            let d = bvdv(p, BvdvMode::Derivation)?;
            if t.row != d.row {
                differing.push(p);
            }
            (Some(t), Some(d))
        };
        tables.push(FormDegreeTable {
            p,
            cover: cover.as_ref().map(dims_strings),
            hopf: dims_strings(&hopf),
            bvdv_theorem: theorem.as_ref().filter(|_| mode != ModeArg::Derivation).map(bvdv_row),
            bvdv_derivation: derivation.as_ref().filter(|_| mode != ModeArg::Theorem).map(bvdv_row),
        });
    }
    if !differing.is_empty() {
        let list: Vec<String> = differing.iter().map(usize::to_string).collect();
        let shown = match mode {
            ModeArg::Both => "both are shown".to_string(),
            m => format!("only the {} table is shown", m.name()),
        };
        warnings.push(format!(
            "bvdv-modes-differ: the stated W-part (1,2,1) is centered at n-p-1 while recomputing from the cover \
             dimensions centers it at n-p; the tables differ for p = {}; {shown}",
            list.join(",")
        ));
    }
    Ok(CohomologySection { n, tau: tau.map(BigUint::to_string), tables })
}

fn canonical_section(n: usize, a: Option<&ExponentVector>, b2: Option<usize>, warnings: &mut Vec<String>) -> Result<CanonicalSection, CliError> {
    let hopf = hopfcoh::canonical_divisor(ManifoldKind::Hopf, n, None)?.coefficients;
    let (bvdv, alt) = match a {
        Some(a) => {
            warnings.push(
                "canonical-divisor-sign: the Brieskorn-van de Ven canonical class is read as (-a0, 1, ..., 1); \
                 including i = 0 in the sum gives the alternative (1-a0, 1, ..., 1), also reported"
                    .to_string(),
            );
            (
                Some(hopfcoh::canonical_divisor(ManifoldKind::Bvdv, n, Some(a))?.coefficients),
                Some(hopfcoh::canonical_divisor_alternative(a).coefficients),
            )
        }
        None => (None, None),
    };
    let picard = match (b2, n >= 3) {
        (Some(b2), true) => hopfcoh::picard_statement(&hopfcoh::hopf_omega_table(n, 0)?, b2),
        _ => hopfcoh::PicardStatement::Undetermined,
    };
    Ok(CanonicalSection { hopf, bvdv, bvdv_alternative: alt, b2, picard: picard.to_string() })
}

fn autos_section(a: &ExponentVector, k: u64) -> Result<AutosSection, CliError> {
    let (sum, holds) = autos::finiteness_condition(a, k)?;
    Ok(AutosSection { k, sum_inverse_exponents: format_rational(&sum), finite_automorphism_group: holds })
}

fn middle_betti_of(a: &ExponentVector) -> Result<usize, CliError> {
    big_to_usize(&link::classify_link(a).middle_betti, "middle Betti number")
}

// ---------------------------------------------------------------------------
// Commands

fn cmd_analyze(args: AnalyzeArgs) -> Result<Outcome, CliError> {
    let src = Source::resolve(&args.source)?;
    if !src.has_singularity() {
        return Err(missing_source());
    }
    let mode = resolve_mode(args.mode.mode, &src.file)?;
    let p = args.mode.p.or_else(|| src.file.bundle.as_ref().and_then(|b| b.p));
    let mut echo = src.echo();
    echo.p = p;
    echo.mode = Some(mode.name().to_string());
    let mut r = Report::new("analyze", echo);
    let mut w = Vec::new();
    let mut failure = None;

    let tau = src.tau(&mut Vec::new());
    if tau.is_none() {
        w.push("milnor-skipped: tau is known only for z0^a0 + ... + zn^an or through --tau".to_string());
    } else {
        r.milnor = Some(milnor_section(&src, &mut w)?);
        if let (Some(a), true) = (&src.exponents, args.oracle.oracle) {
            let counted = milnor::milnor_number_by_enumeration(a, Exec::default(), args.oracle.cap)?;
            let m = r.milnor.as_mut().expect("just set");
            m.enumerated_tau = Some(counted.to_string());
            if BigUint::from(counted) != milnor::milnor_number(a) {
                failure = Some(CliError::OracleMismatch(format!("enumeration counts {counted} basis monomials, tau is {}", m.tau)));
            }
        }
    }
    let mut middle_betti = None;
    match &src.exponents {
        Some(a) => {
            let (section, f) = link_section(a, Some(&args.oracle))?;
            middle_betti = Some(big_to_usize(&link::classify_link(a).middle_betti, "middle Betti number")?);
            r.link = Some(section);
            failure = failure.or(f);
        }
        None if src.poly.is_some() => {
            w.push("link-skipped: the polynomial is not of the form z0^a0 + ... + zn^an".to_string());
        }
        None => {}
    }

    let n = src.n;
    let (action, finite) = action_inputs(&args.action, &src.file)?;
    if let Some(m) = &action {
        r.input.action = Some(matrix_echo(m));
    }
    if let Some(n) = n {
        if action.is_some() || middle_betti.is_some() {
            match deck_action(n, middle_betti, action, finite, &mut w) {
                Ok(d) => r.quotient = Some(quotient_section(&d)?),
                Err(CliError::Refused(m)) => w.push(format!("quotient-skipped: {m}")),
                Err(e) => return Err(e),
            }
        }
        let (rho, deck) = local_inputs(&args.local, &src.file)?;
        if let Some(rho) = rho {
            r.local_system = Some(local_system_section(n, middle_betti, rho, deck, &mut w)?);
        }
        if n >= 3 {
            let tau_val = tau.as_ref().map(|(t, _)| t);
            r.cohomology = Some(cohomology_section(&src, n, tau_val, mode, p, &mut w)?);
        } else {
            w.push(format!("cohomology-skipped: the form-degree tables need n >= 3, got n = {n}"));
        }
        let b2 = r.quotient.as_ref().map(|q| q.betti[2]);
        r.canonical = Some(canonical_section(n, src.exponents.as_ref(), b2, &mut w)?);
    }
    if let Some(a) = &src.exponents {
        let k = args.k.or_else(|| src.file.autos.as_ref().and_then(|x| x.k)).unwrap_or(1);
        r.autos = Some(autos_section(a, k)?);
    }
    r.warnings = w;
    Ok(Outcome { report: r, failure })
}

fn resolve_mode(flag: Option<ModeArg>, file: &InputFile) -> Result<ModeArg, CliError> {
    match (flag, file.bundle.as_ref().and_then(|b| b.mode.as_deref())) {
        (Some(m), _) => Ok(m),
        (None, Some(s)) => ModeArg::parse(s),
        (None, None) => Ok(ModeArg::Both),
    }
}

fn cmd_link(args: LinkArgs) -> Result<Outcome, CliError> {
    let src = Source::resolve(&args.source)?;
    let a = src.require_exponents("the link computation")?.clone();
    let mut r = Report::new("link", src.echo());
    let (section, failure) = link_section(&a, Some(&args.oracle))?;
    r.link = Some(section);
    Ok(Outcome { report: r, failure })
}

fn cmd_milnor(args: LinkArgs) -> Result<Outcome, CliError> {
    let src = Source::resolve(&args.source)?;
    let mut r = Report::new("milnor", src.echo());
    let mut w = Vec::new();
    let mut section = milnor_section(&src, &mut w)?;
    let mut failure = None;
    if args.oracle.oracle {
        let a = src.require_exponents("the enumeration oracle")?;
        let counted = milnor::milnor_number_by_enumeration(a, Exec::default(), args.oracle.cap)?;
        section.enumerated_tau = Some(counted.to_string());
        if BigUint::from(counted) != milnor::milnor_number(a) {
            failure = Some(CliError::OracleMismatch(format!(
                "enumeration counts {counted} basis monomials, prod(a_i - 1) is {}",
                milnor::milnor_number(a)
            )));
        }
    }
    r.milnor = Some(section);
    r.warnings = w;
    Ok(Outcome { report: r, failure })
}

fn cmd_cohomology(args: CohomologyArgs) -> Result<Report, CliError> {
    let src = Source::resolve(&args.source)?;
    let n = src.require_n()?;
    let mode = resolve_mode(args.mode.mode, &src.file)?;
    let p = args.mode.p.or_else(|| src.file.bundle.as_ref().and_then(|b| b.p));
    let mut echo = src.echo();
    echo.p = p;
    echo.mode = Some(mode.name().to_string());
    let mut r = Report::new("cohomology", echo);
    let mut w = Vec::new();
    let tau = src.tau(&mut w).map(|(t, _)| t);
    r.cohomology = Some(cohomology_section(&src, n, tau.as_ref(), mode, p, &mut w)?);
    r.warnings = w;
    Ok(r)
}

fn cmd_quotient(args: QuotientArgs) -> Result<Report, CliError> {
    let src = Source::resolve(&args.source)?;
    let (action, finite) = action_inputs(&args.action, &src.file)?;
    let middle_betti = match &src.exponents {
        Some(a) => Some(middle_betti_of(a)?),
        None if src.poly.is_some() && action.is_none() => {
            src.require_exponents("the middle cohomology")?;
            None
        }
        None => None,
    };
    let n = src.require_n()?;
    let mut r = Report::new("quotient", src.echo());
    r.input.action = action.as_ref().map(matrix_echo);
    let mut w = Vec::new();
    let d = deck_action(n, middle_betti, action, finite, &mut w)?;
    r.quotient = Some(quotient_section(&d)?);
    r.warnings = w;
    Ok(r)
}

fn cmd_local_system(args: LocalSystemArgs) -> Result<Report, CliError> {
    let src = Source::resolve(&args.source)?;
    let n = src.require_n()?;
    let (rho, deck) = local_inputs(&args.local, &src.file)?;
    let rho = rho.ok_or_else(|| CliError::Usage("pass --rho or [local_system] rho".into()))?;
    let middle_betti = src.exponents.as_ref().map(middle_betti_of).transpose()?;
    let mut r = Report::new("local-system", src.echo());
    let mut w = Vec::new();
    r.local_system = Some(local_system_section(n, middle_betti, rho, deck, &mut w)?);
    r.warnings = w;
    Ok(r)
}

fn cmd_autocheck(args: AutocheckArgs) -> Result<Report, CliError> {
    let src = Source::resolve(&args.source)?;
    let a = src.require_exponents("the finiteness criterion")?;
    let k = args.k.or_else(|| src.file.autos.as_ref().and_then(|x| x.k)).unwrap_or(1);
    let mut r = Report::new("autocheck", src.echo());
    r.autos = Some(autos_section(a, k)?);
    Ok(r)
}

/// Coefficients of a polynomial in `x`, constant term first.
fn univariate_coefficients(text: &str) -> Result<Vec<Gaussian>, CliError> {
    let vars = vec!["x".to_string()];
    let p = poly::parse_polynomial_in(text, &vars)?;
    let deg = p.terms().iter().map(|t| t.exponents[0]).max().unwrap_or(0);
    let mut c: Vec<Gaussian> = (0..=deg).map(|d| p.coefficient(&[d])).collect();
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    Ok(c)
}

/// Deterministic points of norm at most 1, spread by the golden-ratio sequence.
fn probe_points(count: usize, n: usize) -> Vec<Vec<Complex64>> {
    let phi = 0.618_033_988_749_894_9_f64;
    (0..count)
        .map(|k| {
            (0..n)
                .map(|i| {
                    let s = ((k * n + i + 1) as f64 * phi).fract();
                    let r = 0.5 * ((k + 2 * i + 1) as f64 * phi * phi).fract() / (n as f64).sqrt();
                    Complex64::from_polar(r, std::f64::consts::TAU * s)
                })
                .collect()
        })
        .collect()
}

fn verdict_name(v: ProbeVerdict) -> &'static str {
    match v {
        ProbeVerdict::Contracting => "contracting",
        ProbeVerdict::NonContracting => "non-contracting",
        ProbeVerdict::NearFixedPoint => "near-fixed-point",
        ProbeVerdict::RejectedOrigin => "rejected-origin",
    }
}

fn cmd_quadric(args: QuadricArgs) -> Result<Report, CliError> {
    let file = match &args.input {
        Some(p) => input::load(p)?,
        None => InputFile::default(),
    };
    let q = file.quadric.clone().unwrap_or_default();
    let n = args.n.or(q.n).ok_or_else(|| CliError::Usage("pass --n or [quadric] n".into()))?;
    let alpha_text = args.alpha.clone().or_else(|| q.alpha.as_ref().map(input::Cell::text)).unwrap_or_else(|| "1".into());
    let beta_text = args.beta.clone().or_else(|| q.beta.as_ref().map(input::Cell::text)).unwrap_or_else(|| "1".into());
    let f_text = args.f.clone().or(q.f.clone()).unwrap_or_else(|| "0".into());
    let variant = match (args.variant, &q.variant) {
        (Some(v), _) => v,
        (None, Some(s)) => VariantArg::parse(s)?,
        (None, None) => VariantArg::Both,
    };
    let alpha = poly::parse_gaussian(&alpha_text)?;
    let beta = poly::parse_gaussian(&beta_text)?;
    let f = univariate_coefficients(&f_text)?;

    let mut r = Report::new(
        "quadric",
        InputEcho { input_file: args.input.as_ref().map(|p| p.display().to_string()), n: Some(n), ..InputEcho::default() },
    );
    let mut w = Vec::new();
    let mut variants = Vec::new();
    for v in variant.variants() {
        let params = QuadricAutoParams::new(n, alpha.clone(), beta.clone(), f.clone(), v)?;
        let map = autos::build_quadric_auto(&params);
        let (preserves, multiplier, residual) = match autos::verify_quadric_invariance(&map, n)? {
            QuadricCheck::Multiplier(c) => (true, c, None),
            QuadricCheck::Mismatch { multiplier, residual } => (false, multiplier, Some(residual.to_string())),
        };
        let name = match v {
            QuadricVariant::Printed => "printed",
            QuadricVariant::Corrected => "corrected",
        };
        if !preserves {
            w.push(format!(
                "quadric-not-preserved: the {name} map does not satisfy Q o T = c Q for Q = X1 X2 + X3^2 + ... + Xn^2; residual reported"
            ));
        }
        let spectrum = autos::jacobian_spectrum(&params);
        let contracts = spectrum.contracts();
        let (kind, values) = match &spectrum {
            JacobianSpectrum::Eigenvalues(e) => ("eigenvalues", e),
            JacobianSpectrum::CharPoly(c) => ("charpoly", c),
        };
        let probe = (args.probe > 0).then(|| {
            let rep = autos::orbit_probe(&map, &probe_points(args.probe, n), args.iterations, autos::DEFAULT_EPSILON, Exec::default());
            ProbeSection {
                label: rep.label.to_string(),
                iterations: args.iterations,
                epsilon: format!("{:e}", autos::DEFAULT_EPSILON),
                samples: probe_points(args.probe, n)
                    .iter()
                    .zip(&rep.samples)
                    .map(|(x, s)| ProbeSample {
                        point: x.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect(),
                        verdict: verdict_name(s.verdict).to_string(),
                        steps_to_epsilon: s.steps_to_epsilon,
                        monotone: s.monotone,
                    })
                    .collect(),
            }
        });
        variants.push(QuadricVariantReport {
            variant: name.to_string(),
            map: map.components().iter().map(ToString::to_string).collect(),
            preserves_quadric: preserves,
            multiplier: format_gaussian(&multiplier),
            residual,
            spectrum_kind: kind.to_string(),
            spectrum: values.iter().map(format_gaussian).collect(),
            contracts,
            probe,
        });
    }
    r.quadric = Some(QuadricSection {
        n,
        alpha: format_gaussian(&alpha),
        beta: format_gaussian(&beta),
        f: f.iter().map(format_gaussian).collect(),
        variants,
    });
    r.warnings = w;
    Ok(r)
}

fn cmd_hodge(args: HodgeArgs) -> Result<Outcome, CliError> {
    let file = match &args.input {
        Some(p) => input::load(p)?,
        None => InputFile::default(),
    };
    let h = file.hodge.clone().unwrap_or_default();
    let e1 = match (&args.e1, h.e1) {
        (Some(t), _) => input::matrix_rows(t)
            .iter()
            .map(|row| parse_u64_csv(&row.join(","), "e1"))
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(g)) => g,
        (None, None) => return Err(CliError::Usage("pass --e1 or [hodge] e1".into())),
    };
    let target = match (&args.target, h.target) {
        (Some(t), _) => parse_u64_csv(t, "target")?,
        (None, Some(t)) => t,
        (None, None) => return Err(CliError::Usage("pass --target or [hodge] target".into())),
    };
    let table = hopfcoh::E1Table::new(e1.clone(), target.clone())?;
    let mut r = Report::new(
        "hodge",
        InputEcho { input_file: args.input.as_ref().map(|p| p.display().to_string()), ..InputEcho::default() },
    );
    let mut failure = None;
    let section = match hopfcoh::hodge_derham_feasible(&table, args.node_bound)? {
        Feasibility::Feasible(a) => {
            let verified = a.verify(&table);
            if !verified {
                failure = Some(CliError::OracleMismatch("rank assignment fails the E2 re-verification".into()));
            }
            HodgeSection { e2: a.e2(&table), ranks: Some(a.ranks), e1, target, feasible: true, verified }
        }
        Feasibility::Infeasible => HodgeSection { e1, target, feasible: false, ranks: None, e2: None, verified: false },
    };
    r.hodge = Some(section);
    Ok(Outcome { report: r, failure })
}
