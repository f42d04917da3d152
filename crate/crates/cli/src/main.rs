//! Command-line front end: state construction, concurrence analysis,
//! parameter sweeps, family comparison, and preparation-protocol runs,
//! emitting deterministic CSV or JSON lines for plotting and regression.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;

use ecslab_core::entanglement::{analyze, concurrence_closed, ConcurrenceReport};
use ecslab_core::error::Error;
use ecslab_core::fock::TruncationConfig;
use ecslab_core::prep::{run_chain, Backend};
use ecslab_core::states::{Sign, StateSpec};

const CSV_HEADER: &str = "family,sign,m,n,alpha_sq,closed_form,oracle,abs_diff,p1,p2,n_max,status";
const COMPARE_HEADER: &str =
    "m,alpha_sq,tmeecs_plus,smeecs_plus,gap_plus,tmeecs_minus,smeecs_minus,gap_minus,status";
const PREPARE_HEADER: &str =
    "family,sign,m,alpha_sq,gt,atoms,backend,fidelity,success_prob,per_atom_probs,n_max,status";

#[derive(Parser)]
#[command(name = "ecslab", version, about = "Entangled coherent state laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form and oracle concurrence for one state
    Concurrence(ConcurrenceArgs),
    /// Concurrence over a grid of |alpha|^2 values
    Sweep(SweepArgs),
    /// Two-mode vs single-mode excitation at equal excitation count
    Compare(CompareArgs),
    /// Atom-chain preparation protocol with fidelity reporting
    Prepare(PrepareArgs),
    /// Evaluate a Laguerre polynomial (debug helper)
    Laguerre(LaguerreArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ecs,
    Tmeecs,
    Smeecs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    FirstOrder,
    Exact,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::FirstOrder => Backend::FirstOrder,
            BackendArg::Exact => Backend::Exact,
        }
    }
}

#[derive(Args)]
struct CommonStateArgs {
    /// State family
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Relative sign of the two coherent components
    #[arg(long, value_enum)]
    sign: SignArg,
    /// Mode-a excitation count (the excitation count for smeecs)
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// Mode-b excitation count (tmeecs only)
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Phase of alpha in radians; all quantities are phase-covariant, so
    /// this provably affects no output
    #[arg(long, default_value_t = 0.0)]
    alpha_phase: f64,
    /// Override the automatic Fock cutoff (also: env var ECSLAB_NMAX)
    #[arg(long)]
    n_max: Option<usize>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct ConcurrenceArgs {
    #[command(flatten)]
    common: CommonStateArgs,
    /// |alpha|^2
    #[arg(long)]
    alpha_sq: f64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonStateArgs,
    /// Comma-separated |alpha|^2 grid, strictly increasing
    #[arg(long, value_delimiter = ',', required_unless_present = "linspace")]
    alpha_sq: Option<Vec<f64>>,
    /// Uniform grid as start:stop:points
    #[arg(long, conflicts_with = "alpha_sq")]
    linspace: Option<String>,
}

#[derive(Args)]
struct CompareArgs {
    /// Comma-separated per-mode excitation counts m (tmeecs gets (m, m),
    /// smeecs gets 2m)
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    m_list: Vec<usize>,
    /// Comma-separated |alpha|^2 grid, strictly increasing
    #[arg(long, value_delimiter = ',', required_unless_present = "linspace")]
    alpha_sq: Option<Vec<f64>>,
    /// Uniform grid as start:stop:points
    #[arg(long, conflicts_with = "alpha_sq")]
    linspace: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    alpha_phase: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct PrepareArgs {
    /// Sign of the initial single-mode excited state
    #[arg(long, value_enum)]
    sign: SignArg,
    /// Mode-a excitation count of the initial state
    #[arg(long)]
    m: usize,
    /// |alpha|^2
    #[arg(long)]
    alpha_sq: f64,
    /// Dimensionless coupling times interaction time per atom
    #[arg(long)]
    gt: f64,
    /// Number of atoms sent through (= mode-b excitations added)
    #[arg(long)]
    atoms: usize,
    /// Propagator backend
    #[arg(long, value_enum, default_value_t = BackendArg::FirstOrder)]
    backend: BackendArg,
    #[arg(long, default_value_t = 0.0)]
    alpha_phase: f64,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct LaguerreArgs {
    /// Polynomial order
    #[arg(long)]
    m: usize,
    /// Argument
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
}

/// 12 significant digits, fixed notation for byte-stable output.
fn fmt12(x: f64) -> String {
    debug_assert!(x.is_finite());
    format!("{x:.11e}")
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::DegenerateState { .. } => 2,
        Error::TruncationInsufficient { .. } => 3,
        Error::RegimeViolation { .. } => 4,
        Error::ShapeMismatch { .. } | Error::UnsupportedAsymptote => 1,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure { code: exit_code_for(&err), message: err.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn alpha_from(alpha_sq: f64, phase: f64) -> Result<C64, Failure> {
    if !alpha_sq.is_finite() || alpha_sq < 0.0 {
        return Err(usage(format!("alpha_sq must be finite and >= 0, got {alpha_sq}")));
    }
    if !phase.is_finite() {
        return Err(usage("alpha-phase must be finite"));
    }
    // Everything downstream is covariant under alpha -> alpha e^{i theta}
    // (the core property tests pin that at 1e-12), so the canonical real
    // representative is used throughout and the phase flag provably cannot
    // move a single output byte.
    Ok(C64::new(alpha_sq.sqrt(), 0.0))
}

fn build_spec(
    family: FamilyArg,
    sign: Sign,
    alpha: C64,
    m: usize,
    n: usize,
) -> Result<StateSpec, Failure> {
    match family {
        FamilyArg::Ecs => {
            if m != 0 || n != 0 {
                return Err(usage("ecs takes no excitation counts"));
            }
            Ok(StateSpec::ecs(sign, alpha))
        }
        FamilyArg::Tmeecs => {
            if m < 1 || n < 1 {
                return Err(usage("tmeecs needs --m >= 1 and --n >= 1"));
            }
            Ok(StateSpec::tmeecs(sign, alpha, m, n))
        }
        FamilyArg::Smeecs => {
            if m < 1 {
                return Err(usage("smeecs needs --m >= 1"));
            }
            if n != 0 {
                return Err(usage("smeecs has no mode-b excitation; drop --n"));
            }
            Ok(StateSpec::smeecs(sign, alpha, m))
        }
    }
}

/// Resolve the truncation override: the flag wins, then ECSLAB_NMAX, then
/// the automatic per-point choice (signalled by None).
fn truncation_override(flag: Option<usize>) -> Result<Option<TruncationConfig>, Failure> {
    let from_env = match std::env::var("ECSLAB_NMAX") {
        Ok(s) => Some(
            s.parse::<usize>()
                .map_err(|_| usage(format!("ECSLAB_NMAX must be a positive integer, got {s:?}")))?,
        ),
        Err(_) => None,
    };
    Ok(match flag.or(from_env) {
        Some(n_max) => {
            if n_max < 1 {
                return Err(usage("n_max override must be >= 1"));
            }
            Some(TruncationConfig::new(n_max, 1e-12))
        }
        None => None,
    })
}

fn parse_grid(values: Option<Vec<f64>>, linspace: Option<String>) -> Result<Vec<f64>, Failure> {
    let grid = match (values, linspace) {
        (Some(v), None) => v,
        (None, Some(spec)) => {
            let parts: Vec<&str> = spec.split(':').collect();
            if parts.len() != 3 {
                return Err(usage("linspace wants start:stop:points"));
            }
            let start: f64 = parts[0].parse().map_err(|_| usage("bad linspace start"))?;
            let stop: f64 = parts[1].parse().map_err(|_| usage("bad linspace stop"))?;
            let points: usize = parts[2].parse().map_err(|_| usage("bad linspace points"))?;
            if points < 2 || stop <= start {
                return Err(usage("linspace wants stop > start and points >= 2"));
            }
            (0..points)
                .map(|i| start + (stop - start) * (i as f64) / ((points - 1) as f64))
                .collect()
        }
        _ => return Err(usage("provide either --alpha-sq or --linspace")),
    };
    if grid.is_empty() {
        return Err(usage("grid is empty"));
    }
    if grid.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(usage("grid values must be finite and >= 0"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage("grid must be strictly increasing"));
    }
    Ok(grid)
}

/// One sweep/concurrence record. Failed points keep the row (empty numeric
/// fields) so grids stay rectangular.
struct Record {
    family: &'static str,
    sign: &'static str,
    m: usize,
    n: usize,
    alpha_sq: f64,
    body: Result<RecordBody, &'static str>,
}

struct RecordBody {
    closed_form: f64,
    oracle: f64,
    p1: f64,
    p2: f64,
    n_max: usize,
}

fn status_label(err: &Error) -> &'static str {
    match err {
        Error::DegenerateState { .. } => "degenerate",
        Error::TruncationInsufficient { .. } => "truncation",
        _ => "error",
    }
}

fn record_for(spec: &StateSpec, outcome: Result<ConcurrenceReport, Error>) -> Record {
    let body = outcome
        .map(|rep| RecordBody {
            closed_form: rep.closed_form,
            oracle: rep.oracle,
            p1: rep.p1,
            p2: rep.p2,
            n_max: rep.truncation_used.n_max,
        })
        .map_err(|e| status_label(&e));
    Record {
        family: spec.family.label(),
        sign: spec.sign.label(),
        m: spec.m,
        n: spec.n,
        alpha_sq: spec.alpha.norm_sqr(),
        body,
    }
}

fn emit_record(rec: &Record, format: FormatArg) {
    match format {
        FormatArg::Csv => {
            let (vals, status) = match &rec.body {
                Ok(b) => (
                    [
                        fmt12(b.closed_form),
                        fmt12(b.oracle),
                        fmt12((b.closed_form - b.oracle).abs()),
                        fmt12(b.p1),
                        fmt12(b.p2),
                        b.n_max.to_string(),
                    ],
                    "ok",
                ),
                Err(status) => (Default::default(), *status),
            };
            println!(
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                rec.family,
                rec.sign,
                rec.m,
                rec.n,
                fmt12(rec.alpha_sq),
                vals[0],
                vals[1],
                vals[2],
                vals[3],
                vals[4],
                vals[5],
                status
            );
        }
        FormatArg::Json => {
            let tail = match &rec.body {
                Ok(b) => format!(
                    "\"closed_form\":{},\"oracle\":{},\"abs_diff\":{},\"p1\":{},\"p2\":{},\"n_max\":{},\"status\":\"ok\"",
                    fmt12(b.closed_form),
                    fmt12(b.oracle),
                    fmt12((b.closed_form - b.oracle).abs()),
                    fmt12(b.p1),
                    fmt12(b.p2),
                    b.n_max
                ),
                Err(status) => format!(
                    "\"closed_form\":null,\"oracle\":null,\"abs_diff\":null,\"p1\":null,\"p2\":null,\"n_max\":null,\"status\":\"{status}\""
                ),
            };
            println!(
                "{{\"tool_version\":\"{}\",\"family\":\"{}\",\"sign\":\"{}\",\"m\":{},\"n\":{},\"alpha_sq\":{},{tail}}}",
                env!("CARGO_PKG_VERSION"),
                rec.family,
                rec.sign,
                rec.m,
                rec.n,
                fmt12(rec.alpha_sq),
            );
        }
    }
}

fn cmd_concurrence(args: ConcurrenceArgs) -> Result<(), Failure> {
    let c = &args.common;
    let alpha = alpha_from(args.alpha_sq, c.alpha_phase)?;
    let spec = build_spec(c.family, c.sign.into(), alpha, c.m, c.n)?;
    let trunc = truncation_override(c.n_max)?;
    // single-point command: errors abort with their exit code
    let rep = analyze(&spec, trunc)?;
    if matches!(c.format, FormatArg::Csv) {
        println!("{CSV_HEADER}");
    }
    emit_record(&record_for(&spec, Ok(rep)), c.format);
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let c = &args.common;
    let grid = parse_grid(args.alpha_sq, args.linspace)?;
    if matches!(c.format, FormatArg::Csv) {
        println!("{CSV_HEADER}");
    }
    for &x in &grid {
        let alpha = alpha_from(x, c.alpha_phase)?;
        let spec = build_spec(c.family, c.sign.into(), alpha, c.m, c.n)?;
        let trunc = truncation_override(c.n_max)?;
        emit_record(&record_for(&spec, analyze(&spec, trunc)), c.format);
    }
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    let grid = parse_grid(args.alpha_sq, args.linspace)?;
    if args.m_list.is_empty() || args.m_list.iter().any(|&m| m < 1) {
        return Err(usage("m_list wants one or more integers >= 1"));
    }
    if matches!(args.format, FormatArg::Csv) {
        println!("{COMPARE_HEADER}");
    }
    // (gap, m, alpha_sq) minima over the ok rows, per sign
    let mut min_plus: Option<(f64, usize, f64)> = None;
    let mut min_minus: Option<(f64, usize, f64)> = None;
    for &m in &args.m_list {
        for &x in &grid {
            let alpha = alpha_from(x, args.alpha_phase)?;
            let vals = (|| -> Result<[f64; 6], Error> {
                let tp = concurrence_closed(&StateSpec::tmeecs(Sign::Plus, alpha, m, m))?;
                let sp = concurrence_closed(&StateSpec::smeecs(Sign::Plus, alpha, 2 * m))?;
                let tm = concurrence_closed(&StateSpec::tmeecs(Sign::Minus, alpha, m, m))?;
                let sm = concurrence_closed(&StateSpec::smeecs(Sign::Minus, alpha, 2 * m))?;
                Ok([tp, sp, tp - sp, tm, sm, tm - sm])
            })();
            match vals {
                Ok(v) => {
                    if min_plus.is_none_or(|(g, _, _)| v[2] < g) {
                        min_plus = Some((v[2], m, x));
                    }
                    if min_minus.is_none_or(|(g, _, _)| v[5] < g) {
                        min_minus = Some((v[5], m, x));
                    }
                    match args.format {
                        FormatArg::Csv => println!(
                            "{},{},{},{},{},{},{},{},ok",
                            m,
                            fmt12(x),
                            fmt12(v[0]),
                            fmt12(v[1]),
                            fmt12(v[2]),
                            fmt12(v[3]),
                            fmt12(v[4]),
                            fmt12(v[5]),
                        ),
                        FormatArg::Json => println!(
                            "{{\"m\":{},\"alpha_sq\":{},\"tmeecs_plus\":{},\"smeecs_plus\":{},\"gap_plus\":{},\"tmeecs_minus\":{},\"smeecs_minus\":{},\"gap_minus\":{},\"status\":\"ok\"}}",
                            m,
                            fmt12(x),
                            fmt12(v[0]),
                            fmt12(v[1]),
                            fmt12(v[2]),
                            fmt12(v[3]),
                            fmt12(v[4]),
                            fmt12(v[5]),
                        ),
                    }
                }
                Err(e) => {
                    let status = status_label(&e);
                    match args.format {
                        FormatArg::Csv => {
                            println!("{},{},,,,,,,{}", m, fmt12(x), status)
                        }
                        FormatArg::Json => println!(
                            "{{\"m\":{},\"alpha_sq\":{},\"tmeecs_plus\":null,\"smeecs_plus\":null,\"gap_plus\":null,\"tmeecs_minus\":null,\"smeecs_minus\":null,\"gap_minus\":null,\"status\":\"{status}\"}}",
                            m,
                            fmt12(x),
                        ),
                    }
                }
            }
        }
    }
    if let (Some((gp, mp, xp)), Some((gm, mm, xm))) = (min_plus, min_minus) {
        println!(
            "# min_gap_plus={} at m={mp},alpha_sq={}; min_gap_minus={} at m={mm},alpha_sq={}",
            fmt12(gp),
            fmt12(xp),
            fmt12(gm),
            fmt12(xm)
        );
    }
    Ok(())
}

fn cmd_prepare(args: PrepareArgs) -> Result<(), Failure> {
    if args.m < 1 {
        return Err(usage("prepare needs --m >= 1"));
    }
    if args.atoms < 1 {
        return Err(usage("prepare needs --atoms >= 1"));
    }
    if !args.gt.is_finite() || args.gt < 0.0 {
        return Err(usage("gt must be finite and >= 0"));
    }
    let alpha = alpha_from(args.alpha_sq, args.alpha_phase)?;
    let spec = StateSpec::smeecs(args.sign.into(), alpha, args.m);
    let trunc = truncation_override(args.n_max)?;
    let backend: Backend = args.backend.into();
    let outcome = run_chain(&spec, C64::new(args.gt, 0.0), 1.0, args.atoms, backend, trunc)?;
    let probs: Vec<String> = outcome.per_atom_probs.iter().map(|p| fmt12(*p)).collect();
    match args.format {
        FormatArg::Csv => {
            println!("{PREPARE_HEADER}");
            println!(
                "smeecs,{},{},{},{},{},{},{},{},{},{},ok",
                spec.sign.label(),
                args.m,
                fmt12(args.alpha_sq),
                fmt12(outcome.gt),
                outcome.atoms_detected,
                backend.label(),
                fmt12(outcome.fidelity_to_target),
                fmt12(outcome.success_prob),
                probs.join(";"),
                outcome.post_state.n_max(),
            );
        }
        FormatArg::Json => {
            println!(
                "{{\"tool_version\":\"{}\",\"family\":\"smeecs\",\"sign\":\"{}\",\"m\":{},\"alpha_sq\":{},\"gt\":{},\"atoms\":{},\"backend\":\"{}\",\"fidelity\":{},\"success_prob\":{},\"per_atom_probs\":[{}],\"n_max\":{},\"status\":\"ok\"}}",
                env!("CARGO_PKG_VERSION"),
                spec.sign.label(),
                args.m,
                fmt12(args.alpha_sq),
                fmt12(outcome.gt),
                outcome.atoms_detected,
                backend.label(),
                fmt12(outcome.fidelity_to_target),
                fmt12(outcome.success_prob),
                probs.join(","),
                outcome.post_state.n_max(),
            );
        }
    }
    Ok(())
}

fn cmd_laguerre(args: LaguerreArgs) -> Result<(), Failure> {
    if !args.x.is_finite() {
        return Err(usage("x must be finite"));
    }
    println!("{}", fmt12(ecslab_core::laguerre::laguerre(args.m, args.x)));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own exit code convention reserves 2; argument errors
            // here exit 1, help/version exit 0
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Concurrence(args) => cmd_concurrence(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Prepare(args) => cmd_prepare(args),
        Command::Laguerre(args) => cmd_laguerre(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("ecslab: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
