//! `qunify` — exact tables and identity checks for unified q-exponentials
//! and their generalized Bernoulli, Euler, and Genocchi analogs.
//!
//! Everything is computed over exact rational functions of the half-power
//! variable `v` (`q = v²`); no floating point enters any table. Exit codes
//! form a stable contract:
//!
//! * `0` — success (including property findings that are informative only)
//! * `1` — I/O failure
//! * `2` — bad input: unknown family, malformed value, unusable probe
//! * `3` — an exact identity that must hold was violated

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qunify::alpha::{
    builtin_family, family_from_json, inverse_condition_check, solve_alpha_system, symmetry_check,
    AlphaFamily,
};
use qunify::qcore::gauss_binomial_identity_check;
use qunify::qnumbers::{
    addition_theorem_check, classical_limit_check, numbers, odd_vanishing_check,
    poly_derivative_identity_check, polys, NumberKind, PolyMode,
};
use qunify::qpoly::QPoly;
use qunify::rational::{parse_rational, rat, simplest_in_interval, sqrt_exact, Rational};
use qunify::report::{json_string, CheckClass, Report};
use qunify::series::{radius_estimate, RadiusEstimate};
use qunify::QRat;

#[derive(Parser)]
#[command(
    name = "qunify",
    version,
    about = "Exact q-Bernoulli/Euler/Genocchi tables and identity checks \
             for unified q-exponentials"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a number table for a family and render it
    Numbers(NumbersArgs),
    /// Compute the polynomial tables (one or two variables)
    Polys(PolysArgs),
    /// Run verification suites and report per-identity verdicts
    Verify(VerifyArgs),
    /// Solve for even weights from prescribed odd ones
    SolveAlpha(SolveAlphaArgs),
    /// Estimate the convergence radius of the exponential at a rational q
    Radius(RadiusArgs),
}

#[derive(Args)]
struct NumbersArgs {
    /// Built-in family name (ones, gauss, improved, half_gauss) or a path
    /// to a serialized family file
    #[arg(long)]
    family: String,
    /// Which number kind to tabulate
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Highest index to tabulate
    #[arg(long, default_value_t = 8)]
    n: u32,
    /// Series truncation order; raised to --n when smaller
    #[arg(long)]
    order: Option<u32>,
    /// Output format
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Write here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PolysArgs {
    #[command(flatten)]
    base: NumbersArgs,
    /// One variable (P_n(x)) or two (P_n(x,y))
    #[arg(long, value_enum, default_value_t = ModeArg::Univariate)]
    mode: ModeArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Built-in family name or a path to a serialized family file
    #[arg(long)]
    family: String,
    /// Comma-separated suites: symmetry, inverse, addition, odd-vanishing,
    /// derivative, classical-limit, gauss-binomial, or all
    #[arg(long, value_delimiter = ',', default_value = "all")]
    suite: Vec<String>,
    /// Highest index each suite sweeps
    #[arg(long, default_value_t = 8)]
    n: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Write here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveAlphaArgs {
    /// Set every odd weight to 1
    #[arg(long, conflicts_with = "odd", required_unless_present = "odd")]
    ones: bool,
    /// Odd weights as `k=value` pairs, e.g. `1=1,3=(1+q)(1+q^2)/4`;
    /// unspecified odd indices default to 1
    #[arg(long, value_delimiter = ',')]
    odd: Option<Vec<String>>,
    /// Highest index to solve for (even)
    #[arg(long, default_value_t = 8)]
    n: u32,
    /// Write the family file here; its first entries print to standard
    /// output. Without --out the family JSON itself goes to standard
    /// output and the entries to standard error.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RadiusArgs {
    /// Built-in family name or a path to a serialized family file
    #[arg(long)]
    family: String,
    /// Probe point, an exact rational in (0,1) with a rational square root
    #[arg(long)]
    q: String,
    /// How many terms of the coefficient ratio sequence to examine
    #[arg(long, default_value_t = 200)]
    n: u32,
    /// Emit a JSON object instead of a single line
    #[arg(long)]
    json: bool,
    /// Write here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Bernoulli,
    Euler,
    Genocchi,
}

impl From<KindArg> for NumberKind {
    fn from(k: KindArg) -> NumberKind {
        match k {
            KindArg::Bernoulli => NumberKind::Bernoulli,
            KindArg::Euler => NumberKind::Euler,
            KindArg::Genocchi => NumberKind::Genocchi,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Univariate,
    Bivariate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

/// Everything that can go wrong after argument parsing, tagged with the
/// exit code it maps to.
#[derive(Debug)]
enum CliError {
    Io(String, std::io::Error),
    Input(String),
    Violation,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(..) => 1,
            CliError::Input(_) => 2,
            CliError::Violation => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(what, e) => write!(f, "{what}: {e}"),
            CliError::Input(msg) => f.write_str(msg),
            CliError::Violation => f.write_str("identity violation"),
        }
    }
}

impl From<qunify::Error> for CliError {
    fn from(e: qunify::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Numbers(a) => cmd_numbers(a),
        Cmd::Polys(a) => cmd_polys(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::SolveAlpha(a) => cmd_solve_alpha(a),
        Cmd::Radius(a) => cmd_radius(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Violation) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}

/// A builtin name, else a path to a family file.
fn load_family(spec: &str) -> Result<AlphaFamily, CliError> {
    if let Ok(fam) = builtin_family(spec) {
        return Ok(fam);
    }
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| CliError::Io(format!("reading {spec}"), e))?;
        return Ok(family_from_json(&text)?);
    }
    Err(CliError::Input(format!(
        "unknown family {spec:?}: not a built-in (ones, gauss, improved, half_gauss) \
         and no such file"
    )))
}

/// The truncation order actually used: at least `n`, with a notice when an
/// explicit smaller order had to be raised.
fn effective_order(n: u32, order: Option<u32>) -> u32 {
    match order {
        Some(o) if o < n => {
            eprintln!("notice: --order {o} raised to {n} to cover the requested table");
            n
        }
        Some(o) => o,
        None => n,
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("writing {}", path.display()), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_numbers(a: NumbersArgs) -> Result<(), CliError> {
    let fam = load_family(&a.family)?;
    let kind = NumberKind::from(a.kind);
    let order = effective_order(a.n, a.order);
    let table = numbers(kind, &fam, order)?.truncated(a.n);
    let text = match a.format {
        TableFormat::Csv => {
            let mut s = String::from("n,value\n");
            for (n, e) in table.entries().iter().enumerate() {
                s.push_str(&format!("{n},{}\n", e.render()));
            }
            s
        }
        TableFormat::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
        TableFormat::Latex => table.to_latex(),
    };
    write_output(&a.out, &text)
}

fn cmd_polys(a: PolysArgs) -> Result<(), CliError> {
    let fam = load_family(&a.base.family)?;
    let kind = NumberKind::from(a.base.kind);
    let mode = match a.mode {
        ModeArg::Univariate => PolyMode::Univariate,
        ModeArg::Bivariate => PolyMode::Bivariate,
    };
    let order = effective_order(a.base.n, a.base.order);
    let mut list = polys(kind, &fam, order, mode)?;
    list.truncate(a.base.n as usize + 1);
    let text = match a.base.format {
        TableFormat::Csv => {
            let mut s = String::from("n,value\n");
            for (n, p) in list.iter().enumerate() {
                s.push_str(&format!("{n},{}\n", p.render()));
            }
            s
        }
        TableFormat::Json => poly_json(kind, fam.name(), mode, &list),
        TableFormat::Latex => poly_latex(kind, mode, &list),
    };
    write_output(&a.base.out, &text)
}

fn poly_kind_name(kind: NumberKind) -> &'static str {
    match kind {
        NumberKind::Bernoulli => "bernoulli_poly",
        NumberKind::Euler => "euler_poly",
        NumberKind::Genocchi => "genocchi_poly",
    }
}

fn poly_json(kind: NumberKind, family: &str, mode: PolyMode, list: &[QPoly]) -> String {
    let vars = match mode {
        PolyMode::Univariate => "[\"x\"]",
        PolyMode::Bivariate => "[\"x\",\"y\"]",
    };
    let mut s = String::from("{\"schema\":1,\"kind\":");
    s.push_str(&json_string(poly_kind_name(kind)));
    s.push_str(",\"family\":");
    s.push_str(&json_string(family));
    s.push_str(",\"vars\":");
    s.push_str(vars);
    s.push_str(",\"entries\":{");
    for (n, p) in list.iter().enumerate() {
        if n > 0 {
            s.push(',');
        }
        s.push_str(&format!("\"{n}\":"));
        s.push_str(&json_string(&p.render()));
    }
    s.push_str("}}\n");
    s
}

fn poly_latex(kind: NumberKind, mode: PolyMode, list: &[QPoly]) -> String {
    let sym = kind.latex_symbol();
    let args = match mode {
        PolyMode::Univariate => "(x)",
        PolyMode::Bivariate => "(x,y)",
    };
    let mut out = String::from("\\begin{tabular}{rl}\n");
    out.push_str(&format!("$n$ & ${sym}_n{args}$ \\\\\n\\hline\n"));
    for (n, p) in list.iter().enumerate() {
        out.push_str(&format!("${n}$ & ${}$ \\\\\n", p.latex()));
    }
    out.push_str("\\end{tabular}\n");
    out
}

const SUITES: [&str; 7] = [
    "symmetry",
    "inverse",
    "addition",
    "odd-vanishing",
    "derivative",
    "classical-limit",
    "gauss-binomial",
];

/// Expand the requested suite tokens into the canonical ordered list.
fn resolve_suites(tokens: &[String]) -> Result<Vec<&'static str>, CliError> {
    let mut selected = Vec::new();
    for token in tokens {
        let token = token.trim();
        if token == "all" {
            for s in SUITES {
                if !selected.contains(&s) {
                    selected.push(s);
                }
            }
            continue;
        }
        match SUITES.iter().find(|s| **s == token) {
            Some(s) => {
                if !selected.contains(s) {
                    selected.push(s);
                }
            }
            None => {
                return Err(CliError::Input(format!(
                    "unknown suite {token:?}; expected one of {}, or all",
                    SUITES.join(", ")
                )))
            }
        }
    }
    Ok(selected)
}

fn run_suite(name: &str, fam: &AlphaFamily, n: u32) -> Result<Vec<Report>, CliError> {
    Ok(match name {
        "symmetry" => vec![symmetry_check(fam, n)?],
        "inverse" => vec![inverse_condition_check(fam, n)?],
        "addition" => vec![addition_theorem_check(fam, n)?],
        "odd-vanishing" => vec![odd_vanishing_check(fam, n)?],
        "derivative" => vec![poly_derivative_identity_check(fam, n)?],
        "classical-limit" => vec![classical_limit_check(fam, n)?],
        "gauss-binomial" => {
            // Family-independent; probed at three representative values.
            let two_q_sq = &QRat::from_int(2) * &QRat::q_pow(2);
            vec![
                gauss_binomial_identity_check(&QRat::from_int(-1), n),
                gauss_binomial_identity_check(&QRat::q(), n),
                gauss_binomial_identity_check(&two_q_sq, n),
            ]
        }
        other => unreachable!("unvalidated suite {other}"),
    })
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let fam = load_family(&a.family)?;
    let suites = resolve_suites(&a.suite)?;
    if suites.is_empty() {
        return Err(CliError::Input("no suites selected".to_string()));
    }
    let mut reports = Vec::new();
    for name in &suites {
        reports.extend(run_suite(name, &fam, a.n)?);
    }
    let violation = reports
        .iter()
        .any(|r| r.class == CheckClass::Identity && !r.all_passed());
    let findings = reports
        .iter()
        .any(|r| r.class == CheckClass::Property && !r.all_passed());
    let text = match a.format {
        ReportFormat::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.render_text());
                s.push('\n');
            }
            s.push_str(if violation {
                "verify: FAIL\n"
            } else if findings {
                "verify: PASS (property findings above are informational)\n"
            } else {
                "verify: PASS\n"
            });
            s
        }
        ReportFormat::Json => {
            let mut s = String::from("{\"schema\":1,\"family\":");
            s.push_str(&json_string(fam.name()));
            s.push_str(&format!(",\"n\":{}", a.n));
            s.push_str(",\"verdict\":");
            s.push_str(if violation { "\"fail\"" } else { "\"pass\"" });
            s.push_str(",\"reports\":[");
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&r.to_json());
            }
            s.push_str("]}\n");
            s
        }
    };
    write_output(&a.out, &text)?;
    if violation {
        return Err(CliError::Violation);
    }
    Ok(())
}

/// Parse `k=value` odd-entry assignments; `k` must be an odd index and the
/// value an exact rational function in `q` (or `v`).
fn parse_odd_list(items: &[String]) -> Result<BTreeMap<u32, QRat>, CliError> {
    let mut map = BTreeMap::new();
    for item in items {
        let item = item.trim();
        let Some((idx, value)) = item.split_once('=') else {
            return Err(CliError::Input(format!(
                "odd entry {item:?} is not of the form k=value"
            )));
        };
        let k: u32 = idx.trim().parse().map_err(|_| {
            CliError::Input(format!("odd entry index {:?} is not an integer", idx.trim()))
        })?;
        if k % 2 == 0 {
            return Err(CliError::Input(format!("index {k} in --odd is even")));
        }
        let parsed = qunify::parse::parse_qrat(value.trim())?;
        if map.insert(k, parsed).is_some() {
            return Err(CliError::Input(format!("index {k} given twice in --odd")));
        }
    }
    Ok(map)
}

fn cmd_solve_alpha(a: SolveAlphaArgs) -> Result<(), CliError> {
    let mut odd = match &a.odd {
        Some(items) => parse_odd_list(items)?,
        None => BTreeMap::new(),
    };
    // The solver wants every odd index below n; unspecified ones are 1,
    // which also covers --ones.
    for k in (1..a.n).step_by(2) {
        odd.entry(k).or_insert_with(QRat::one);
    }
    let fam = solve_alpha_system(&odd, a.n)?;
    let json = {
        let mut s = fam.to_json(a.n)?;
        s.push('\n');
        s
    };
    let mut summary = String::new();
    for k in 0..=a.n {
        summary.push_str(&format!("alpha_{k} = {}\n", fam.alpha(k)?.render()));
    }
    match &a.out {
        Some(path) => {
            std::fs::write(path, &json)
                .map_err(|e| CliError::Io(format!("writing {}", path.display()), e))?;
            print!("{summary}");
        }
        None => {
            print!("{json}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

/// Render a finite radius as the simplest rational within one part in 10⁶,
/// which recovers closed forms like 4/3 from deep ratio tails.
fn display_radius(limit_inverse: &Rational) -> String {
    let one = rat(1, 1);
    let eps = rat(1, 1_000_000);
    let lo = limit_inverse * &(&one - &eps);
    let hi = limit_inverse * &(&one + &eps);
    simplest_in_interval(&lo, &hi).to_string()
}

fn cmd_radius(a: RadiusArgs) -> Result<(), CliError> {
    let fam = load_family(&a.family)?;
    let q0 = parse_rational(&a.q)?;
    let v0 = sqrt_exact(&q0).ok_or_else(|| {
        CliError::Input(format!(
            "q = {q0} has no exact rational square root; pick a probe like 1/4 or 9/16"
        ))
    })?;
    let estimate = radius_estimate(&fam, &v0, a.n)?;
    let answer = match &estimate {
        RadiusEstimate::Finite { limit_inverse, .. } => display_radius(limit_inverse),
        RadiusEstimate::Infinite => "infinity".to_string(),
        RadiusEstimate::Unresolved { .. } => "unresolved".to_string(),
    };
    let text = if a.json {
        let mut s = String::from("{\"schema\":1,\"family\":");
        s.push_str(&json_string(fam.name()));
        s.push_str(",\"q\":");
        s.push_str(&json_string(&q0.to_string()));
        s.push_str(&format!(",\"n\":{}", a.n));
        s.push_str(",\"radius\":");
        s.push_str(&json_string(&answer));
        if let RadiusEstimate::Unresolved { tail } = &estimate {
            s.push_str(",\"tail\":[");
            for (i, t) in tail.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&format!("{t}"));
            }
            s.push(']');
        }
        s.push_str("}\n");
        s
    } else {
        format!("{answer}\n")
    };
    write_output(&a.out, &text)
}
