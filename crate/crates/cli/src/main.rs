//! `sumtrans`: solve and verify recurrence initial value problems with the
//! discrete Laplace transform.
//!
//! Exit codes: 0 success, 1 parse or semantic error, 2 solver capability
//! error, 3 verification failure.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sumtrans::numeric::{growth_bound, pair_report, SeriesCheckConfig};
use sumtrans::render::render_closed_form;
use sumtrans::report::SolutionJson;
use sumtrans::sequence::{equal_prefix, FnSequence};
use sumtrans::solver::{solve_ivp_upto, DEFAULT_VERIFY_UPTO};
use sumtrans::table::render_table;
use sumtrans::{
    parse_dsl, verify_solution, DslProgram, Error, QuadExt, RecurrenceSpec, RecursiveSequence,
    SolutionReport, Variable,
};

/// `println!` that ignores write errors, so a closed pipe ends output quietly.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser, Debug)]
#[command(
    name = "sumtrans",
    version,
    about = "Solve linear recurrences with the discrete Laplace transform"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an initial value problem and print its closed form.
    Solve(SolveArgs),
    /// Check the solver's closed form exactly and against the series numerically.
    Verify(VerifyArgs),
    /// Print the table of transform pairs and rules.
    Table(TableArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Program file; reads standard input when omitted or "-".
    file: Option<String>,
    /// Program text given inline.
    #[arg(short = 'e', long = "expr", conflicts_with = "file")]
    expr: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Display {
    /// Rational function of t = e^s.
    T,
    /// Rational function of e^s.
    Exps,
}

impl From<Display> for Variable {
    fn from(d: Display) -> Self {
        match d {
            Display::T => Variable::T,
            Display::Exps => Variable::Exp,
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: Input,
    /// Number of values to print [default: 10].
    #[arg(long)]
    terms: Option<u64>,
    /// Check the closed form against iteration up to this index [default: 64].
    #[arg(long)]
    verify_upto: Option<u64>,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
    /// How to write the transform [default: exps].
    #[arg(long, value_enum)]
    display: Option<Display>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: Input,
    /// Last index of the exact check [default: 64].
    #[arg(long, alias = "verify-upto")]
    upto: Option<u64>,
    /// Comma separated values of s for the series check [default: 1.0,1.5,2.0].
    #[arg(long)]
    s_grid: Option<String>,
    /// Tolerance of the series check [default: 1e-9].
    #[arg(long)]
    tol: Option<f64>,
    /// Expected closed form, compared with the rendered solution.
    #[arg(long)]
    expect: Option<String>,
    /// Expected first values, comma separated exact rationals.
    #[arg(long)]
    expect_values: Option<String>,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// How to write transforms [default: exps].
    #[arg(long, value_enum, default_value = "exps")]
    display: Display,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidSpec(_) => 1,
            Error::VerificationFailed { .. } | Error::CheckFailed { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

const KNOWN_OPTIONS: [&str; 5] = ["terms", "verify_upto", "display", "s_grid", "tol"];

fn read_program(input: &Input) -> Result<DslProgram, Failure> {
    let text = match (&input.expr, input.file.as_deref()) {
        (Some(expr), _) => expr.clone(),
        (None, Some(path)) if path != "-" => fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?,
        (None, _) => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
            text
        }
    };
    let program = parse_dsl(&text).map_err(|e| Failure::usage(e.to_string()))?;
    if let Some(name) = program
        .options
        .keys()
        .find(|k| !KNOWN_OPTIONS.contains(&k.as_str()))
    {
        return Err(Failure::usage(format!(
            "semantic error: unknown option '{name}'"
        )));
    }
    Ok(program)
}

/// Command-line flag, else program option, else default.
fn setting<T: std::str::FromStr>(
    flag: Option<T>,
    program: &DslProgram,
    name: &str,
    default: T,
) -> Result<T, Failure> {
    if let Some(value) = flag {
        return Ok(value);
    }
    match program.option(name) {
        Some(text) => text.parse().map_err(|_| {
            Failure::usage(format!(
                "semantic error: invalid value '{text}' for option '{name}'"
            ))
        }),
        None => Ok(default),
    }
}

fn display_setting(flag: Option<Display>, program: &DslProgram) -> Result<Variable, Failure> {
    if let Some(d) = flag {
        return Ok(d.into());
    }
    match program.option("display") {
        None => Ok(Variable::Exp),
        Some(text) => Display::from_str(text, true)
            .map(Variable::from)
            .map_err(|_| Failure::usage(format!("semantic error: invalid display '{text}'"))),
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .ok()
                .filter(|s| s.is_finite() && *s > 0.0)
                .ok_or_else(|| Failure::usage(format!("invalid s value '{}'", part.trim())))
        })
        .collect()
}

fn solve(spec: &RecurrenceSpec, upto: u64) -> Result<SolutionReport, Failure> {
    Ok(solve_ivp_upto(spec, upto)?)
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_solve(args: &SolveArgs) -> Result<(), Failure> {
    let program = read_program(&args.input)?;
    let terms = setting(args.terms, &program, "terms", 10)?;
    let upto = setting(
        args.verify_upto,
        &program,
        "verify_upto",
        DEFAULT_VERIFY_UPTO,
    )?;
    let var = display_setting(args.display, &program)?;
    let spec = program.to_spec()?;
    let report = solve(&spec, upto)?;

    if args.json {
        let json = serde_json::to_string_pretty(&SolutionJson::new(&report, terms, var))
            .expect("serializable report");
        say!("{json}");
        return Ok(());
    }
    say!("recurrence:  {spec}");
    say!("transform:   {}", report.transform.render(var));
    say!(
        "closed form: a[n] = {}",
        render_closed_form(&report.closed_form)
    );
    if let Some((gamma, beta)) = &report.coefficient_decomposition {
        say!("             a[n] = gamma[n]*a[1] + beta[n]*a[2]");
        say!("             gamma[n] = {}", render_closed_form(gamma));
        say!("             beta[n] = {}", render_closed_form(beta));
    }
    say!(
        "verified:    n <= {} against direct iteration",
        report.verified_upto
    );
    say!("values:      {}", join(&report.values(terms)));
    Ok(())
}

fn parse_values(text: &str) -> Result<Vec<QuadExt>, Failure> {
    text.split(',')
        .map(|part| {
            sumtrans::arith::parse_rational(part.trim())
                .map(QuadExt::from_rational)
                .ok_or_else(|| Failure::usage(format!("invalid rational '{}'", part.trim())))
        })
        .collect()
}

fn strip_spaces(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let program = read_program(&args.input)?;
    let upto = setting(args.upto, &program, "verify_upto", DEFAULT_VERIFY_UPTO)?;
    let tol = setting(
        args.tol,
        &program,
        "tol",
        sumtrans::numeric::DEFAULT_TOLERANCE,
    )?;
    let grid_text = match &args.s_grid {
        Some(text) => text.clone(),
        None => program
            .option("s_grid")
            .unwrap_or("1.0,1.5,2.0")
            .to_string(),
    };
    let grid = parse_grid(&grid_text)?;
    let expected_values = args
        .expect_values
        .as_deref()
        .map(parse_values)
        .transpose()?;
    let spec = program.to_spec()?;
    let report = solve(&spec, upto)?;

    let exact = verify_solution(&spec, &report.closed_form, upto);

    // Series of the directly iterated sequence against the solved transform.
    let (alpha, s0) = growth_bound(&report.closed_form);
    let (usable, skipped): (Vec<f64>, Vec<f64>) = grid.iter().partition(|&&s| s > s0);
    let recursion = RecursiveSequence::new(spec.clone());
    let numeric = if usable.is_empty() {
        None
    } else {
        let cfg = SeriesCheckConfig::new(usable, tol, alpha, s0)?;
        Some(
            pair_report(&recursion, &report.transform, &cfg).map_err(|e| Failure {
                code: 3,
                message: e.to_string(),
            })?,
        )
    };

    let rendered = render_closed_form(&report.closed_form);
    let expect_ok = args
        .expect
        .as_ref()
        .map(|text| strip_spaces(text) == strip_spaces(&rendered));
    let values_mismatch = expected_values.as_ref().map(|values| {
        let expected = FnSequence(|n: u64| values[n as usize - 1].clone());
        equal_prefix(&expected, &report.closed_form, values.len() as u64).first_mismatch
    });

    let numeric_ok = numeric.as_ref().is_some_and(|r| r.passed());
    let passed = exact.passed()
        && numeric_ok
        && expect_ok != Some(false)
        && values_mismatch.flatten().is_none();

    if args.json {
        let value = json!({
            "recurrence": spec.to_string(),
            "closed_form": rendered,
            "exact": exact,
            "numeric": numeric,
            "skipped_s": skipped,
            "growth": {"alpha": alpha, "s0": s0},
            "expect": args.expect.as_ref().map(|text| json!({"expected": text, "passed": expect_ok})),
            "expect_values": values_mismatch.map(|m| json!({"first_mismatch": m, "passed": m.is_none()})),
            "passed": passed,
        });
        say!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        say!("recurrence:  {spec}");
        say!("closed form: a[n] = {rendered}");
        let status = |ok: bool| if ok { "pass" } else { "FAIL" };
        let mut exact_line = format!("exact:       {} (n <= {upto})", status(exact.passed()));
        if let Some(n) = exact.first_failure {
            exact_line.push_str(&format!(", first failure at n = {n}"));
        }
        say!("{exact_line}");
        for s in &skipped {
            say!("numeric:     skipped s = {s} (series diverges for s <= {s0:.4})");
        }
        match &numeric {
            Some(report) => {
                for check in &report.checks {
                    say!(
                        "numeric:     {} at s = {} (N = {}, |difference| = {:.3e}, tail bound = {:.3e})",
                        status(check.passed),
                        check.s,
                        check.terms,
                        check.discrepancy,
                        check.bound
                    );
                }
            }
            None => say!("numeric:     FAIL (no s value above {s0:.4})"),
        }
        if let (Some(text), Some(ok)) = (&args.expect, expect_ok) {
            say!("expect:      {} (expected {text})", status(ok));
        }
        if let Some(mismatch) = values_mismatch {
            match mismatch {
                None => say!("values:      pass"),
                Some(n) => say!("values:      FAIL at n = {n}"),
            }
        }
        say!("{}", if passed { "PASS" } else { "FAIL" });
    }
    if passed {
        Ok(())
    } else {
        Err(Failure {
            code: 3,
            message: String::new(),
        })
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => {
            print!("{}", render_table(args.display.into()));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}
