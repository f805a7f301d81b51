use std::io::Read;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use gdtel_cli::bench::{bench, rows_json, rows_text, BenchSpec};
use gdtel_cli::problem::{parse_denominator, parse_problem, CliError, Mode};
use gdtel_cli::run::{check_regular, check_regular_text, reduced_form, telescope, Options};

/// Minimal telescopers of rational integrands by Griffiths–Dwork reduction.
#[derive(Parser)]
#[command(name = "gdtel", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    telescope: ProblemArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a telescoper (the default).
    Telescope(ProblemArgs),
    /// Print the reduced form of the integrand.
    Reduce(ProblemArgs),
    /// Report whether the denominator is smooth, with quotient dimensions.
    /// Accepts an integrand or the denominator polynomial itself.
    CheckRegular(ProblemArgs),
    /// Random dense instances a/f^ell with timings.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Refuse to look for operators beyond this order.
    #[arg(long)]
    max_order: Option<usize>,
    /// Give up after this many seconds.
    #[arg(long)]
    timeout_seconds: Option<f64>,
    /// Row limit for Macaulay matrices.
    #[arg(long, default_value_t = gdtel_core::macaulay::DEFAULT_MAX_ROWS)]
    max_rows: usize,
    /// Check the result exactly.
    #[arg(long)]
    verify: bool,
    /// Seed for randomized subcommands.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Integrand; read from standard input when absent or "-".
    expr: Option<String>,
    /// Comma-separated identifiers; the first is the parameter.
    #[arg(long, default_value = "t,x")]
    vars: String,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Print the certificate (regular pipeline only).
    #[arg(long)]
    certificate: bool,
    /// Use the deformation pipeline even for a smooth denominator.
    #[arg(long)]
    force_singular: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct BenchArgs {
    /// Projective dimension: the forms have n + 1 variables.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    d: u32,
    #[arg(long, default_value_t = 2)]
    ell: u32,
    /// Degree in the parameter of every coefficient.
    #[arg(long, default_value_t = 1)]
    delta: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[command(flatten)]
    common: Common,
}

fn options(c: &Common, certificate: bool, force_singular: bool) -> Result<Options, CliError> {
    let timeout = match c.timeout_seconds {
        Some(s) if !(s.is_finite() && s > 0.0) => return Err(CliError::Usage("--timeout-seconds must be positive".into())),
        s => s.map(Duration::from_secs_f64),
    };
    Ok(Options { certificate, verify: c.verify, max_order: c.max_order, timeout, max_rows: c.max_rows, force_singular })
}

fn input_text(expr: &Option<String>) -> Result<String, CliError> {
    match expr.as_deref() {
        Some(e) if e != "-" => Ok(e.to_string()),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("reading standard input: {e}")))?;
            Ok(s.trim().to_string())
        }
    }
}

fn emit(json: bool, v: serde_json::Value, text: String) {
    if json {
        println!("{v}");
    } else {
        print!("{text}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let command = cli.command.unwrap_or(Command::Telescope(cli.telescope));
    match command {
        Command::Telescope(a) => {
            let opts = options(&a.common, a.certificate, a.force_singular)?;
            let p = parse_problem(&a.vars, a.mode, &input_text(&a.expr)?, opts.max_rows)?;
            let report = telescope(&p, &opts)?;
            emit(a.common.json, report.json(), report.text());
            if report.verified == Some(false) {
                return Err(CliError::Unverified);
            }
        }
        Command::Reduce(a) => {
            let opts = options(&a.common, false, false)?;
            let p = parse_problem(&a.vars, a.mode, &input_text(&a.expr)?, opts.max_rows)?;
            let lines = reduced_form(&p, &opts)?;
            let text = lines.iter().map(|l| format!("{l}\n")).collect();
            emit(a.common.json, serde_json::json!({ "reduced": lines }), text);
        }
        Command::CheckRegular(a) => {
            let opts = options(&a.common, false, false)?;
            let p = parse_denominator(&a.vars, a.mode, &input_text(&a.expr)?, opts.max_rows)?;
            let v = check_regular(&p, &opts)?;
            let text = check_regular_text(&v);
            emit(a.common.json, v, text);
        }
        Command::Bench(b) => {
            let opts = options(&b.common, false, false)?;
            let spec = BenchSpec { n: b.n, d: b.d, ell: b.ell, delta: b.delta, seed: b.common.seed, count: b.count };
            let rows = bench(&spec, &opts)?;
            emit(b.common.json, rows_json(&spec, &rows), rows_text(&spec, &rows));
            if rows.iter().any(|r| r.verified == Some(false)) {
                return Err(CliError::Unverified);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
