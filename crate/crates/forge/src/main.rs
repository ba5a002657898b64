use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use constraint_forge::parse::parse_expr;
use constraint_forge::report::{exit_code, to_json, to_markdown, CheckReport};
use constraint_forge::suite::{run_suite, Group, Mutation, SuiteConfig, DEFAULT_GRID, DEFAULT_SEED, DEFAULT_TRIALS};
use constraint_forge_core::bft::{iterate_field, BftConfig, DEFAULT_ORDER};
use constraint_forge_core::brackets::{poisson_scalar, ConstraintSet};
use constraint_forge_core::operator::{apply_to_harmonic, build_weyl_product};
use constraint_forge_core::spectrum::{spectrum_table, CMode, SpectrumRow};
use constraint_forge_core::{PhaseExpr, ScalarExpr, VectorExpr};
use num_rational::BigRational;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "constraint-forge", version, about = "Exact checks for a free particle on a sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Field {
    Q,
    Pi,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum, default_value = "all")]
        group: Group,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run with a deliberately broken input.
        #[arg(long, value_enum)]
        mutate: Option<Mutation>,
    },
    /// Poisson (or Dirac) bracket of two scalar expressions.
    Bracket {
        a: String,
        b: String,
        #[arg(long)]
        dirac: bool,
    },
    /// Order-by-order BFT series of q~ or pi~.
    BftSeries {
        #[arg(long, value_enum)]
        field: Field,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Normal form of the Weyl-ordered momentum square.
    Weyl {
        /// `symbolic` or a rational value.
        #[arg(long, default_value = "symbolic")]
        c: String,
    },
    /// Energy table in dimension d.
    Spectrum {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        lmax: u32,
        /// `fixed` or a rational value.
        #[arg(long, default_value = "fixed")]
        c: String,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Run the full suite and write the report.
    Report {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// `writeln!` into a `String`, which cannot fail.
macro_rules! line {
    ($buf:expr, $($arg:tt)*) => {{
        let _ = writeln!($buf, $($arg)*);
    }};
}

fn rational(s: &str) -> Result<BigRational, String> {
    s.parse::<BigRational>().map_err(|e| format!("bad rational {s:?}: {e}"))
}

fn render(reports: &[CheckReport], format: Format, seed: u64) -> String {
    match format {
        Format::Json => to_json(reports),
        Format::Md => to_markdown(reports, seed),
    }
}

fn emit(buf: &mut String, text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            line!(buf, "{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct RowOut {
    l: u32,
    dirac: String,
    bft: String,
    gap: Option<String>,
}

impl From<&SpectrumRow> for RowOut {
    fn from(r: &SpectrumRow) -> Self {
        Self {
            l: r.l,
            dirac: r.dirac.to_string(),
            bft: r.bft.to_string(),
            gap: r.gap.as_ref().map(|g| g.to_string()),
        }
    }
}

fn run(cli: Cli, buf: &mut String) -> Result<u8, String> {
    match cli.command {
        Command::Verify { group, trials, grid, seed, order, format, out, mutate } => {
            let cfg = SuiteConfig { group, trials, grid, seed, order, mutation: mutate };
            let reports = run_suite(&cfg);
            emit(buf, &render(&reports, format, seed), out.as_ref())?;
            Ok(exit_code(&reports) as u8)
        }
        Command::Report { format, out, seed } => {
            let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
            let reports = run_suite(&cfg);
            emit(buf, &render(&reports, format, seed), Some(&out))?;
            Ok(exit_code(&reports) as u8)
        }
        Command::Bracket { a, b, dirac } => {
            let a = parse_expr(&a).map_err(|e| format!("first expression: {e}"))?;
            let b = parse_expr(&b).map_err(|e| format!("second expression: {e}"))?;
            let r = if dirac {
                let r = ConstraintSet::sphere()
                    .dirac(&PhaseExpr::from(a), &PhaseExpr::from(b))
                    .map_err(|e| e.to_string())?;
                r.to_string()
            } else {
                poisson_scalar(&a, &b).to_string()
            };
            line!(buf, "{r}");
            Ok(0)
        }
        Command::BftSeries { field, order } => {
            let seed = match field {
                Field::Q => VectorExpr::coord(),
                Field::Pi => VectorExpr::momentum(),
            };
            let series = iterate_field(&seed, &BftConfig::new(order)).map_err(|e| e.to_string())?;
            for (n, t) in series.terms().iter().enumerate() {
                if !t.q.is_zero() {
                    line!(buf, "q[{n}] = {}", t.q);
                }
                if !t.pi.is_zero() {
                    line!(buf, "pi[{n}] = {}", t.pi);
                }
            }
            Ok(0)
        }
        Command::Weyl { c } => {
            let c = match c.as_str() {
                "symbolic" => ScalarExpr::c(),
                v => ScalarExpr::constant(rational(v)?.into()),
            };
            let op = build_weyl_product(&c).map_err(|e| e.to_string())?;
            line!(buf, "Pi_i Pi_i = {op}");
            line!(buf, "on degree-l harmonics: {}", apply_to_harmonic(&op).map_err(|e| e.to_string())?);
            Ok(0)
        }
        Command::Spectrum { d, lmax, c, format } => {
            let mode = match c.as_str() {
                "fixed" => CMode::Fixed,
                v => CMode::Value(rational(v)?),
            };
            let rows = spectrum_table(d, lmax, &mode).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    let rows: Vec<RowOut> = rows.iter().map(RowOut::from).collect();
                    line!(buf, "{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
                }
                Format::Md => {
                    line!(buf, "| l | E_dirac | E_bft | gap |\n|---|---|---|---|");
                    for r in rows.iter().map(RowOut::from) {
                        line!(buf, "| {} | {} | {} | {} |", r.l, r.dirac, r.bft, r.gap.unwrap_or_default());
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CF_LOG", "warn")).init();
    let mut buf = String::new();
    let result = run(Cli::parse(), &mut buf);
    if let Err(e) = std::io::stdout().lock().write_all(buf.as_bytes()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
