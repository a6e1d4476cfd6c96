//! `faber-walsh`: Faber-Walsh polynomials, series coefficients and error
//! curves for `E = [-beta, -alpha] ∪ [alpha, beta]`, written as CSV or JSON.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod function;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{parse_z0, CliError, Format, RawSet, RunConfig, Sequence, SOFT_DEGREE_CAP};
use function::TargetFunction;

#[derive(Parser)]
#[command(name = "faber-walsh", version, about = "Faber-Walsh polynomials for two symmetric intervals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of b_0, ..., b_n by ascending powers.
    Polys(Common),
    /// Faber-Walsh coefficients a_0, ..., a_n of a function and the assembled s_n.
    Series(SeriesArgs),
    /// Sup-norm error of s_n for f(z) = 1/z, n = 0, ..., n_max.
    ErrorCurve(Common),
    /// Asymptotic diagnostics of the polynomials and of the 1/z series.
    Diagnostics(DiagnosticsArgs),
}

#[derive(Args)]
struct Common {
    /// Inner endpoint of the right interval.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Outer endpoint of the right interval.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Focus a = (alpha + beta) / 2.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Logarithmic capacity.
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    /// Focus sequence: (a, -a, ...) or (-a, a, ...).
    #[arg(long, value_enum, default_value_t = SeqArg::Plus)]
    seq: SeqArg,
    /// Highest degree (0 to 60; above 40 rounding dominates).
    #[arg(long)]
    n: Option<usize>,
    /// Radius of the integration squares around the foci.
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    r: f64,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-12, allow_negative_numbers = true)]
    tol: f64,
    /// Meshwidth of the grid on E.
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    mesh: f64,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = FunctionArg::InvZ)]
    function: FunctionArg,
    /// Numerator coefficients by ascending powers, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    num: Vec<f64>,
    /// Denominator coefficients by ascending powers, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    den: Vec<f64>,
}

#[derive(Args)]
struct DiagnosticsArgs {
    #[command(flatten)]
    common: Common,
    /// Normalisation point, e.g. 0, 3, 1+2i, -0.5i or inf.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    z0: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionArg {
    #[value(name = "inv_z")]
    InvZ,
    Rational,
}

impl Common {
    fn config(&self, default_n: usize, default_format: Format) -> Result<RunConfig, CliError> {
        let raw = RawSet {
            alpha: self.alpha,
            beta: self.beta,
            a: self.a,
            mu: self.mu,
        };
        let cfg = RunConfig {
            set: raw.resolve()?,
            sequence: match self.seq {
                SeqArg::Plus => Sequence::Plus,
                SeqArg::Minus => Sequence::Minus,
            },
            n: self.n.unwrap_or(default_n),
            r: self.r,
            tol: self.tol,
            mesh: self.mesh,
            format: match self.format {
                Some(FormatArg::Csv) => Format::Csv,
                Some(FormatArg::Json) => Format::Json,
                None => default_format,
            },
            out: self.out.clone(),
        };
        cfg.validate()?;
        eprintln!("set: {}", cfg.describe_set());
        if cfg.n > SOFT_DEGREE_CAP {
            eprintln!("warning: degree {} above {SOFT_DEGREE_CAP}; expect rounding errors to dominate", cfg.n);
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (cfg, text) = match cli.command {
        Command::Polys(c) => {
            let cfg = c.config(5, Format::Csv)?;
            let text = commands::cmd_polys(&cfg)?;
            (cfg, text)
        }
        Command::Series(s) => {
            let cfg = s.common.config(40, Format::Csv)?;
            let f = match s.function {
                FunctionArg::InvZ => TargetFunction::InvZ,
                FunctionArg::Rational => {
                    if s.num.is_empty() || s.den.is_empty() {
                        return Err(CliError::Config("rational functions need --num and --den".into()));
                    }
                    TargetFunction::rational(&s.num, &s.den)?
                }
            };
            let text = commands::cmd_series(&cfg, &f)?;
            (cfg, text)
        }
        Command::ErrorCurve(c) => {
            let cfg = c.config(40, Format::Csv)?;
            let text = commands::cmd_error_curve(&cfg)?;
            (cfg, text)
        }
        Command::Diagnostics(d) => {
            let z0 = parse_z0(&d.z0)?;
            let cfg = d.common.config(40, Format::Json)?;
            let text = commands::cmd_diagnostics(&cfg, z0)?;
            eprintln!("{}", commands::diagnostics_summary(&cfg, z0)?);
            (cfg, text)
        }
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
