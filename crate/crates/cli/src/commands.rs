use faber_walsh::diagnostics::{diagnostics_report, error_curve, DiagnosticsConfig};
use faber_walsh::map::Extended;
use faber_walsh::quadrature::QuadratureOptions;
use faber_walsh::recursion::BetaScheme;
use faber_walsh::{expansion, Complex64, ComplexPolynomial};
use serde::Serialize;

use crate::config::{CliError, Format, RunConfig, Sequence};
use crate::function::TargetFunction;

/// Constant of the reference bound `4.4 (mu/a)^n` on the error curve.
pub const BOUND_CONSTANT: f64 = 4.4;
/// Last degree at which the reference bound is checked.
pub const BOUND_LAST_DEGREE: usize = 33;

/// Shortest decimal that parses back to `x`; exponent form outside `[1e-5, 1e16)`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        "0".to_owned()
    } else if (1e-5..1e16).contains(&x.abs()) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn csv_row(cells: impl IntoIterator<Item = String>) -> String {
    let mut line = cells.into_iter().collect::<Vec<_>>().join(", ");
    line.push('\n');
    line
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Numeric(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct SetEcho {
    alpha: f64,
    beta: f64,
    a: f64,
    mu: f64,
    sequence: &'static str,
}

impl SetEcho {
    fn new(cfg: &RunConfig) -> Self {
        Self {
            alpha: cfg.set.alpha(),
            beta: cfg.set.beta(),
            a: cfg.set.a(),
            mu: cfg.set.mu(),
            sequence: match cfg.sequence {
                Sequence::Plus => "plus",
                Sequence::Minus => "minus",
            },
        }
    }
}

fn quadrature(cfg: &RunConfig) -> QuadratureOptions {
    QuadratureOptions::with_tol(cfg.tol)
}

/// `b_0..=b_n`.
pub fn fw_polynomials(cfg: &RunConfig) -> Result<Vec<ComplexPolynomial>, CliError> {
    let map = cfg.set.laurent_map(cfg.n / 2 + 1);
    let mut b = BetaScheme::for_map(&map, &cfg.alpha_sequence(), cfg.n.max(1))?.into_polynomials();
    b.truncate(cfg.n + 1);
    Ok(b)
}

pub fn cmd_polys(cfg: &RunConfig) -> Result<String, CliError> {
    let b = fw_polynomials(cfg)?;
    let real = |p: &ComplexPolynomial| p.coeffs().iter().map(|c| c.re + 0.0).collect::<Vec<f64>>();
    match cfg.format {
        Format::Csv => {
            let mut out = csv_row(
                std::iter::once("degree".to_owned()).chain((0..=cfg.n).map(|j| format!("c{j}"))),
            );
            for (n, p) in b.iter().enumerate() {
                out += &csv_row(std::iter::once(n.to_string()).chain(real(p).into_iter().map(num)));
            }
            Ok(out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Poly {
                degree: usize,
                coefficients: Vec<f64>,
            }
            #[derive(Serialize)]
            struct Out {
                set: SetEcho,
                polynomials: Vec<Poly>,
            }
            json(&Out {
                set: SetEcho::new(cfg),
                polynomials: b
                    .iter()
                    .enumerate()
                    .map(|(degree, p)| Poly {
                        degree,
                        coefficients: real(p),
                    })
                    .collect(),
            })
        }
    }
}

pub fn cmd_series(cfg: &RunConfig, f: &TargetFunction) -> Result<String, CliError> {
    f.check_analytic_on(&cfg.set)?;
    let map = cfg.set.laurent_map(cfg.n / 2 + 1);
    let series = expansion::truncated_series(
        &map,
        &cfg.alpha_sequence(),
        &|z: Complex64| f.eval(z),
        cfg.n,
        cfg.r,
        &quadrature(cfg),
    )?;
    let roots = series.coefficient_roots();
    let assembled: Vec<Complex64> = (0..=cfg.n).map(|j| series.assembled.coeff(j)).collect();
    match cfg.format {
        Format::Csv => {
            let mut out = csv_row(["k", "re", "im", "abs_root"].map(String::from));
            for (k, ak) in series.a.iter().enumerate() {
                let root = if k == 0 { String::new() } else { num(roots[k - 1]) };
                out += &csv_row([k.to_string(), num(ak.re), num(ak.im), root]);
            }
            out.push('\n');
            out += &csv_row(["power", "re", "im"].map(String::from));
            for (j, c) in assembled.iter().enumerate() {
                out += &csv_row([j.to_string(), num(c.re), num(c.im)]);
            }
            Ok(out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Coefficient {
                k: usize,
                re: f64,
                im: f64,
                abs_root: Option<f64>,
            }
            #[derive(Serialize)]
            struct Out {
                set: SetEcho,
                r: f64,
                coefficients: Vec<Coefficient>,
                assembled: Vec<Complex64>,
            }
            json(&Out {
                set: SetEcho::new(cfg),
                r: cfg.r,
                coefficients: series
                    .a
                    .iter()
                    .enumerate()
                    .map(|(k, ak)| Coefficient {
                        k,
                        re: ak.re,
                        im: ak.im,
                        abs_root: k.checked_sub(1).map(|i| roots[i]),
                    })
                    .collect(),
                assembled,
            })
        }
    }
}

pub fn cmd_error_curve(cfg: &RunConfig) -> Result<String, CliError> {
    let map = cfg.set.laurent_map(cfg.n / 2 + 1);
    let curve = error_curve(
        &map,
        &cfg.alpha_sequence(),
        &|z: Complex64| z.inv(),
        cfg.n,
        cfg.r,
        cfg.mesh,
        &quadrature(cfg),
    )?;
    let rate = cfg.set.mu() / cfg.set.a();
    let rows = curve.errors.iter().enumerate().map(|(n, &error)| {
        let bound = BOUND_CONSTANT * rate.powi(n as i32);
        let pass = (n <= BOUND_LAST_DEGREE).then_some(error <= bound);
        (n, error, bound, pass, curve.roundoff[n])
    });
    match cfg.format {
        Format::Csv => {
            let mut out = csv_row(["n", "error", "bound", "pass", "roundoff"].map(String::from));
            for (n, error, bound, pass, roundoff) in rows {
                let flag = match pass {
                    Some(true) => "pass",
                    Some(false) => "fail",
                    None => "",
                };
                out += &csv_row([n.to_string(), num(error), num(bound), flag.to_owned(), roundoff.to_string()]);
            }
            Ok(out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                n: usize,
                error: f64,
                bound: f64,
                pass: Option<bool>,
                roundoff: bool,
            }
            #[derive(Serialize)]
            struct Out {
                set: SetEcho,
                rows: Vec<Row>,
            }
            json(&Out {
                set: SetEcho::new(cfg),
                rows: rows
                    .map(|(n, error, bound, pass, roundoff)| Row {
                        n,
                        error,
                        bound,
                        pass,
                        roundoff,
                    })
                    .collect(),
            })
        }
    }
}

pub fn cmd_diagnostics(cfg: &RunConfig, z0: Extended) -> Result<String, CliError> {
    if let Extended::Finite(z) = z0 {
        if cfg.set.contains(z) {
            return Err(CliError::BadZ0(format!("{z} lies on E")));
        }
    }
    if cfg.n == 0 {
        return Err(CliError::Config("diagnostics need --n of at least 1".into()));
    }
    let beta = cfg.set.beta();
    let defaults = DiagnosticsConfig::default();
    let dcfg = DiagnosticsConfig {
        n_max: cfg.n,
        r: cfg.r,
        meshwidth: cfg.mesh,
        z0,
        quotient_points: defaults.quotient_points.iter().map(|z| z * beta).collect(),
        quadrature: quadrature(cfg),
        ..defaults
    };
    let map = cfg.set.laurent_map(cfg.n / 2 + 1);
    let report = diagnostics_report(&map, &cfg.alpha_sequence(), &|z: Complex64| z.inv(), &dcfg)?;
    match cfg.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = csv_row(
                ["degree", "error", "roundoff", "quotient_error", "norm_root", "normalised_norm_root"]
                    .map(String::from),
            );
            for (i, &n) in report.degrees.iter().enumerate() {
                out += &csv_row([
                    n.to_string(),
                    num(report.error_curve[i]),
                    report.roundoff[i].to_string(),
                    num(report.quotient_error[i]),
                    num(report.norm_roots[i]),
                    report.normalised_norm_roots[i].map(num).unwrap_or_default(),
                ]);
            }
            Ok(out)
        }
    }
}

/// One-line summary of a diagnostics run for the terminal.
pub fn diagnostics_summary(cfg: &RunConfig, z0: Extended) -> Result<String, CliError> {
    let map = cfg.set.laurent_map(4);
    let factor = map.convergence_factor_extended(z0)?;
    Ok(format!("convergence factor at z0: {}", num(factor)))
}
