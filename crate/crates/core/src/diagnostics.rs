//! Sup norms on `E` and numerical checks of the asymptotics of Faber-Walsh
//! polynomials and series.
//!
//! Values of `b_n` are taken from [`eval_pointwise`], which runs the recursion
//! at the evaluation point. Only [`error_curve`] works with the assembled
//! monomial form of `s_n`, so that its round-off regime for large `n` shows up
//! as it does in a straightforward implementation.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::truncated_series;
use crate::map::{Extended, LaurentMap, TwoIntervalSet};
use crate::quadrature::QuadratureOptions;
use crate::recursion::{coefficients_for_degree, eval_pointwise, AlphaSequence};

pub const DEFAULT_MESHWIDTH: f64 = 0.01;

/// Points `|b_n(z)|` below this are treated as zeros of `b_n` and skipped.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Smallest distance from `E` accepted for quotient test points.
pub const MIN_TEST_DISTANCE: f64 = 0.2;

/// Equispaced points on both intervals with spacing at most `meshwidth`,
/// from `-beta` to `-alpha` and from `alpha` to `beta`, endpoints exact.
pub fn grid_on_set(set: &TwoIntervalSet, meshwidth: f64) -> Result<Vec<f64>> {
    if !(meshwidth > 0.0 && meshwidth.is_finite()) {
        return Err(Error::InvalidArgument("meshwidth must be positive"));
    }
    let (alpha, beta) = (set.alpha(), set.beta());
    let steps = ((beta - alpha) / meshwidth - 1e-9).ceil().max(1.0) as usize;
    let right: Vec<f64> = (0..=steps)
        .map(|k| match k {
            0 => alpha,
            k if k == steps => beta,
            k => alpha + (beta - alpha) * k as f64 / steps as f64,
        })
        .collect();
    let mut grid: Vec<f64> = right.iter().rev().map(|&x| -x).collect();
    grid.extend(right);
    Ok(grid)
}

/// A sup norm on `E` estimated on a grid.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct GridNorm {
    pub meshwidth: f64,
    pub samples: Vec<f64>,
    pub value: f64,
}

/// `max |f(x)|` over [`grid_on_set`].
pub fn sup_norm_on_set<F>(set: &TwoIntervalSet, meshwidth: f64, f: F) -> Result<GridNorm>
where
    F: Fn(Complex64) -> Complex64,
{
    let samples = grid_on_set(set, meshwidth)?;
    let value = samples
        .iter()
        .map(|&x| f(Complex64::new(x, 0.0)).norm())
        .fold(0.0, f64::max);
    Ok(GridNorm {
        meshwidth,
        samples,
        value,
    })
}

/// `‖f - s_n‖_E` for `n = 0..=n_max` with a round-off estimate per degree.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ErrorCurve {
    pub errors: Vec<f64>,
    /// Largest difference on the grid between the monomial form of `s_n` and
    /// `sum a_k b_k` with each `b_k` from [`eval_pointwise`]: the rounding
    /// error carried by the monomial coefficients.
    pub rounding_floor: Vec<f64>,
    /// Set where the rounding floor reaches a tenth of the error.
    pub roundoff: Vec<bool>,
}

impl ErrorCurve {
    /// Degree and value of the smallest error.
    pub fn minimum(&self) -> (usize, f64) {
        self.errors
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |best, (n, e)| if e < best.1 { (n, e) } else { best })
    }

    /// Degrees `n <= n_last` with `errors[n] > constant * rate^n`.
    pub fn bound_violations(&self, constant: f64, rate: f64, n_last: usize) -> Vec<usize> {
        self.errors
            .iter()
            .enumerate()
            .take(n_last + 1)
            .filter(|&(n, &e)| e > constant * rate.powi(n as i32))
            .map(|(n, _)| n)
            .collect()
    }
}

/// Sup-norm error of the truncated Faber-Walsh series of `f` for degrees
/// `0..=n_max`, with the coefficients integrated over squares of radius `r`
/// and `s_n` evaluated in monomial form on [`grid_on_set`].
pub fn error_curve<F>(
    map: &LaurentMap,
    seq: &AlphaSequence,
    f: &F,
    n_max: usize,
    r: f64,
    meshwidth: f64,
    opts: &QuadratureOptions,
) -> Result<ErrorCurve>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    let grid: Vec<Complex64> = grid_on_set(map.set(), meshwidth)?
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();
    let series = truncated_series(map, seq, f, n_max, r, opts)?;
    let targets: Vec<Complex64> = grid.iter().map(|&z| f(z)).collect();
    let c = coefficients_for_degree(map, n_max.max(1));
    let mut stable_sums = Vec::with_capacity(grid.len());
    for &z in &grid {
        let values = eval_pointwise(&c, seq, n_max.max(1), z)?;
        let mut acc = Complex64::new(0.0, 0.0);
        stable_sums.push(
            series
                .a
                .iter()
                .zip(values)
                .map(|(&ak, bk)| {
                    acc += ak * bk;
                    acc
                })
                .collect::<Vec<_>>(),
        );
    }

    let mut errors = Vec::with_capacity(n_max + 1);
    let mut rounding_floor = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let s = series.partial(n);
        let (mut err, mut floor) = (0.0f64, 0.0f64);
        for ((&z, &t), stable) in grid.iter().zip(&targets).zip(&stable_sums) {
            let v = s.eval(z);
            err = err.max((v - t).norm());
            floor = floor.max((v - stable[n]).norm());
        }
        errors.push(err);
        rounding_floor.push(floor);
    }
    let roundoff = errors
        .iter()
        .zip(&rounding_floor)
        .map(|(&e, &fl)| fl >= 0.1 * e)
        .collect();
    Ok(ErrorCurve {
        errors,
        rounding_floor,
        roundoff,
    })
}

/// `‖b_n‖_E` for `n = 0..=n_max`.
pub fn norms_on_set(
    map: &LaurentMap,
    seq: &AlphaSequence,
    n_max: usize,
    meshwidth: f64,
) -> Result<Vec<f64>> {
    let grid = grid_on_set(map.set(), meshwidth)?;
    let c = coefficients_for_degree(map, n_max.max(1));
    let mut norms = alloc::vec![0.0; n_max + 1];
    for &x in &grid {
        let values = eval_pointwise(&c, seq, n_max.max(1), Complex64::new(x, 0.0))?;
        for (nrm, v) in norms.iter_mut().zip(values) {
            *nrm = nrm.max(v.norm());
        }
    }
    Ok(norms)
}

/// `‖b_n‖_E^{1/n}` for `n = 1..=n_max`.
pub fn norm_roots(map: &LaurentMap, seq: &AlphaSequence, n_max: usize, meshwidth: f64) -> Result<Vec<f64>> {
    let norms = norms_on_set(map, seq, n_max, meshwidth)?;
    Ok(norms
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, v)| v.powf(1.0 / n as f64))
        .collect())
}

/// `e_n = max_z |b_{n+1}(z)/b_n(z) + α_{n+1} - Φ(z)|` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct QuotientConvergence {
    pub errors: Vec<f64>,
    /// Number of `(n, z)` pairs left out because `|b_n(z)| < ZERO_THRESHOLD`.
    pub skipped: usize,
}

impl QuotientConvergence {
    /// `exp` of the least-squares slope of `log e_n` over `from..=to`.
    pub fn fitted_rate(&self, from: usize, to: usize) -> Option<f64> {
        let pts: Vec<(f64, f64)> = (from..=to.min(self.errors.len().saturating_sub(1)))
            .filter(|&n| self.errors[n] > 0.0)
            .map(|n| (n as f64, self.errors[n].ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let m = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
        let (mx, my) = (sx / m, sy / m);
        let (num, den) = pts
            .iter()
            .fold((0.0, 0.0), |(n, d), p| (n + (p.0 - mx) * (p.1 - my), d + (p.0 - mx).powi(2)));
        Some((num / den).exp())
    }
}

pub fn quotient_convergence(
    map: &LaurentMap,
    seq: &AlphaSequence,
    n_max: usize,
    test_points: &[Complex64],
) -> Result<QuotientConvergence> {
    let set = map.set();
    if test_points.iter().any(|&z| !(set.distance(z) >= MIN_TEST_DISTANCE)) {
        return Err(Error::InvalidArgument("quotient test points must keep distance 0.2 from E"));
    }
    let c = coefficients_for_degree(map, n_max + 1);
    let mut errors = alloc::vec![0.0; n_max + 1];
    let mut skipped = 0;
    for &z in test_points {
        let phi = map.phi(z)?;
        let values = eval_pointwise(&c, seq, n_max + 1, z)?;
        for n in 0..=n_max {
            if values[n].norm() < ZERO_THRESHOLD {
                skipped += 1;
                continue;
            }
            let e = (values[n + 1] / values[n] + seq.alpha(n + 1) - phi).norm();
            errors[n] = errors[n].max(e);
        }
    }
    Ok(QuotientConvergence { errors, skipped })
}

/// `‖b_n / b_n(z0)‖^{1/n}` on `E` or on a level curve of the Green's function.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct OptimalityCurve {
    pub z0: Complex64,
    /// The limit the values should approach.
    pub limit: f64,
    /// Entry `n - 1` belongs to degree `n`; `None` where `b_n(z0)` vanishes.
    pub values: Vec<Option<f64>>,
}

impl OptimalityCurve {
    pub fn at(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied().flatten())
    }
}

fn normalised_roots(
    c: &[Complex64],
    seq: &AlphaSequence,
    n_max: usize,
    z0: Complex64,
    points: &[Complex64],
) -> Result<Vec<Option<f64>>> {
    let at_z0 = eval_pointwise(c, seq, n_max, z0)?;
    let mut norms = alloc::vec![0.0; n_max + 1];
    for &z in points {
        for (nrm, v) in norms.iter_mut().zip(eval_pointwise(c, seq, n_max, z)?) {
            *nrm = nrm.max(v.norm());
        }
    }
    Ok((1..=n_max)
        .map(|n| {
            let d = at_z0[n].norm();
            (d > ZERO_THRESHOLD * norms[n] && d.is_finite()).then(|| (norms[n] / d).powf(1.0 / n as f64))
        })
        .collect())
}

/// `‖b_n/b_n(z0)‖_E^{1/n}` for `n = 1..=n_max`, tending to the asymptotic
/// convergence factor at `z0`.
pub fn optimality_curve(
    map: &LaurentMap,
    seq: &AlphaSequence,
    z0: Complex64,
    n_max: usize,
    meshwidth: f64,
) -> Result<OptimalityCurve> {
    let set = map.set();
    if set.contains(z0) {
        return Err(Error::OnSet(z0));
    }
    let limit = map.convergence_factor(z0)?;
    let grid: Vec<Complex64> = grid_on_set(set, meshwidth)?
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();
    let c = coefficients_for_degree(map, n_max.max(1));
    Ok(OptimalityCurve {
        z0,
        limit,
        values: normalised_roots(&c, seq, n_max.max(1), z0, &grid)?,
    })
}

/// The same quantity on `Γ_σ = psi(Λ_σ)`, tending to `σ` times the
/// convergence factor at `z0`.
pub fn optimality_on_level_curve(
    map: &LaurentMap,
    seq: &AlphaSequence,
    z0: Complex64,
    sigma: f64,
    n_max: usize,
    samples: usize,
) -> Result<OptimalityCurve> {
    if !(sigma > 1.0) {
        return Err(Error::InvalidArgument("level must exceed 1"));
    }
    let set = map.set();
    if set.contains(z0) {
        return Err(Error::OnSet(z0));
    }
    let limit = sigma * map.convergence_factor(z0)?;
    let points: Vec<Complex64> = set
        .level_curve(sigma, samples)?
        .into_iter()
        .flatten()
        .map(|w| map.psi_unchecked(w))
        .collect();
    let c = coefficients_for_degree(map, n_max.max(1));
    Ok(OptimalityCurve {
        z0,
        limit,
        values: normalised_roots(&c, seq, n_max.max(1), z0, &points)?,
    })
}

/// Range of `|b_n(psi(t))| / |u_n(t)|` over sampled `t` on `Λ_σ`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TwoSidedReport {
    pub sigma: f64,
    /// Per degree `n = 0..=n_max`.
    pub ratio_min: Vec<f64>,
    pub ratio_max: Vec<f64>,
    /// First degree from which the smallest ratio stays at or above the floor.
    pub n0: Option<usize>,
    /// `min ratio_min[n]` over `n >= n0`.
    pub c1: f64,
    /// `max ratio_max[n]` over all `n`.
    pub c2: f64,
    /// Degrees below `n0` whose smallest ratio falls under the floor.
    pub violations: usize,
    pub lower_floor: f64,
}

impl TwoSidedReport {
    fn new(sigma: f64, ratio_min: Vec<f64>, ratio_max: Vec<f64>, lower_floor: f64) -> Self {
        let n0 = ratio_min
            .iter()
            .rposition(|&r| !(r >= lower_floor))
            .map_or(Some(0), |last_bad| (last_bad + 1 < ratio_min.len()).then_some(last_bad + 1));
        let c1 = n0.map_or(0.0, |n0| ratio_min[n0..].iter().copied().fold(f64::INFINITY, f64::min));
        let c2 = ratio_max.iter().copied().fold(0.0, f64::max);
        let violations = ratio_min.iter().filter(|&&r| !(r >= lower_floor)).count();
        Self {
            sigma,
            ratio_min,
            ratio_max,
            n0,
            c1,
            c2,
            violations,
            lower_floor,
        }
    }
}

/// Ratios `|b_n(psi(t))| / |u_n(t)|` for the given points `t`, with an
/// arbitrary exterior map `psi` and its Laurent coefficients `c`.
pub fn two_sided_ratios<P>(
    c: &[Complex64],
    seq: &AlphaSequence,
    psi: P,
    points: &[Complex64],
    n_max: usize,
    lower_floor: f64,
    sigma: f64,
) -> Result<TwoSidedReport>
where
    P: Fn(Complex64) -> Complex64,
{
    let degree = n_max.max(1);
    let mut lo = alloc::vec![f64::INFINITY; n_max + 1];
    let mut hi = alloc::vec![0.0f64; n_max + 1];
    for &t in points {
        let values = eval_pointwise(c, seq, degree, psi(t))?;
        let mut u = Complex64::new(1.0, 0.0);
        for n in 0..=n_max {
            if n > 0 {
                u *= t - seq.alpha(n);
            }
            let ratio = values[n].norm() / u.norm();
            lo[n] = lo[n].min(ratio);
            hi[n] = hi[n].max(ratio);
        }
    }
    Ok(TwoSidedReport::new(sigma, lo, hi, lower_floor))
}

/// Checks `C1 |u_n(t)| < |b_n(psi(t))| < C2 |u_n(t)|` on `Λ_σ`, `σ > 1`,
/// sampled with `samples` points per component.
pub fn two_sided_check(
    map: &LaurentMap,
    seq: &AlphaSequence,
    sigma: f64,
    n_max: usize,
    samples: usize,
    lower_floor: f64,
) -> Result<TwoSidedReport> {
    if !(sigma > 1.0) {
        return Err(Error::InvalidArgument("level must exceed 1"));
    }
    let points: Vec<Complex64> = map.set().level_curve(sigma, samples)?.into_iter().flatten().collect();
    let c = coefficients_for_degree(map, n_max.max(1));
    two_sided_ratios(&c, seq, |t| map.psi_unchecked(t), &points, n_max, lower_floor, sigma)
}

/// Settings for [`diagnostics_report`].
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsConfig {
    pub n_max: usize,
    pub r: f64,
    pub meshwidth: f64,
    pub z0: Extended,
    pub sigma: f64,
    pub level_samples: usize,
    pub lower_floor: f64,
    pub quotient_points: Vec<Complex64>,
    pub quadrature: QuadratureOptions,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self {
            n_max: 40,
            r: crate::expansion::DEFAULT_RADIUS,
            meshwidth: DEFAULT_MESHWIDTH,
            z0: Extended::Finite(Complex64::new(0.0, 0.0)),
            sigma: 2.0,
            level_samples: 256,
            lower_floor: 0.1,
            quotient_points: alloc::vec![
                Complex64::new(0.0, 2.0),
                Complex64::new(0.0, -2.0),
                Complex64::new(2.0, 1.0),
                Complex64::new(-2.0, -1.0),
                Complex64::new(0.0, 0.5),
            ],
            quadrature: QuadratureOptions::default(),
        }
    }
}

/// Fitted constants of the two-sided inequality.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct EmpiricalBounds {
    pub sigma: f64,
    pub c1: f64,
    pub c2: f64,
    pub n0: Option<usize>,
    pub violations: usize,
}

/// Everything measured for one function and one focus sequence. Per-degree
/// lists run over `degrees = 1..=n_max`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DiagnosticsReport {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub mu: f64,
    pub z0: Option<Complex64>,
    pub convergence_factor: f64,
    pub degrees: Vec<usize>,
    pub error_curve: Vec<f64>,
    pub roundoff: Vec<bool>,
    pub quotient_error: Vec<f64>,
    pub quotient_skipped: usize,
    pub norm_roots: Vec<f64>,
    pub normalised_norm_roots: Vec<Option<f64>>,
    pub empirical_bounds: EmpiricalBounds,
}

/// Runs every diagnostic for `f`. With `z0 = ∞` the normalised roots are
/// left out (`b_n(∞)` is not finite) and the convergence factor is `0`.
pub fn diagnostics_report<F>(
    map: &LaurentMap,
    seq: &AlphaSequence,
    f: &F,
    cfg: &DiagnosticsConfig,
) -> Result<DiagnosticsReport>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    if cfg.n_max == 0 {
        return Err(Error::InvalidArgument("need at least degree 1"));
    }
    let set = map.set();
    let n_max = cfg.n_max;
    let convergence_factor = map.convergence_factor_extended(cfg.z0)?;
    let curve = error_curve(map, seq, f, n_max, cfg.r, cfg.meshwidth, &cfg.quadrature)?;
    let quotient = quotient_convergence(map, seq, n_max, &cfg.quotient_points)?;
    let roots = norm_roots(map, seq, n_max, cfg.meshwidth)?;
    let (z0, normalised) = match cfg.z0 {
        Extended::Finite(z0) => (
            Some(z0),
            optimality_curve(map, seq, z0, n_max, cfg.meshwidth)?.values,
        ),
        Extended::Infinity => (None, alloc::vec![None; n_max]),
    };
    let two_sided = two_sided_check(map, seq, cfg.sigma, n_max, cfg.level_samples, cfg.lower_floor)?;
    Ok(DiagnosticsReport {
        alpha: set.alpha(),
        beta: set.beta(),
        a: set.a(),
        mu: set.mu(),
        z0,
        convergence_factor,
        degrees: (1..=n_max).collect(),
        error_curve: curve.errors[1..].to_vec(),
        roundoff: curve.roundoff[1..].to_vec(),
        quotient_error: quotient.errors[1..].to_vec(),
        quotient_skipped: quotient.skipped,
        norm_roots: roots,
        normalised_norm_roots: normalised,
        empirical_bounds: EmpiricalBounds {
            sigma: two_sided.sigma,
            c1: two_sided.c1,
            c2: two_sided.c2,
            n0: two_sided.n0,
            violations: two_sided.violations,
        },
    })
}
