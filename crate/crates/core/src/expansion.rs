//! Faber-Walsh series coefficients computed by contour integrals in the `w`-plane.
//!
//! The level curves of the lemniscatic domain are replaced by polygons: for
//! the series coefficients the squares `P±` with vertices `±a + r, ±a + ir,
//! ±a - r, ±a - ir`. Any polygon works as long as the integrand stays analytic
//! between it and the level curve it replaces.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::map::{LaurentMap, TwoIntervalSet};
use crate::poly::ComplexPolynomial;
use crate::quadrature::{integrate_all, PolygonContour, QuadratureOptions};
use crate::recursion::{AlphaSequence, BetaScheme};

/// Radius of the squares used for the series coefficients when none is given.
pub const DEFAULT_RADIUS: f64 = 0.7;

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// The two squares `P+` (around `a`) and `P-` (around `-a`) of radius `r`.
///
/// `r` must leave `0` outside both squares and keep them clear of the
/// lemniscate `|U(w)| = mu`, where `psi` stops being analytic.
pub fn focus_squares(map: &LaurentMap, r: f64) -> Result<[PolygonContour; 2]> {
    let set = map.set();
    let a = set.a();
    if !(r > 0.0) || r >= a {
        return Err(Error::Geometry("need 0 < r < a so that 0 lies outside both squares"));
    }
    let plus = PolygonContour::diamond(Complex64::new(a, 0.0), r)?;
    let minus = PolygonContour::diamond(Complex64::new(-a, 0.0), r)?;
    ensure_outside_lemniscate(set, &plus)?;
    ensure_outside_lemniscate(set, &minus)?;
    Ok([plus, minus])
}

fn ensure_outside_lemniscate(set: &TwoIntervalSet, path: &PolygonContour) -> Result<()> {
    if path.sample(64).iter().any(|&w| !(set.lemniscate_u(w) > set.mu())) {
        return Err(Error::Geometry("contour meets the lemniscate |U(w)| = mu"));
    }
    Ok(())
}

/// `a_k = (1/2πi) ∮ f(psi(τ)) / u_{k+1}(τ) dτ` over the given contours.
pub fn fw_coefficient_on<F>(
    map: &LaurentMap,
    seq: &AlphaSequence,
    f: &F,
    k: usize,
    contours: &[PolygonContour],
    opts: &QuadratureOptions,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    let integral = integrate_all(
        contours,
        |tau| f(map.psi_unchecked(tau)) / seq.u_value(k + 1, tau),
        opts,
    )?;
    Ok(integral / TWO_PI_I)
}

/// The Faber-Walsh coefficient `a_k` of `f`, integrating over the squares of radius `r`.
pub fn fw_coefficient_a<F>(
    map: &LaurentMap,
    seq: &AlphaSequence,
    f: &F,
    k: usize,
    r: f64,
    opts: &QuadratureOptions,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    let squares = focus_squares(map, r)?;
    fw_coefficient_on(map, seq, f, k, &squares, opts)
}

/// `a_0, ..., a_n` over the given contours.
pub fn fw_coefficients_on<F>(
    map: &LaurentMap,
    seq: &AlphaSequence,
    f: &F,
    n: usize,
    contours: &[PolygonContour],
    opts: &QuadratureOptions,
) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    (0..=n)
        .map(|k| fw_coefficient_on(map, seq, f, k, contours, opts))
        .collect()
}

/// `α_{nk} = (1/2πi) ∮ u_{k-1}(τ) G_n(τ) dτ` with `G_n(τ) = b_n(psi(τ)) - u_n(τ)`,
/// the coefficients of `b_n(psi(t)) = u_n(t) + sum_{k>=1} α_{nk} / u_k(t)`.
///
/// `b` holds `b_0, b_1, ...`; `path` must enclose both foci and stay in `|U| > mu`.
pub fn fw_coefficient_alpha_nk(
    map: &LaurentMap,
    seq: &AlphaSequence,
    b: &[ComplexPolynomial],
    n: usize,
    k: usize,
    path: &[PolygonContour],
    opts: &QuadratureOptions,
) -> Result<Complex64> {
    if k == 0 {
        return Ok(Complex64::zero());
    }
    let bn = b
        .get(n)
        .ok_or(Error::InvalidArgument("Faber-Walsh polynomial of requested degree not supplied"))?;
    let integral = integrate_all(
        path,
        |tau| {
            let g = bn.eval(map.psi_unchecked(tau)) - seq.u_value(n, tau);
            seq.u_value(k - 1, tau) * g
        },
        opts,
    )?;
    Ok(integral / TWO_PI_I)
}

/// Polygon through the level curve `|U(w)| = σ mu` with `samples` vertices per
/// half; for `σ mu > a` a single curve around both foci and the origin.
pub fn level_polygons(set: &TwoIntervalSet, sigma: f64, samples: usize) -> Result<Vec<PolygonContour>> {
    set.level_curve(sigma, samples)?
        .into_iter()
        .map(PolygonContour::new)
        .collect()
}

/// `b_n(0)` for the sequence `(a, -a, a, ...)` in closed form:
/// `(-1)^k (a^{2k} + (mu^2/a)^{2k})` for `n = 2k` and
/// `(-1)^{k-1} a (a^{2k} + (mu^2/a)^{2k})` for `n = 2k + 1`, `k >= 1`.
pub fn closed_form_b_n_at_zero(set: &TwoIntervalSet, n: usize) -> Option<f64> {
    if n < 2 {
        return None;
    }
    let a = set.a();
    let k = (n / 2) as i32;
    let base = a.powi(2 * k) + (set.mu() * set.mu() / a).powi(2 * k);
    let sign = |e: i32| if e % 2 == 0 { 1.0 } else { -1.0 };
    Some(if n.is_multiple_of(2) {
        sign(k) * base
    } else {
        sign(k - 1) * a * base
    })
}

/// `b_n(0)` by quadrature next to its closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CentralValue {
    pub n: usize,
    pub quadrature: Complex64,
    pub closed_form: f64,
}

impl CentralValue {
    pub fn relative_error(&self) -> f64 {
        (self.quadrature - self.closed_form).norm() / self.closed_form.abs()
    }
}

/// `b_n(0) = (1/2πi) ∮ u_n(τ) psi'(τ) / psi(τ) dτ` for the sequence
/// `(a, -a, ...)`, integrated over a polygon through the level curve
/// `|U| = 1.1 a`, which encloses the origin.
pub fn residue_b_n_at_zero(map: &LaurentMap, n: usize, opts: &QuadratureOptions) -> Result<CentralValue> {
    let set = map.set();
    let closed_form = closed_form_b_n_at_zero(set, n)
        .ok_or(Error::InvalidArgument("closed form needs n >= 2"))?;
    let seq = AlphaSequence::plus_first(set.a());
    let sigma = 1.1 * set.a() / set.mu();
    let path = level_polygons(set, sigma, 128)?;
    let integral = integrate_all(
        &path,
        |tau| seq.u_value(n, tau) * map.psi_derivative(tau) / map.psi_unchecked(tau),
        opts,
    )?;
    Ok(CentralValue {
        n,
        quadrature: integral / TWO_PI_I,
        closed_form,
    })
}

/// A truncated Faber-Walsh series `s_n = sum_{k<=n} a_k b_k`.
#[derive(Clone, Debug)]
pub struct SeriesApproximation {
    pub n: usize,
    pub a: Vec<Complex64>,
    pub b: Vec<ComplexPolynomial>,
    pub assembled: ComplexPolynomial,
}

impl SeriesApproximation {
    pub fn new(a: Vec<Complex64>, b: Vec<ComplexPolynomial>) -> Result<Self> {
        if a.is_empty() || a.len() > b.len() {
            return Err(Error::InvalidArgument("need one polynomial per coefficient"));
        }
        let n = a.len() - 1;
        let assembled = a
            .iter()
            .zip(&b)
            .fold(ComplexPolynomial::zero(), |acc, (&ak, bk)| acc.add_scaled(ak, bk));
        Ok(Self {
            n,
            b: b[..=n].to_vec(),
            a,
            assembled,
        })
    }

    /// `s_m` for `m <= n`.
    pub fn partial(&self, m: usize) -> ComplexPolynomial {
        self.a[..=m]
            .iter()
            .zip(&self.b)
            .fold(ComplexPolynomial::zero(), |acc, (&ak, bk)| acc.add_scaled(ak, bk))
    }

    /// Evaluates the assembled monomial form.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.assembled.eval(z)
    }

    /// `sum a_k b_k(z)`, evaluating each `b_k` separately.
    pub fn eval_termwise(&self, z: Complex64) -> Complex64 {
        self.a.iter().zip(&self.b).map(|(&ak, bk)| ak * bk.eval(z)).sum()
    }

    /// `|a_k|^{1/k}` for `k >= 1`.
    pub fn coefficient_roots(&self) -> Vec<f64> {
        self.a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, ak)| ak.norm().powf(1.0 / k as f64))
            .collect()
    }
}

/// `s_n` for `f`, with the polynomials from the recursion and the coefficients
/// integrated over the squares of radius `r`.
pub fn truncated_series<F>(
    map: &LaurentMap,
    seq: &AlphaSequence,
    f: &F,
    n: usize,
    r: f64,
    opts: &QuadratureOptions,
) -> Result<SeriesApproximation>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    let squares = focus_squares(map, r)?;
    let a = fw_coefficients_on(map, seq, f, n, &squares, opts)?;
    let b = if n == 0 {
        alloc::vec![ComplexPolynomial::one()]
    } else {
        BetaScheme::for_map(map, seq, n)?.into_polynomials()
    };
    SeriesApproximation::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_map() -> LaurentMap {
        TwoIntervalSet::new(0.75, 1.25).unwrap().laurent_map(24)
    }

    fn opts() -> QuadratureOptions {
        QuadratureOptions::default()
    }

    #[test]
    fn constant_function() {
        let m = paper_map();
        let seq = AlphaSequence::plus_first(1.0);
        let one = |_: Complex64| Complex64::new(1.0, 0.0);
        let a = fw_coefficients_on(&m, &seq, &one, 5, &focus_squares(&m, 0.7).unwrap(), &opts()).unwrap();
        assert!((a[0] - 1.0).norm() < 1e-12);
        for ak in &a[1..] {
            assert!(ak.norm() < 1e-12);
        }
    }

    #[test]
    fn identity_function() {
        let m = paper_map();
        let seq = AlphaSequence::plus_first(1.0);
        let s = truncated_series(&m, &seq, &|z: Complex64| z, 1, 0.7, &opts()).unwrap();
        assert!((s.a[0] - 1.0).norm() < 1e-12);
        assert!((s.a[1] - 1.0).norm() < 1e-12);
        assert!((s.assembled.coeff(1) - 1.0).norm() < 1e-12);
        assert!(s.assembled.coeff(0).norm() < 1e-12);
    }

    #[test]
    fn radius_validation() {
        let m = paper_map();
        assert!(matches!(focus_squares(&m, 1.0), Err(Error::Geometry(_))));
        assert!(matches!(focus_squares(&m, 0.0), Err(Error::Geometry(_))));
        // too small: the square cuts through the lemniscate oval around a
        assert!(matches!(focus_squares(&m, 0.05), Err(Error::Geometry(_))));
        assert!(focus_squares(&m, 0.5).is_ok());
    }

    #[test]
    fn alpha_n0_and_trivial_g0() {
        let m = paper_map();
        let seq = AlphaSequence::plus_first(1.0);
        let b = BetaScheme::for_map(&m, &seq, 4).unwrap().into_polynomials();
        let sq = focus_squares(&m, 0.7).unwrap();
        assert_eq!(fw_coefficient_alpha_nk(&m, &seq, &b, 3, 0, &sq, &opts()).unwrap(), Complex64::zero());
        for k in 1..6 {
            let v = fw_coefficient_alpha_nk(&m, &seq, &b, 0, k, &sq, &opts()).unwrap();
            assert!(v.norm() < 1e-15);
        }
    }

    #[test]
    fn closed_forms() {
        let s = TwoIntervalSet::new(0.75, 1.25).unwrap();
        assert_eq!(closed_form_b_n_at_zero(&s, 2), Some(-17.0 / 16.0));
        assert_eq!(closed_form_b_n_at_zero(&s, 3), Some(17.0 / 16.0));
        assert_eq!(closed_form_b_n_at_zero(&s, 4), Some(257.0 / 256.0));
        assert_eq!(closed_form_b_n_at_zero(&s, 1), None);
    }

    #[test]
    fn central_value_by_residues() {
        let m = paper_map();
        for n in 2..=6 {
            let v = residue_b_n_at_zero(&m, n, &opts()).unwrap();
            assert!(v.relative_error() < 1e-11, "n={n}: {v:?}");
        }
        assert!(residue_b_n_at_zero(&m, 1, &opts()).is_err());
    }
}
