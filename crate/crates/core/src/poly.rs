//! Dense polynomials with `Complex64` coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Polynomial stored by ascending powers: `coeffs[j]` multiplies `z^j`.
///
/// Only exact zeros are trimmed from the top, so tiny coefficients produced by
/// rounding survive and can be inspected.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::one())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `z - c`
    pub fn linear(c: Complex64) -> Self {
        Self::new(vec![-c, Complex64::one()])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^j`, zero above the degree.
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or_else(Complex64::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Drops exactly-zero leading coefficients.
    pub fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_monic(&self, tol: f64) -> bool {
        self.leading().is_some_and(|c| (c - 1.0).norm() <= tol)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// `sum |c_j| r^j`, the magnitude scale against which rounding in
    /// [`eval`](Self::eval) at `|z| <= r` has to be measured.
    pub fn abs_eval(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: Complex64, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j) + s * other.coeff(j)).collect())
    }

    /// Multiplies by `(z - c)`; the degree grows by exactly one unless `self` is zero.
    pub fn mul_linear(&self, c: Complex64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![Complex64::zero(); n + 1];
        for (j, &p) in self.coeffs.iter().enumerate() {
            out[j + 1] += p;
            out[j] -= c * p;
        }
        Self::new(out)
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &p) in self.coeffs.iter().enumerate() {
            for (j, &q) in other.coeffs.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        Self::new(out)
    }

    /// `z -> p(scale * z + shift)`, expanded by Horner's scheme on polynomials.
    pub fn compose_affine(&self, scale: Complex64, shift: Complex64) -> Self {
        let inner = Self::new(vec![shift, scale]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &c| acc.mul(&inner).add_scaled(Complex64::one(), &Self::constant(c)))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }
}

impl Add for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn add(self, rhs: Self) -> ComplexPolynomial {
        self.add_scaled(Complex64::one(), rhs)
    }
}

impl Sub for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn sub(self, rhs: Self) -> ComplexPolynomial {
        self.add_scaled(-Complex64::one(), rhs)
    }
}

impl Mul<Complex64> for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn mul(self, rhs: Complex64) -> ComplexPolynomial {
        self.scale(rhs)
    }
}

impl Neg for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn neg(self) -> ComplexPolynomial {
        self.scale(-Complex64::one())
    }
}

impl fmt::Display for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if j + 1 != self.coeffs.len() {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            match j {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eval_constant() {
        assert_eq!(ComplexPolynomial::one().eval(Complex64::new(7.0, 2.0)), c(1.0));
    }

    #[test]
    fn eval_b2_at_zero() {
        let p = ComplexPolynomial::from_real(&[-17.0 / 16.0, 0.0, 1.0]);
        assert_eq!(p.eval(Complex64::zero()), c(-17.0 / 16.0));
    }

    #[test]
    fn horner_matches_power_sum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let p = ComplexPolynomial::new(
            (0..=10)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        );
        for k in 0..32 {
            let z = Complex64::from_polar(1.0, k as f64 * 0.196);
            let naive: Complex64 = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, &a)| a * z.powu(j as u32))
                .sum();
            let h = p.eval(z);
            assert!((h - naive).norm() <= 1e-13 * naive.norm().max(p.abs_eval(1.0) * 1e-3));
        }
    }

    #[test]
    fn mul_linear_builds_z_minus_a() {
        let p = ComplexPolynomial::one().mul_linear(c(1.0));
        assert_eq!(p, ComplexPolynomial::from_real(&[-1.0, 1.0]));
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn cancellation_gives_zero() {
        let p = ComplexPolynomial::from_real(&[1.0, -2.0, 3.5]);
        let z = p.add_scaled(Complex64::one(), &p.scale(c(-1.0)));
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn u4_from_alternating_foci() {
        let p = [1.0, -1.0, 1.0, -1.0]
            .iter()
            .fold(ComplexPolynomial::one(), |p, &a| p.mul_linear(c(a)));
        assert_eq!(p, ComplexPolynomial::from_real(&[1.0, 0.0, -2.0, 0.0, 1.0]));
    }

    #[test]
    fn monic_checks() {
        assert!(ComplexPolynomial::from_real(&[-1.0, 1.0]).is_monic(1e-12));
        assert!(!ComplexPolynomial::from_real(&[1.0, 0.0, 2.0]).is_monic(1e-12));
        assert!(!ComplexPolynomial::zero().is_monic(1.0));
    }

    #[test]
    fn tiny_coefficients_are_kept() {
        let p = ComplexPolynomial::from_real(&[1.0, 1e-300]);
        assert_eq!(p.degree(), Some(1));
        let q = ComplexPolynomial::from_real(&[1.0, 0.0, 0.0]);
        assert_eq!(q.degree(), Some(0));
    }

    #[test]
    fn affine_composition() {
        // (z - 1)^2 at 2z + 3 is (2z + 2)^2
        let p = ComplexPolynomial::from_real(&[1.0, -2.0, 1.0]);
        let q = p.compose_affine(c(2.0), c(3.0));
        assert_eq!(q, ComplexPolynomial::from_real(&[4.0, 8.0, 4.0]));
    }

    fn poly_strategy() -> impl Strategy<Value = ComplexPolynomial> {
        prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64), 0..12)
            .prop_map(|v| ComplexPolynomial::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()))
    }

    fn z_strategy() -> impl Strategy<Value = Complex64> {
        (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b))
    }

    proptest! {
        #[test]
        fn eval_is_additive(p in poly_strategy(), q in poly_strategy(), z in z_strategy()) {
            let lhs = (&p + &q).eval(z);
            let rhs = p.eval(z) + q.eval(z);
            let scale = p.abs_eval(z.norm()) + q.abs_eval(z.norm()) + 1e-300;
            prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
        }

        #[test]
        fn mul_linear_evaluates_to_product(p in poly_strategy(), cc in z_strategy(), z in z_strategy()) {
            let lhs = p.mul_linear(cc).eval(z);
            let rhs = (z - cc) * p.eval(z);
            let scale = p.abs_eval(z.norm()) * (z.norm() + cc.norm()) + 1e-300;
            prop_assert!((lhs - rhs).norm() <= 64.0 * f64::EPSILON * scale);
            if !p.is_zero() {
                prop_assert_eq!(p.mul_linear(cc).degree(), p.degree().map(|d| d + 1));
            }
        }

        #[test]
        fn trim_is_idempotent(p in poly_strategy(), pad in 0usize..4) {
            let mut raw = p.coeffs().to_vec();
            raw.extend(core::iter::repeat_n(Complex64::zero(), pad));
            let mut once = ComplexPolynomial::new(raw);
            let snapshot = once.clone();
            once.trim();
            prop_assert_eq!(&once, &snapshot);
            prop_assert_eq!(once, p);
        }
    }
}
