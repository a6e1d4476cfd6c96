//! Exterior conformal map for two symmetric real intervals.
//!
//! For `E = [-beta, -alpha] ∪ [alpha, beta]` put `a = (beta + alpha) / 2` and
//! `mu = sqrt((beta - alpha) / 2 * (beta + alpha) / 2)`. Then
//!
//! ```text
//! psi(w) = w * sqrt(1 + (mu^4 / a^2) / (w^2 - a^2))
//! ```
//!
//! maps the lemniscatic domain `|U(w)| = |w - a|^(1/2) |w + a|^(1/2) > mu`
//! conformally onto the complement of `E`, fixing infinity with `psi'(inf) = 1`.
//! `mu` is the logarithmic capacity of `E` and `±a` are the foci.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Points closer than this to `E`, its endpoints or the foci are rejected.
pub const ENDPOINT_TOL: f64 = 1e-14;

/// A point of the extended complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extended {
    Finite(Complex64),
    Infinity,
}

/// `E = [-beta, -alpha] ∪ [alpha, beta]` with `0 < alpha < beta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoIntervalSet {
    alpha: f64,
    beta: f64,
    a: f64,
    mu: f64,
}

impl TwoIntervalSet {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidSet("endpoints must be finite"));
        }
        if !(0.0 < alpha && alpha < beta) {
            return Err(Error::InvalidSet("need 0 < alpha < beta"));
        }
        let a = 0.5 * (beta + alpha);
        let mu = (0.5 * (beta - alpha) * a).sqrt();
        Ok(Self { alpha, beta, a, mu })
    }

    /// Builds the set from its focus `a` and capacity `mu`, `0 < mu < a`.
    pub fn from_focus_capacity(a: f64, mu: f64) -> Result<Self> {
        if !(a.is_finite() && mu.is_finite()) {
            return Err(Error::InvalidSet("focus and capacity must be finite"));
        }
        if !(0.0 < mu && mu < a) {
            return Err(Error::InvalidSet("need 0 < mu < a"));
        }
        let half_width = mu * mu / a;
        Ok(Self {
            alpha: a - half_width,
            beta: a + half_width,
            a,
            mu,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The focus `a`; the foci of the lemniscatic domain are `±a`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Logarithmic capacity.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `sqrt(beta^2 - alpha^2) / 2`, the textbook capacity formula.
    pub fn capacity_from_endpoints(&self) -> f64 {
        (self.beta * self.beta - self.alpha * self.alpha).sqrt() / 2.0
    }

    /// Distance from `z` to `E`.
    pub fn distance(&self, z: Complex64) -> f64 {
        let x = z.re.abs();
        let dx = if x < self.alpha {
            self.alpha - x
        } else if x > self.beta {
            x - self.beta
        } else {
            0.0
        };
        dx.hypot(z.im)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.distance(z) <= ENDPOINT_TOL
    }

    /// `|U(w)| = |w - a|^(1/2) |w + a|^(1/2)`.
    pub fn lemniscate_u(&self, w: Complex64) -> f64 {
        ((w - self.a).norm() * (w + self.a).norm()).sqrt()
    }

    pub fn laurent_map(&self, terms: usize) -> LaurentMap {
        LaurentMap::new(*self, terms)
    }

    /// Samples of the level curve `Λ_σ = { w : |U(w)| = σ mu }`, one closed
    /// counterclockwise point list per component.
    ///
    /// `Λ_σ` is the Cassini oval `|w^2 - a^2| = (σ mu)^2`, sampled as
    /// `w = ±sqrt(a^2 + (σ mu)^2 e^{iθ})`. For `σ mu < a` there are two ovals
    /// (around `a` and `-a`) with `samples` points each; otherwise a single
    /// curve with `2 * samples` points.
    pub fn level_curve(&self, sigma: f64, samples: usize) -> Result<Vec<Vec<Complex64>>> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument("level must be positive"));
        }
        if samples < 3 {
            return Err(Error::InvalidArgument("need at least 3 samples per component"));
        }
        let a2 = self.a * self.a;
        let radius = (sigma * self.mu).powi(2);
        let point = |theta: f64| Complex64::new(a2, 0.0) + Complex64::from_polar(radius, theta);

        if radius < a2 {
            let right: Vec<Complex64> = (0..samples)
                .map(|j| point(2.0 * PI * j as f64 / samples as f64).sqrt())
                .collect();
            let left = right.iter().map(|&w| -w).collect();
            Ok(vec![right, left])
        } else {
            // s(θ) winds once around the origin per 2π, so follow a continuous
            // argument over [0, 4π) to trace the whole curve.
            let total = 2 * samples;
            let mut pts = Vec::with_capacity(total);
            let mut prev_arg = 0.0;
            for j in 0..total {
                let s = point(4.0 * PI * j as f64 / total as f64);
                let mut arg = s.arg();
                while arg - prev_arg > PI {
                    arg -= 2.0 * PI;
                }
                while arg - prev_arg < -PI {
                    arg += 2.0 * PI;
                }
                prev_arg = arg;
                pts.push(Complex64::from_polar(s.norm().sqrt(), 0.5 * arg));
            }
            Ok(vec![pts])
        }
    }
}

/// The exterior map of a [`TwoIntervalSet`] together with the leading terms of
/// its Laurent series at infinity,
/// `psi(w) = w + sum_{n>=1} d_n a^{2n} w^{1-2n} = w + c_0 + sum_{k>=1} c_k w^{-k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentMap {
    set: TwoIntervalSet,
    d: Vec<f64>,
    c: Vec<f64>,
}

impl LaurentMap {
    /// Computes `d_0..=d_terms` by
    /// `d_n = q/2 - (1/2) sum_{k=1}^{n-1} d_k d_{n-k}`, `q = mu^4 / a^4`, and
    /// the induced `c_0..=c_{2 terms - 1}`.
    pub fn new(set: TwoIntervalSet, terms: usize) -> Self {
        let terms = terms.max(1);
        let q = (set.mu / set.a).powi(4);
        let mut d = vec![0.0; terms + 1];
        d[0] = 1.0;
        for n in 1..=terms {
            let conv: f64 = (1..n).map(|k| d[k] * d[n - k]).sum();
            d[n] = 0.5 * q - 0.5 * conv;
        }
        let a2 = set.a * set.a;
        let mut c = vec![0.0; 2 * terms];
        let mut a_pow = 1.0;
        for k in 1..=terms {
            a_pow *= a2;
            c[2 * k - 1] = d[k] * a_pow;
        }
        Self { set, d, c }
    }

    pub fn set(&self) -> &TwoIntervalSet {
        &self.set
    }

    /// Number of `d_n` beyond `d_0`.
    pub fn terms(&self) -> usize {
        self.d.len() - 1
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// `c_0, c_1, ...`; entries with even index are zero for this family.
    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn laurent_coefficients(&self) -> Vec<Complex64> {
        self.c.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    fn stretch(&self) -> f64 {
        (self.set.mu * self.set.mu / self.set.a).powi(2)
    }

    /// Closed-form `psi` without the domain check. The formula extends
    /// continuously to the lemniscate `|U(w)| = mu` itself.
    pub fn psi_unchecked(&self, w: Complex64) -> Complex64 {
        let t = w * w - self.set.a * self.set.a;
        w * (1.0 + self.stretch() / t).sqrt()
    }

    /// `psi(w)`; `w` must satisfy `|U(w)| > mu`.
    pub fn psi(&self, w: Complex64) -> Result<Complex64> {
        if !(self.set.lemniscate_u(w) > self.set.mu) {
            return Err(Error::OutsideLemniscaticDomain(w));
        }
        Ok(self.psi_unchecked(w))
    }

    pub fn psi_extended(&self, w: Extended) -> Result<Extended> {
        match w {
            Extended::Infinity => Ok(Extended::Infinity),
            Extended::Finite(w) => self.psi(w).map(Extended::Finite),
        }
    }

    /// `psi'(w) = g - K w^2 / (g (w^2 - a^2)^2)` with `g = sqrt(1 + K/(w^2 - a^2))`,
    /// `K = mu^4 / a^2`.
    pub fn psi_derivative(&self, w: Complex64) -> Complex64 {
        let k = self.stretch();
        let t = w * w - self.set.a * self.set.a;
        let g = (1.0 + k / t).sqrt();
        g - k * w * w / (g * t * t)
    }

    /// The Laurent series truncated after `d_terms`. Converges for `|w| > a`.
    pub fn psi_series(&self, w: Complex64) -> Complex64 {
        let x = self.set.a * self.set.a / (w * w);
        let tail = self
            .d
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &dn| acc * x + dn);
        w * tail
    }

    /// Inverse map `w = phi(z)` with `|U(w)| > mu`; `z` must not lie on `E`.
    ///
    /// With `t = w^2 - a^2` the equation `psi(w) = z` becomes
    /// `t^2 + (a^2 + K - z^2) t + mu^4 = 0`. The roots multiply to `mu^4`, so
    /// exactly one has `|t| > mu^2`, i.e. corresponds to a point outside the
    /// lemniscate. Of the two square roots of `a^2 + t` the one with
    /// `psi(w) = z` (rather than `-z`) is kept, and the result is polished by
    /// Newton steps on `psi(w) - z`.
    pub fn phi(&self, z: Complex64) -> Result<Complex64> {
        if self.set.contains(z) {
            return Err(Error::OnSet(z));
        }
        let a2 = self.set.a * self.set.a;
        let k = self.stretch();
        let mu4 = self.set.mu.powi(4);

        let b = a2 + k - z * z;
        let mut sd = (b * b - 4.0 * mu4).sqrt();
        if (b.conj() * sd).re < 0.0 {
            sd = -sd;
        }
        let t = -(b + sd) * 0.5;
        let g = (1.0 + k / t).sqrt();
        let mut w = (t + a2).sqrt();
        if (w * g - z).norm() > (-w * g - z).norm() {
            w = -w;
        }

        let mut residual = (self.psi_unchecked(w) - z).norm();
        for _ in 0..4 {
            if residual == 0.0 {
                break;
            }
            let step = (self.psi_unchecked(w) - z) / self.psi_derivative(w);
            let candidate = w - step;
            let r = (self.psi_unchecked(candidate) - z).norm();
            if !(r < residual) {
                break;
            }
            w = candidate;
            residual = r;
        }
        Ok(w)
    }

    pub fn phi_extended(&self, z: Extended) -> Result<Extended> {
        match z {
            Extended::Infinity => Ok(Extended::Infinity),
            Extended::Finite(z) => self.phi(z).map(Extended::Finite),
        }
    }

    /// Green's function of the complement of `E` with pole at infinity,
    /// `log |U(phi(z))| - log mu`.
    pub fn green(&self, z: Complex64) -> Result<f64> {
        let w = self.phi(z)?;
        Ok((self.set.lemniscate_u(w) / self.set.mu).ln())
    }

    /// Asymptotic convergence factor `R_{z0}(E) = mu / |U(phi(z0))|`.
    pub fn convergence_factor(&self, z0: Complex64) -> Result<f64> {
        let w = self.phi(z0)?;
        Ok(self.set.mu / self.set.lemniscate_u(w))
    }

    pub fn convergence_factor_extended(&self, z0: Extended) -> Result<f64> {
        match z0 {
            Extended::Infinity => Ok(0.0),
            Extended::Finite(z) => self.convergence_factor(z),
        }
    }

    /// The image of `E` under `T(z) = scale * z + shift`.
    pub fn mobius_image(&self, scale: Complex64, shift: Complex64) -> Result<MobiusImage> {
        if scale.is_zero() || !scale.is_finite() || !shift.is_finite() {
            return Err(Error::DegenerateMobius);
        }
        Ok(MobiusImage {
            map: self.clone(),
            scale,
            shift,
        })
    }
}

/// `T(E)` for `T(z) = A z + B`, with exterior map `T ∘ psi ∘ T^{-1}` onto
/// `|w - T(a)|^(1/2) |w - T(-a)|^(1/2) > |A| mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusImage {
    map: LaurentMap,
    scale: Complex64,
    shift: Complex64,
}

impl MobiusImage {
    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn shift(&self) -> Complex64 {
        self.shift
    }

    pub fn transform(&self, z: Complex64) -> Complex64 {
        self.scale * z + self.shift
    }

    pub fn inverse_transform(&self, z: Complex64) -> Complex64 {
        (z - self.shift) / self.scale
    }

    /// `[T(a), T(-a)]`
    pub fn foci(&self) -> [Complex64; 2] {
        let a = Complex64::new(self.map.set.a, 0.0);
        [self.transform(a), self.transform(-a)]
    }

    pub fn capacity(&self) -> f64 {
        self.scale.norm() * self.map.set.mu
    }

    pub fn lemniscate_u(&self, w: Complex64) -> f64 {
        let [p, m] = self.foci();
        ((w - p).norm() * (w - m).norm()).sqrt()
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.map.set.contains(self.inverse_transform(z))
    }

    pub fn psi(&self, w: Complex64) -> Result<Complex64> {
        if !(self.lemniscate_u(w) > self.capacity()) {
            return Err(Error::OutsideLemniscaticDomain(w));
        }
        Ok(self.transform(self.map.psi_unchecked(self.inverse_transform(w))))
    }

    pub fn phi(&self, z: Complex64) -> Result<Complex64> {
        if self.contains(z) {
            return Err(Error::OnSet(z));
        }
        Ok(self.transform(self.map.phi(self.inverse_transform(z))?))
    }

    /// Laurent coefficients `c_0..=c_max` of the transplanted map at infinity.
    ///
    /// `A psi((w - B)/A) + B = w + sum_k c_k A^{k+1} (w - B)^{-k}`, re-expanded in
    /// powers of `1/w` with `(w - B)^{-k} = sum_m C(k+m-1, m) B^m w^{-k-m}`.
    pub fn laurent_coefficients(&self, max_index: usize) -> Vec<Complex64> {
        let needed_terms = max_index / 2 + 1;
        let base = if self.map.terms() >= needed_terms {
            self.map.clone()
        } else {
            LaurentMap::new(self.map.set, needed_terms)
        };
        let c = base.c();
        let mut out = vec![Complex64::zero(); max_index + 1];
        // binom[j-1][j-k] built row by row (Pascal's triangle).
        let mut row: Vec<f64> = vec![1.0];
        for (j, slot) in out.iter_mut().enumerate().skip(1) {
            if j > 1 {
                let mut next = vec![1.0; j];
                for i in 1..j - 1 {
                    next[i] = row[i - 1] + row[i];
                }
                row = next;
            }
            // row[m] = C(j-1, m)
            let mut acc = Complex64::zero();
            for k in 1..=j {
                let ck = c.get(k).copied().unwrap_or(0.0);
                if ck == 0.0 {
                    continue;
                }
                let m = j - k;
                acc += self.scale.powu(k as u32 + 1) * ck * row[m] * self.shift.powu(m as u32);
            }
            *slot = acc;
        }
        out
    }
}
