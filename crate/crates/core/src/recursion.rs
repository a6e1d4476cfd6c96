//! Faber-Walsh polynomials from the triangular `β`-scheme.
//!
//! Writing `psi(τ) = τ + c_0 + sum_{k>=1} c_k τ^{-k}`, the polynomials
//! `β_k^{(n)}(z)` obey
//!
//! ```text
//! β_0^{(0)} = (z - c_0) - α_1
//! β_k^{(0)} = -c_k - k c_k + (k-1) c_{k-1} α_1                    (k >= 1)
//! β_0^{(n)} = (z - c_0) b_n + β_1^{(n-1)} - α_{n+1} β_0^{(n-1)}
//! β_k^{(n)} =      -c_k b_n + β_{k+1}^{(n-1)} - α_{n+1} β_k^{(n-1)}  (k >= 1)
//! ```
//!
//! with `b_0 = 1` and `b_{n+1} = β_0^{(n)}`. Producing `b_N` needs the
//! entries with `n + k <= N - 1`, a triangle of `N (N + 1) / 2` polynomials.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::map::LaurentMap;
use crate::poly::ComplexPolynomial;

/// Degree beyond which double precision coefficients are known to degrade.
pub const DEFAULT_DEGREE_CAP: usize = 40;

/// The interpolation nodes `α_1, α_2, ...`, each one a focus of the
/// lemniscatic domain.
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaSequence {
    /// `(a, -a, a, -a, ...)`
    PlusFirst(f64),
    /// `(-a, a, -a, a, ...)`
    MinusFirst(f64),
    /// A single focus repeated: classical Faber polynomials.
    Constant(Complex64),
    /// `α_j = foci[pattern[(j - 1) % pattern.len()]]`.
    Explicit {
        foci: Vec<Complex64>,
        pattern: Vec<usize>,
    },
}

impl AlphaSequence {
    pub fn plus_first(a: f64) -> Self {
        Self::PlusFirst(a)
    }

    pub fn minus_first(a: f64) -> Self {
        Self::MinusFirst(a)
    }

    pub fn explicit(foci: Vec<Complex64>, pattern: Vec<usize>) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::InvalidArgument("focus pattern is empty"));
        }
        if pattern.iter().any(|&i| i >= foci.len()) {
            return Err(Error::InvalidArgument("focus index out of range"));
        }
        Ok(Self::Explicit { foci, pattern })
    }

    /// `α_j` for `j >= 1`.
    pub fn alpha(&self, j: usize) -> Complex64 {
        assert!(j >= 1, "alpha sequence is 1-based");
        match self {
            Self::PlusFirst(a) => Complex64::new(if j % 2 == 1 { *a } else { -*a }, 0.0),
            Self::MinusFirst(a) => Complex64::new(if j % 2 == 1 { -*a } else { *a }, 0.0),
            Self::Constant(c) => *c,
            Self::Explicit { foci, pattern } => foci[pattern[(j - 1) % pattern.len()]],
        }
    }

    pub fn foci(&self) -> Vec<Complex64> {
        match self {
            Self::PlusFirst(a) | Self::MinusFirst(a) => {
                vec![Complex64::new(*a, 0.0), Complex64::new(-*a, 0.0)]
            }
            Self::Constant(c) => vec![*c],
            Self::Explicit { foci, .. } => foci.clone(),
        }
    }

    /// `u_n(w) = prod_{j=1}^n (w - α_j)`.
    pub fn u_poly(&self, n: usize) -> ComplexPolynomial {
        (1..=n).fold(ComplexPolynomial::one(), |p, j| p.mul_linear(self.alpha(j)))
    }

    /// `u_n(w)` evaluated directly as a product.
    pub fn u_value(&self, n: usize, w: Complex64) -> Complex64 {
        (1..=n).map(|j| w - self.alpha(j)).product()
    }
}

/// The arithmetic the scheme needs from its entries.
trait SchemeEntry: Clone {
    fn constant_like(&self, c: Complex64) -> Self;
    /// `(z - shift) * self`
    fn times_z_minus(&self, shift: Complex64) -> Self;
    /// `self + s * other`
    fn add_scaled(&self, s: Complex64, other: &Self) -> Self;
}

impl SchemeEntry for ComplexPolynomial {
    fn constant_like(&self, c: Complex64) -> Self {
        ComplexPolynomial::constant(c)
    }

    fn times_z_minus(&self, shift: Complex64) -> Self {
        self.mul_linear(shift)
    }

    fn add_scaled(&self, s: Complex64, other: &Self) -> Self {
        ComplexPolynomial::add_scaled(self, s, other)
    }
}

/// An entry evaluated at a fixed point `z`.
#[derive(Clone, Copy, Debug)]
struct PointValue {
    z: Complex64,
    value: Complex64,
}

impl SchemeEntry for PointValue {
    fn constant_like(&self, c: Complex64) -> Self {
        Self { z: self.z, value: c }
    }

    fn times_z_minus(&self, shift: Complex64) -> Self {
        Self {
            z: self.z,
            value: (self.z - shift) * self.value,
        }
    }

    fn add_scaled(&self, s: Complex64, other: &Self) -> Self {
        Self {
            z: self.z,
            value: self.value + s * other.value,
        }
    }
}

fn coeff(c: &[Complex64], k: isize) -> Complex64 {
    if k == -1 {
        Complex64::one()
    } else {
        c[k as usize]
    }
}

/// Row 0: `β_0^{(0)}, ..., β_{len-1}^{(0)}`.
fn base_row<T: SchemeEntry>(one: &T, c: &[Complex64], alpha1: Complex64, len: usize) -> Vec<T> {
    let mut row = Vec::with_capacity(len);
    row.push(one.times_z_minus(c[0]).add_scaled(-alpha1, one));
    for k in 1..len {
        let kf = k as f64;
        let ck = c[k];
        // c_{-1} := 1 keeps the formula uniform; its factor (k - 1) vanishes at k = 1 anyway.
        let value = -ck - kf * ck + (kf - 1.0) * coeff(c, k as isize - 1) * alpha1;
        row.push(one.constant_like(value));
    }
    row
}

/// Row `n` from row `n - 1`; the new row is one entry shorter.
fn next_row<T: SchemeEntry>(prev: &[T], c: &[Complex64], alpha_next: Complex64) -> Vec<T> {
    let b_n = &prev[0];
    let len = prev.len() - 1;
    let mut row = Vec::with_capacity(len);
    if len == 0 {
        return row;
    }
    row.push(
        b_n.times_z_minus(c[0])
            .add_scaled(Complex64::one(), &prev[1])
            .add_scaled(-alpha_next, &prev[0]),
    );
    for k in 1..len {
        row.push(
            prev[k + 1]
                .add_scaled(-c[k], b_n)
                .add_scaled(-alpha_next, &prev[k]),
        );
    }
    row
}

fn check_coefficients(c: &[Complex64], degree: usize) -> Result<()> {
    if degree == 0 {
        return Err(Error::InvalidArgument("target degree must be at least 1"));
    }
    if c.len() < degree {
        return Err(Error::NotEnoughCoefficients {
            needed: degree,
            got: c.len(),
        });
    }
    Ok(())
}

/// The triangle of `β_k^{(n)}` together with `b_0, ..., b_N`.
#[derive(Clone, Debug)]
pub struct BetaScheme {
    c: Vec<Complex64>,
    seq: AlphaSequence,
    rows: Vec<Vec<ComplexPolynomial>>,
    b: Vec<ComplexPolynomial>,
}

impl BetaScheme {
    /// Runs the scheme up to `b_degree`; needs `c_0..c_{degree-1}`.
    pub fn build(c: &[Complex64], seq: &AlphaSequence, degree: usize) -> Result<Self> {
        check_coefficients(c, degree)?;
        let c = c[..degree].to_vec();
        let one = ComplexPolynomial::one();
        let mut rows = Vec::with_capacity(degree);
        rows.push(base_row(&one, &c, seq.alpha(1), degree));
        for n in 1..degree {
            let row = next_row(&rows[n - 1], &c, seq.alpha(n + 1));
            rows.push(row);
        }
        let mut b = Vec::with_capacity(degree + 1);
        b.push(one);
        b.extend(rows.iter().map(|r| r[0].clone()));
        Ok(Self {
            c,
            seq: seq.clone(),
            rows,
            b,
        })
    }

    /// Convenience wrapper taking the coefficients from a [`LaurentMap`],
    /// extending its Laurent series if it is too short.
    pub fn for_map(map: &LaurentMap, seq: &AlphaSequence, degree: usize) -> Result<Self> {
        Self::build(&coefficients_for_degree(map, degree), seq, degree)
    }

    /// Appends `b_{N+1}` using one more Laurent coefficient `c_N`. Every
    /// stored row gains one entry, which is why the rows are kept.
    pub fn extend(&mut self, c_next: Complex64) {
        let degree = self.degree();
        self.c.push(c_next);
        let c = &self.c;
        let one = ComplexPolynomial::one();

        let k = degree;
        let kf = k as f64;
        let alpha1 = self.seq.alpha(1);
        let ck = c[k];
        let base = -ck - kf * ck + (kf - 1.0) * coeff(c, k as isize - 1) * alpha1;
        self.rows[0].push(one.constant_like(base));

        for n in 1..degree {
            let k = degree - n;
            let alpha_next = self.seq.alpha(n + 1);
            let (done, rest) = self.rows.split_at_mut(n);
            let prev = &done[n - 1];
            let b_n = &prev[0];
            let entry = if k == 0 {
                b_n.times_z_minus(c[0])
                    .add_scaled(Complex64::one(), &prev[1])
                    .add_scaled(-alpha_next, &prev[0])
            } else {
                prev[k + 1]
                    .add_scaled(-c[k], b_n)
                    .add_scaled(-alpha_next, &prev[k])
            };
            rest[0].push(entry);
        }
        let last = next_row(&self.rows[degree - 1], c, self.seq.alpha(degree + 1));
        debug_assert_eq!(last.len(), 1);
        self.b.push(last[0].clone());
        self.rows.push(last);
    }

    /// Highest available Faber-Walsh degree `N`.
    pub fn degree(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self, n: usize) -> &ComplexPolynomial {
        &self.b[n]
    }

    /// `b_0, ..., b_N`.
    pub fn polynomials(&self) -> &[ComplexPolynomial] {
        &self.b
    }

    pub fn into_polynomials(self) -> Vec<ComplexPolynomial> {
        self.b
    }

    /// `β_k^{(n)}`, stored for `n + k <= N - 1`.
    pub fn beta(&self, n: usize, k: usize) -> Option<&ComplexPolynomial> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    pub fn rows(&self) -> &[Vec<ComplexPolynomial>] {
        &self.rows
    }

    pub fn sequence(&self) -> &AlphaSequence {
        &self.seq
    }

    /// Largest coefficient magnitude over all stored entries. Rounding in the
    /// coefficients is of order `eps` times this number.
    pub fn condition_estimate(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(ComplexPolynomial::max_abs_coeff)
            .fold(1.0, f64::max)
    }
}

/// `c_0, c_1, ...` of `map`, recomputed with more terms when fewer than
/// `degree` are stored.
pub fn coefficients_for_degree(map: &LaurentMap, degree: usize) -> Vec<Complex64> {
    if map.c().len() >= degree {
        map.laurent_coefficients()
    } else {
        map.set().laurent_map(degree / 2 + 1).laurent_coefficients()
    }
}

/// `b_0(z), ..., b_degree(z)` at a single point, running the same recursion on
/// values instead of coefficient vectors. Only the previous row is kept.
///
/// This avoids the cancellation of evaluating the monomial form of `b_n` on `E`,
/// where `|b_n|` is much smaller than its coefficients.
pub fn eval_pointwise(
    c: &[Complex64],
    seq: &AlphaSequence,
    degree: usize,
    z: Complex64,
) -> Result<Vec<Complex64>> {
    check_coefficients(c, degree)?;
    let one = PointValue {
        z,
        value: Complex64::one(),
    };
    let mut values = Vec::with_capacity(degree + 1);
    values.push(Complex64::one());
    let mut row = base_row(&one, c, seq.alpha(1), degree);
    values.push(row[0].value);
    for n in 1..degree {
        row = next_row(&row, c, seq.alpha(n + 1));
        values.push(row[0].value);
    }
    Ok(values)
}

/// Classical Faber recursion
/// `F_{n+1} = (z - c_0) F_n - sum_{j=1}^n c_j F_{n-j} - n c_n`, `F_0 = 1`.
pub fn faber_recursion(c: &[Complex64], degree: usize) -> Result<Vec<ComplexPolynomial>> {
    check_coefficients(c, degree)?;
    let mut f = Vec::with_capacity(degree + 1);
    f.push(ComplexPolynomial::one());
    for n in 0..degree {
        let mut next = f[n].mul_linear(c[0]);
        for j in 1..=n {
            next = next.add_scaled(-c[j], &f[n - j]);
        }
        if n > 0 {
            next = next.add_scaled(-(n as f64) * c[n], &ComplexPolynomial::one());
        }
        f.push(next);
    }
    Ok(f)
}

/// Faber-Walsh polynomials for the two alternating focus sequences.
#[derive(Clone, Debug)]
pub struct ParityPair {
    pub plus: Vec<ComplexPolynomial>,
    pub minus: Vec<ComplexPolynomial>,
}

impl ParityPair {
    /// Largest coefficient violation of `b⁺_{2n} = b⁻_{2n}` and
    /// `b⁺_{2n+1}(-z) = -b⁻_{2n+1}(z)`.
    pub fn max_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (n, (p, m)) in self.plus.iter().zip(&self.minus).enumerate() {
            let len = p.coeffs().len().max(m.coeffs().len());
            for j in 0..len {
                let d = if n % 2 == 0 {
                    p.coeff(j) - m.coeff(j)
                } else {
                    // b⁺(-z) has coefficient (-1)^j p_j, and must equal -m_j.
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    sign * p.coeff(j) + m.coeff(j)
                };
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    /// Largest odd-power coefficient of the even-degree `b⁺_{2k}`.
    pub fn max_odd_coefficient_of_even_degree(&self) -> f64 {
        self.plus
            .iter()
            .step_by(2)
            .flat_map(|p| p.coeffs().iter().skip(1).step_by(2))
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

/// Both families `b⁺` (from `(a, -a, ...)`) and `b⁻` (from `(-a, a, ...)`) up to degree `degree`.
pub fn fw_parity_pair(map: &LaurentMap, degree: usize) -> Result<ParityPair> {
    let a = map.set().a();
    let plus = BetaScheme::for_map(map, &AlphaSequence::plus_first(a), degree)?;
    let minus = BetaScheme::for_map(map, &AlphaSequence::minus_first(a), degree)?;
    Ok(ParityPair {
        plus: plus.into_polynomials(),
        minus: minus.into_polynomials(),
    })
}

/// Coefficients `c_0..c_{len-1}` from a real slice, padded with zeros.
pub fn complex_coefficients(c: &[f64], len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|k| Complex64::new(c.get(k).copied().unwrap_or(0.0), 0.0))
        .collect()
}
