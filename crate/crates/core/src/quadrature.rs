//! Adaptive Gauss-Kronrod integration along closed polygons.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights for the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    /// Absolute error target per polygon edge.
    pub abs_tol: f64,
    /// Maximum number of bisections of any piece of an edge.
    pub max_depth: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_depth: 30,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Piece {
    start: Complex64,
    end: Complex64,
    depth: u32,
    value: Complex64,
    error: f64,
    abs_value: f64,
}

fn kronrod<F>(f: &mut F, start: Complex64, end: Complex64, depth: u32) -> Result<Piece>
where
    F: FnMut(Complex64) -> Complex64,
{
    let center = (start + end) * 0.5;
    let half = (end - start) * 0.5;
    let mut eval = |z: Complex64| {
        let v = f(z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand(z))
        }
    };

    let fc = eval(center)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.norm() * WGK[7];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = eval(center - x)?;
        let f2 = eval(center + x)?;
        kron += (f1 + f2) * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let scale = half.norm();
    Ok(Piece {
        start,
        end,
        depth,
        value: kron * half,
        error: ((kron - gauss) * half).norm(),
        abs_value: abs_sum * scale,
    })
}

/// `∫ f(z) dz` along the straight segment from `start` to `end`.
///
/// Globally adaptive: the piece with the largest error estimate is bisected
/// until the summed estimate meets `opts.abs_tol`, or falls below the rounding
/// level `50 eps ∫|f| |dz|`. Fails if a piece would need more than
/// `opts.max_depth` bisections.
pub fn integrate_segment<F>(
    start: Complex64,
    end: Complex64,
    mut f: F,
    opts: &QuadratureOptions,
) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    let mut pieces = vec![kronrod(&mut f, start, end, 0)?];
    loop {
        let total_err: f64 = pieces.iter().map(|p| p.error).sum();
        let total_abs: f64 = pieces.iter().map(|p| p.abs_value).sum();
        let floor = 50.0 * f64::EPSILON * total_abs;
        if total_err <= opts.abs_tol || total_err <= floor {
            // sum in position order so the result does not depend on refinement history
            pieces.sort_by(|a, b| {
                let ta = (a.start - start).norm();
                let tb = (b.start - start).norm();
                ta.total_cmp(&tb)
            });
            return Ok(pieces.iter().map(|p| p.value).sum());
        }
        let (idx, worst) = pieces
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, p)| (i, *p))
            .expect("at least one piece");
        if worst.depth >= opts.max_depth {
            return Err(Error::QuadratureNonConvergence {
                tol: opts.abs_tol,
                estimate: total_err,
            });
        }
        let mid = (worst.start + worst.end) * 0.5;
        pieces[idx] = kronrod(&mut f, worst.start, mid, worst.depth + 1)?;
        pieces.push(kronrod(&mut f, mid, worst.end, worst.depth + 1)?);
    }
}

/// A closed, positively oriented polygon. The last vertex connects back to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonContour {
    vertices: Vec<Complex64>,
}

impl PolygonContour {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidContour("a closed polygon needs at least 3 vertices"));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidContour("vertices must be finite"));
        }
        let n = vertices.len();
        if (0..n).any(|i| vertices[i] == vertices[(i + 1) % n]) {
            return Err(Error::InvalidContour("repeated consecutive vertex"));
        }
        let contour = Self { vertices };
        if !(contour.signed_area() > 0.0) {
            return Err(Error::InvalidContour("polygon must be counterclockwise"));
        }
        Ok(contour)
    }

    /// Like [`new`](Self::new) but also requires winding number one about each anchor.
    pub fn enclosing(vertices: Vec<Complex64>, anchors: &[Complex64]) -> Result<Self> {
        let contour = Self::new(vertices)?;
        for &p in anchors {
            if (contour.winding_number(p) - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidContour("anchor point not enclosed"));
            }
        }
        Ok(contour)
    }

    /// Square with vertices `center + r, center + ir, center - r, center - ir`,
    /// traversed from `center + r`.
    pub fn diamond(center: Complex64, r: f64) -> Result<Self> {
        Self::regular(center, r, 4)
    }

    /// Regular polygon with `sides` vertices on the circle `|z - center| = r`,
    /// starting at `center + r`.
    pub fn regular(center: Complex64, r: f64, sides: usize) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::InvalidContour("radius must be positive"));
        }
        let vertices = (0..sides)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / sides as f64;
                // exact axis points for the square
                let (s, c) = match (sides, j) {
                    (4, 0) => (0.0, 1.0),
                    (4, 1) => (1.0, 0.0),
                    (4, 2) => (0.0, -1.0),
                    (4, 3) => (-1.0, 0.0),
                    _ => theta.sin_cos(),
                };
                center + Complex64::new(r * c, r * s)
            })
            .collect();
        Self::enclosing(vertices, &[center])
    }

    /// Axis-parallel rectangle with the given opposite corners.
    pub fn rectangle(lower_left: Complex64, upper_right: Complex64) -> Result<Self> {
        Self::new(vec![
            lower_left,
            Complex64::new(upper_right.re, lower_left.im),
            upper_right,
            Complex64::new(lower_left.re, upper_right.im),
        ])
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn length(&self) -> f64 {
        self.edges().map(|(p, q)| (q - p).norm()).sum()
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * self
            .edges()
            .map(|(p, q)| p.re * q.im - q.re * p.im)
            .sum::<f64>()
    }

    /// Winding number about `p`, from the summed turning angles of the edges
    /// as seen from `p` (the exact value of `Im ∮ dz/(z-p) / 2π`).
    pub fn winding_number(&self, p: Complex64) -> f64 {
        self.edges()
            .map(|(u, v)| ((v - p) / (u - p)).arg())
            .sum::<f64>()
            / (2.0 * PI)
    }

    /// Smallest distance from `p` to the polygon.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        self.edges()
            .map(|(u, v)| {
                let d = v - u;
                let t = (((p - u) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
                (u + d * t - p).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `n` points per edge, edge start included, end excluded.
    pub fn sample(&self, per_edge: usize) -> Vec<Complex64> {
        let per_edge = per_edge.max(1);
        self.edges()
            .flat_map(|(u, v)| (0..per_edge).map(move |j| u + (v - u) * (j as f64 / per_edge as f64)))
            .collect()
    }

    /// `∮ f(z) dz`, edge by edge in vertex order.
    pub fn integrate<F>(&self, mut f: F, opts: &QuadratureOptions) -> Result<Complex64>
    where
        F: FnMut(Complex64) -> Complex64,
    {
        let mut total = Complex64::zero();
        for (u, v) in self.edges() {
            total += integrate_segment(u, v, &mut f, opts)?;
        }
        Ok(total)
    }
}

/// `∮ f(z) dz` over the polygon with absolute tolerance `tol` per edge.
pub fn integrate<F>(path: &PolygonContour, f: F, tol: f64) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    path.integrate(f, &QuadratureOptions::with_tol(tol))
}

/// Sum of the integrals over several closed polygons.
pub fn integrate_all<F>(paths: &[PolygonContour], mut f: F, opts: &QuadratureOptions) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    let mut total = Complex64::zero();
    for path in paths {
        total += path.integrate(&mut f, opts)?;
    }
    Ok(total)
}
