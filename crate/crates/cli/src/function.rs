use std::f64::consts::PI;

use faber_walsh::map::TwoIntervalSet;
use faber_walsh::quadrature::{PolygonContour, QuadratureOptions};
use faber_walsh::{Complex64, ComplexPolynomial};

use crate::config::CliError;

/// Half-width of the strip around each interval that must be free of poles.
pub const POLE_MARGIN: f64 = 1e-6;

/// Functions the `series` subcommand can expand.
#[derive(Clone, Debug)]
pub enum TargetFunction {
    InvZ,
    /// `p(z) / q(z)`, coefficients by ascending powers.
    Rational {
        num: ComplexPolynomial,
        den: ComplexPolynomial,
    },
}

impl TargetFunction {
    pub fn rational(num: &[f64], den: &[f64]) -> Result<Self, CliError> {
        let den = ComplexPolynomial::from_real(den);
        if den.is_zero() {
            return Err(CliError::Config("denominator polynomial is zero".into()));
        }
        Ok(Self::Rational {
            num: ComplexPolynomial::from_real(num),
            den,
        })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Self::InvZ => z.inv(),
            Self::Rational { num, den } => num.eval(z) / den.eval(z),
        }
    }

    /// Fails when a pole lies within [`POLE_MARGIN`] of `E`.
    ///
    /// Zeros of the denominator are counted by the argument principle on thin
    /// rectangles around both intervals.
    pub fn check_analytic_on(&self, set: &TwoIntervalSet) -> Result<(), CliError> {
        let Self::Rational { den, .. } = self else {
            return Ok(());
        };
        if den.degree() == Some(0) {
            return Ok(());
        }
        let dq = den.derivative();
        let opts = QuadratureOptions::with_tol(1e-8);
        let (lo, hi) = (set.alpha() - POLE_MARGIN, set.beta() + POLE_MARGIN);
        for (x0, x1) in [(lo, hi), (-hi, -lo)] {
            let rect = PolygonContour::rectangle(
                Complex64::new(x0, -POLE_MARGIN),
                Complex64::new(x1, POLE_MARGIN),
            )
            .map_err(CliError::from)?;
            let singular = |why: String| CliError::SingularFunction(format!("[{x0}, {x1}]: {why}"));
            let count = rect
                .integrate(|z| dq.eval(z) / den.eval(z), &opts)
                .map_err(|e| singular(format!("cannot certify the absence of poles ({e})")))?
                / Complex64::new(0.0, 2.0 * PI);
            if count.re.round() != 0.0 {
                return Err(singular(format!("{} pole(s) of the rational function", count.re.round())));
            }
        }
        Ok(())
    }
}
