use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid set parameters: {0}")]
    InvalidSet(&'static str),

    /// `w` is on or inside the lemniscate `|U(w)| = mu`.
    #[error("point {0} is not in the lemniscatic domain")]
    OutsideLemniscaticDomain(Complex64),

    /// `z` lies on the compact set `E`.
    #[error("point {0} lies on the set E")]
    OnSet(Complex64),

    #[error("Moebius scale factor must be nonzero")]
    DegenerateMobius,

    #[error("need {needed} Laurent coefficients, got {got}")]
    NotEnoughCoefficients { needed: usize, got: usize },

    #[error("invalid contour: {0}")]
    InvalidContour(&'static str),

    #[error("contour geometry: {0}")]
    Geometry(&'static str),

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    QuadratureNonConvergence { tol: f64, estimate: f64 },

    #[error("integrand is not finite at {0}")]
    NonFiniteIntegrand(Complex64),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
