use std::path::PathBuf;

use faber_walsh::map::{Extended, TwoIntervalSet};
use faber_walsh::recursion::AlphaSequence;
use faber_walsh::{Complex64, Error as CoreError};

pub const MAX_DEGREE: usize = 60;
pub const SOFT_DEGREE_CAP: usize = 40;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("function is singular on E: {0}")]
    SingularFunction(String),
    #[error("bad z0: {0}")]
    BadZ0(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::Numeric(_) | Self::Io(_) => 3,
            Self::SingularFunction(_) => 4,
            Self::BadZ0(_) => 5,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidSet(_) | CoreError::Geometry(_) | CoreError::InvalidArgument(_) => {
                Self::Config(e.to_string())
            }
            _ => Self::Numeric(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sequence {
    Plus,
    Minus,
}

/// Validated settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub set: TwoIntervalSet,
    pub sequence: Sequence,
    pub n: usize,
    pub r: f64,
    pub tol: f64,
    pub mesh: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Raw values as they come from the command line.
#[derive(Clone, Debug, Default)]
pub struct RawSet {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub a: Option<f64>,
    pub mu: Option<f64>,
}

impl RawSet {
    /// Exactly one of the pairs `(alpha, beta)`, `(a, mu)`; with neither, the
    /// set `[-5/4, -3/4] ∪ [3/4, 5/4]`.
    pub fn resolve(&self) -> Result<TwoIntervalSet, CliError> {
        let set = match (self.alpha, self.beta, self.a, self.mu) {
            (Some(alpha), Some(beta), None, None) => TwoIntervalSet::new(alpha, beta),
            (None, None, Some(a), Some(mu)) => TwoIntervalSet::from_focus_capacity(a, mu),
            (None, None, None, None) => TwoIntervalSet::new(0.75, 1.25),
            _ => {
                return Err(CliError::Config(
                    "give either both --alpha and --beta or both --a and --mu".into(),
                ))
            }
        };
        Ok(set?)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n > MAX_DEGREE {
            return Err(CliError::Config(format!("--n must be at most {MAX_DEGREE}")));
        }
        if !(self.r > 0.0 && self.r < self.set.a()) {
            return Err(CliError::Config(format!("--r must satisfy 0 < r < a = {}", self.set.a())));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Config("--tol must be positive".into()));
        }
        if !(self.mesh > 0.0 && self.mesh.is_finite()) {
            return Err(CliError::Config("--mesh must be positive".into()));
        }
        Ok(())
    }

    pub fn alpha_sequence(&self) -> AlphaSequence {
        match self.sequence {
            Sequence::Plus => AlphaSequence::plus_first(self.set.a()),
            Sequence::Minus => AlphaSequence::minus_first(self.set.a()),
        }
    }

    pub fn describe_set(&self) -> String {
        let s = &self.set;
        format!("alpha={} beta={} a={} mu={}", s.alpha(), s.beta(), s.a(), s.mu())
    }
}

/// Parses `0`, `-1.5`, `2i`, `-i`, `1+2i`, `3-0.5i`, `inf`.
pub fn parse_z0(text: &str) -> Result<Extended, CliError> {
    let bad = || CliError::BadZ0(format!("cannot parse {text:?} as a complex number"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
        return Ok(Extended::Infinity);
    }
    let Some(body) = t.strip_suffix('i') else {
        return match t.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Extended::Finite(Complex64::new(x, 0.0))),
            _ => Err(bad()),
        };
    };
    // split at the last sign that is not part of an exponent
    let split = body
        .char_indices()
        .filter(|&(i, ch)| (ch == '+' || ch == '-') && i > 0 && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .next_back();
    let imag_part = |s: &str| -> Result<f64, CliError> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            s => s.parse().map_err(|_| bad()),
        }
    };
    let z = match split {
        Some(i) => Complex64::new(body[..i].parse().map_err(|_| bad())?, imag_part(&body[i..])?),
        None => Complex64::new(0.0, imag_part(body)?),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(bad());
    }
    Ok(Extended::Finite(z))
}
