#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Faber-Walsh polynomials for compact sets made of several components.
//!
//! The crate is built around the one family of disconnected sets for which the
//! exterior conformal map is known in closed form: two real intervals
//! `E = [-beta, -alpha] ∪ [alpha, beta]` (and their images under `z -> A z + B`).
//! For such sets it provides
//!
//! * the exterior map `psi` onto the lemniscatic domain `|U(w)| > mu`, its inverse
//!   `phi`, the Laurent coefficients of `psi` at infinity and the level curves
//!   of the Green's function ([`map`]);
//! * the triangular recursion producing the Faber-Walsh polynomials `b_n` from
//!   the Laurent coefficients and a sequence of foci ([`recursion`]);
//! * adaptive Gauss-Kronrod quadrature along polygonal contours and the
//!   coefficient integrals of Faber-Walsh series ([`quadrature`], [`expansion`]);
//! * sup-norm measurements on `E` and checks of the asymptotic behaviour of the
//!   polynomials ([`diagnostics`]).
//!
//! Everything here is pure computation on `f64`/`Complex64`; file formats and the
//! command-line front end live in the `faber-walsh-cli` crate.
//!
//! ```
//! use faber_walsh::{map::TwoIntervalSet, recursion::{AlphaSequence, BetaScheme}};
//!
//! let set = TwoIntervalSet::new(0.75, 1.25).unwrap();
//! let map = set.laurent_map(8);
//! let scheme = BetaScheme::for_map(&map, &AlphaSequence::plus_first(set.a()), 2).unwrap();
//! // b_2(z) = z^2 - 17/16 for a = 1, mu = 1/2
//! assert_eq!(scheme.b(2).coeffs()[0].re, -17.0 / 16.0);
//! ```

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod diagnostics;
pub mod error;
pub mod expansion;
pub mod map;
pub mod poly;
pub mod quadrature;
pub mod recursion;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use poly::ComplexPolynomial;
