//! Simulation of the multiparameter fractional Brownian motion on the unit
//! ball of R^N through its Fourier–Bessel / spherical-harmonic series.
//!
//! The field ξ with covariance ½(‖x‖^{2H} + ‖y‖^{2H} − ‖x − y‖^{2H}) is
//! written as
//!
//! ξ(x) = Σ_m Σ_n Σ_l τ_mn [g_m(j_{|m−1|−H,n} ‖x‖) − δ_m0] S^l_m(x/‖x‖) ξ^l_mn
//!
//! with i.i.d. standard normal ξ^l_mn. The crate is organised bottom-up:
//!
//! * [`special`]: Bessel functions, their zeros, g_m, Gegenbauer polynomials.
//! * [`harmonics`]: real orthonormal spherical harmonics in any dimension.
//! * [`expansion`]: coefficients, truncations, sampling and covariances.
//! * [`validation`]: Monte Carlo checks and the tail-rate regression.
//! * [`io`]: the text formats shared with the command-line tool.

// `!(x > 0.0)` is the NaN-rejecting form used for argument checks;
// reference tables keep all the digits they were computed with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod expansion;
pub mod grid;
pub mod harmonics;
pub mod io;
pub mod rng;
pub mod special;
pub mod sum;
pub mod validation;

pub use error::{Error, Result};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/special-functions.md")]
    mod special_functions {}
    #[doc = include_str!("../../../book/src/harmonics.md")]
    mod harmonics {}
    #[doc = include_str!("../../../book/src/expansion.md")]
    mod expansion {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/validation.md")]
    mod validation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
