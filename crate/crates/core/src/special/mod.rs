//! Special functions needed by the expansion: J_ν of real order and its
//! zeros, the radial kernels g_m, Gegenbauer polynomials and log-gamma.
//!
//! Everything here is a pure function of its inputs.

mod bessel;
mod gamma;
mod gegenbauer;
mod radial;
mod zeros;

pub use bessel::{bessel_j, bessel_j_with_derivative, Order};
pub use gamma::{gamma, log_gamma};
pub use gegenbauer::{gegenbauer, gegenbauer_at_one, gegenbauer_ratio};
pub use radial::g_m;
pub use zeros::{bessel_zeros, mcmahon_estimate, ZeroTable};

pub(crate) use bessel::j_unchecked;
pub(crate) use gamma::ln_gamma_pos;
pub(crate) use gegenbauer::homogeneous as gegenbauer_homogeneous;
pub(crate) use radial::radial_kernel;
