//! The radial kernels g_m(u) = 2^{(N−2)/2} Γ(N/2) J_{m+(N−2)/2}(u) / u^{(N−2)/2}.

use crate::error::{Error, Result};
use crate::special::bessel::j_unchecked;
use crate::special::gamma::ln_gamma_pos;

/// Below this radius g_m is summed from its own power series
/// g_m(u) = Γ(N/2) (u/2)^m Σ_k (−u²/4)^k / (k! Γ(m + N/2 + k)),
/// which has no 0/0 at the origin.
const SERIES_RADIUS: f64 = 2.0;

/// g_m(u) in dimension N ≥ 1.
///
/// N = 1 is accepted as well: there g_0 = cos and g_1 = sin.
///
/// ```
/// use mfbm::special::g_m;
/// assert!((g_m(0, 3, 2.0).unwrap() - 2f64.sin() / 2.0).abs() < 1e-15);
/// assert_eq!(g_m(0, 5, 0.0).unwrap(), 1.0);
/// ```
pub fn g_m(m: usize, dim: usize, u: f64) -> Result<f64> {
    if dim == 0 {
        return Err(Error::domain("g_m", "dimension must be at least 1"));
    }
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::domain("g_m", format!("u = {u} must be finite and nonnegative")));
    }
    Ok(radial_kernel(m, dim, u))
}

pub(crate) fn radial_kernel(m: usize, dim: usize, u: f64) -> f64 {
    let half_dim = 0.5 * dim as f64;
    if u == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if u < SERIES_RADIUS {
        let a = m as f64 + half_dim;
        let half = 0.5 * u;
        let lead = (ln_gamma_pos(half_dim) + m as f64 * half.ln() - ln_gamma_pos(a)).exp();
        let q = -half * half;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..200 {
            let kf = k as f64;
            term *= q / (kf * (a + kf - 1.0));
            sum += term;
            if term.abs() <= f64::EPSILON * sum.abs() {
                break;
            }
        }
        return lead * sum;
    }
    let shift = half_dim - 1.0;
    let nu = m as f64 + shift;
    let prefactor = (shift * (2.0f64.ln() - u.ln()) + ln_gamma_pos(half_dim)).exp();
    prefactor * j_unchecked(nu, u)
}
