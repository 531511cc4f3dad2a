//! Gegenbauer (ultraspherical) polynomials C^λ_m.

use crate::error::{Error, Result};
use crate::special::gamma::ln_gamma_pos;

/// C^λ_m(x) by the three-term recurrence
/// m C_m = 2(m+λ−1) x C_{m−1} − (m+2λ−2) C_{m−2}.
///
/// ```
/// use mfbm::special::gegenbauer;
/// assert!((gegenbauer(1.0, 1, 0.3).unwrap() - 0.6).abs() < 1e-15);
/// assert!((gegenbauer(0.5, 2, 1.0).unwrap() - 1.0).abs() < 1e-15);
/// ```
pub fn gegenbauer(lambda: f64, m: usize, x: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::domain(
            "gegenbauer",
            format!("lambda = {lambda} must be positive"),
        ));
    }
    Ok(homogeneous(lambda, m, x, 1.0))
}

/// r^m C^λ_m(x / r), evaluated as the polynomial in (x, r²) so that r = 0 is
/// allowed.
pub(crate) fn homogeneous(lambda: f64, m: usize, x: f64, r: f64) -> f64 {
    let r2 = r * r;
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 2.0 * lambda * x;
    for k in 2..=m {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda - 1.0) * x * cur - (kf + 2.0 * lambda - 2.0) * r2 * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// C^λ_m(1) = Γ(m+2λ) / (Γ(2λ) m!).
pub fn gegenbauer_at_one(lambda: f64, m: usize) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::domain(
            "gegenbauer_at_one",
            format!("lambda = {lambda} must be positive"),
        ));
    }
    let mf = m as f64;
    Ok((ln_gamma_pos(mf + 2.0 * lambda) - ln_gamma_pos(2.0 * lambda) - ln_gamma_pos(mf + 1.0)).exp())
}

/// Chebyshev T_m(x) = cos(m arccos x), the λ → 0 limit of the normalised
/// Gegenbauer ratio.
pub(crate) fn chebyshev_t(m: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = x;
    for _ in 2..=m {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// C^λ_m(t) / C^λ_m(1), with the λ = 0 case taken as T_m(t).
pub fn gegenbauer_ratio(lambda: f64, m: usize, t: f64) -> f64 {
    if lambda == 0.0 {
        return chebyshev_t(m, t);
    }
    homogeneous(lambda, m, t, 1.0) / homogeneous(lambda, m, 1.0, 1.0)
}
