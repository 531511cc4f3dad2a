//! Bessel function of the first kind J_ν(x) for real order ν > −1 and x ≥ 0.
//!
//! Three regimes:
//!
//! * x < `SERIES_LIMIT`: the ascending power series.
//! * x ≥ `HANKEL_LIMIT` and ν ≤ x: Hankel's asymptotic expansion at the
//!   fractional order μ ∈ (−1, 1) and μ + 1, then upward recurrence to ν,
//!   which is stable in the oscillatory region.
//! * otherwise Steed's method: the continued fraction CF1 gives J'_ν/J_ν and
//!   seeds a downward recurrence to a small order μ, and the complex
//!   continued fraction CF2 together with the Wronskian fixes the
//!   normalisation. Negative orders ν ∈ (−1, 0) are reached from ν + 1
//!   through J_ν = J'_{ν+1} + ((ν+1)/x) J_{ν+1}.
//!
//! CF1 needs about x iterations and its rounding error grows with them, which
//! is why large arguments go through the asymptotic route.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::gamma::ln_gamma_pos;

const SERIES_LIMIT: f64 = 2.0;
const HANKEL_LIMIT: f64 = 25.0;
const MAX_ITER: usize = 100_000;
const EPS: f64 = f64::EPSILON;
const FPMIN: f64 = f64::MIN_POSITIVE / f64::EPSILON;

/// Order ν of a Bessel function; always strictly greater than −1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu > -1.0 {
            Ok(Order(nu))
        } else {
            Err(Error::domain("Order::new", format!("nu = {nu} must exceed -1")))
        }
    }

    #[inline]
    pub fn nu(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;
    fn try_from(nu: f64) -> Result<Self> {
        Order::new(nu)
    }
}

impl From<Order> for f64 {
    fn from(o: Order) -> f64 {
        o.0
    }
}

/// J_ν(x).
///
/// ```
/// use mfbm::special::{bessel_j, Order};
/// let x = std::f64::consts::FRAC_PI_2;
/// let j = bessel_j(Order::new(0.5).unwrap(), x).unwrap();
/// assert!((j - 2.0 / std::f64::consts::PI).abs() < 1e-14);
/// ```
pub fn bessel_j(order: Order, x: f64) -> Result<f64> {
    check_argument(order, x)?;
    Ok(j_unchecked(order.0, x))
}

/// J_ν(x) together with J'_ν(x). Requires x > 0.
pub fn bessel_j_with_derivative(order: Order, x: f64) -> Result<(f64, f64)> {
    check_argument(order, x)?;
    if x == 0.0 {
        return Err(Error::domain("bessel_j_with_derivative", "x must be positive"));
    }
    Ok(j_and_dj(order.0, x))
}

fn check_argument(order: Order, x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_j",
            format!("x = {x} must be finite and nonnegative"),
        ));
    }
    if x == 0.0 && order.0 < 0.0 {
        return Err(Error::domain(
            "bessel_j",
            format!("J_{} is unbounded at x = 0", order.0),
        ));
    }
    Ok(())
}

pub(crate) fn j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_LIMIT {
        return series(nu, x);
    }
    if x >= HANKEL_LIMIT && nu <= x {
        return upward(nu, x).0;
    }
    if nu >= 0.0 {
        steed(nu, x).0
    } else {
        let (j1, dj1) = steed(nu + 1.0, x);
        dj1 + (nu + 1.0) / x * j1
    }
}

/// (J_ν(x), J'_ν(x)) for x > 0.
pub(crate) fn j_and_dj(nu: f64, x: f64) -> (f64, f64) {
    if x < SERIES_LIMIT {
        let j = series(nu, x);
        let jp1 = series(nu + 1.0, x);
        return (j, nu / x * j - jp1);
    }
    if x >= HANKEL_LIMIT && nu <= x {
        let (j, jp1) = upward(nu, x);
        return (j, nu / x * j - jp1);
    }
    if nu >= 0.0 {
        steed(nu, x)
    } else {
        let (j1, dj1) = steed(nu + 1.0, x);
        let j = dj1 + (nu + 1.0) / x * j1;
        (j, nu / x * j - j1)
    }
}

/// Ascending series Σ (−1)^k (x/2)^{2k+ν} / (k! Γ(ν+k+1)).
fn series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = (nu * half.ln() - ln_gamma_pos(nu + 1.0)).exp();
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_ITER {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() <= EPS * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// (J_ν(x), J_{ν+1}(x)) from Hankel seeds at the fractional order and the
/// recurrence J_{k+1} = (2k/x) J_k − J_{k−1}.
fn upward(nu: f64, x: f64) -> (f64, f64) {
    let steps = if nu < 0.0 { 0 } else { nu.floor() as usize };
    let mu = nu - steps as f64;
    let mut lo = hankel(mu, x);
    let mut hi = hankel(mu + 1.0, x);
    for k in 0..steps {
        let order = mu + 1.0 + k as f64;
        let next = 2.0 * order / x * hi - lo;
        lo = hi;
        hi = next;
    }
    (lo, hi)
}

/// Hankel's expansion J_μ(x) ≈ √(2/(πx)) (P cos χ − Q sin χ), χ = x − (μ/2 + 1/4)π,
/// summed until the terms stop decreasing. Accurate for x ≥ `HANKEL_LIMIT`, |μ| < 2.
fn hankel(mu: f64, x: f64) -> f64 {
    let four_mu2 = 4.0 * mu * mu;
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (four_mu2 - odd * odd) / (k as f64 * eight_x);
        let size = term.abs();
        if size >= last {
            break;
        }
        // a_k / x^k enters P with sign (−1)^{k/2} for even k, Q with (−1)^{(k−1)/2} for odd k
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if size <= EPS * p.abs().max(q.abs()) * 1e-2 {
            break;
        }
        last = size;
    }
    let phase = (0.5 * mu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// Steed's method for ν ≥ 0, x ≥ 2. Returns (J_ν, J'_ν).
fn steed(nu: f64, x: f64) -> (f64, f64) {
    debug_assert!(nu >= 0.0 && x >= SERIES_LIMIT);
    let nl = ((nu - x + 1.5).floor().max(0.0)) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: f_ν = J'_ν / J_ν by modified Lentz.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            converged = true;
            break;
        }
    }
    debug_assert!(converged, "CF1 did not converge for nu = {nu}, x = {x}");

    // Downward recurrence from ν to μ on unnormalised values.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq = (J'_μ + iY'_μ) / (J_μ + iY_μ) by Lentz on the complex fraction.
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 1..MAX_ITER {
        a += 2.0 * i as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() <= EPS {
            break;
        }
    }

    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    let scale = rjmu / rjl;
    (rjl1 * scale, rjp1 * scale)
}
