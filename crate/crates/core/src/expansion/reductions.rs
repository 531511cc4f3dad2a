//! The N = 1 and N = 2 forms of the expansion written out with ordinary
//! Bessel functions and trigonometric harmonics. They are built without
//! g_m, S^l_m or the coefficient table, so they act as an independent check
//! of the general path.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::expansion::coefficients::c_hn_squared;
use crate::expansion::params::ModelParams;
use crate::special::{bessel_j, bessel_zeros, gamma, Order};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum N1Branch {
    /// (cos(j_{1−H,n} x) − 1) ξ^1_0n
    Cosine,
    /// sin(j_{−H,n} x) ξ^1_1n
    Sine,
}

fn zero(nu: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("zero index", "n starts at 1"));
    }
    bessel_zeros(Order::new(nu)?, n)?.zero(n)
}

/// 2 c_H1 / (J_{ν+1}(j_{ν,n}) j^{1+H}_{ν,n}) with ν = 1 − H (cosine) or −H (sine).
pub fn n1_coefficient(params: &ModelParams, n: usize, branch: N1Branch) -> Result<f64> {
    if params.dim() != 1 {
        return Err(Error::InvalidParams("the one-dimensional form needs N = 1".into()));
    }
    let h = params.hurst();
    let nu = match branch {
        N1Branch::Cosine => 1.0 - h,
        N1Branch::Sine => -h,
    };
    let j = zero(nu, n)?;
    Ok(2.0 * c_hn_squared(params).sqrt() / (bessel_j(Order::new(nu + 1.0)?, j)? * j.powf(1.0 + h)))
}

/// One summand of the one-dimensional series at x ∈ [−1, 1], without its deviate.
pub fn n1_summand(params: &ModelParams, n: usize, branch: N1Branch, x: f64) -> Result<f64> {
    let h = params.hurst();
    let coef = n1_coefficient(params, n, branch)?;
    Ok(match branch {
        N1Branch::Cosine => coef * ((zero(1.0 - h, n)? * x).cos() - 1.0),
        N1Branch::Sine => coef * (zero(-h, n)? * x).sin(),
    })
}

/// Coefficient of J_m(j_{m−1−H,n} r) cos(mφ) (or sin(mφ)) in the planar
/// series, including the 1/√2 carried by the m = 0 sum:
/// 2^{H+1} Γ(H+1) √(sin πH) / (√π J_{m−H}(j_{m−1−H,n}) j^{1+H}_{m−1−H,n}),
/// with m − 1 − H read as 1 − H when m = 0.
pub fn n2_coefficient(params: &ModelParams, m: usize, n: usize) -> Result<f64> {
    if params.dim() != 2 {
        return Err(Error::InvalidParams("the planar form needs N = 2".into()));
    }
    let h = params.hurst();
    let lead = 2f64.powf(h + 1.0) * gamma(h + 1.0)? * (PI * h).sin().sqrt() / PI.sqrt();
    let nu = if m == 0 { 1.0 - h } else { m as f64 - 1.0 - h };
    let j = zero(nu, n)?;
    let c = lead / (bessel_j(Order::new(nu + 1.0)?, j)? * j.powf(1.0 + h));
    Ok(if m == 0 { c / 2f64.sqrt() } else { c })
}

/// One summand of the planar series at polar point (r, φ), without its
/// deviate. `l` is 1 for the cosine harmonic and 2 for the sine harmonic; for
/// m = 0 only l = 1 exists.
pub fn n2_summand(params: &ModelParams, m: usize, n: usize, l: usize, r: f64, phi: f64) -> Result<f64> {
    let h = params.hurst();
    let coef = n2_coefficient(params, m, n)?;
    if m == 0 {
        if l != 1 {
            return Err(Error::InvalidParams("degree 0 has a single harmonic".into()));
        }
        let j = zero(1.0 - h, n)?;
        return Ok(coef * (bessel_j(Order::new(0.0)?, j * r)? - 1.0));
    }
    let j = zero(m as f64 - 1.0 - h, n)?;
    let radial = bessel_j(Order::new(m as f64)?, j * r)?;
    let angular = match l {
        1 => (m as f64 * phi).cos(),
        2 => (m as f64 * phi).sin(),
        _ => return Err(Error::InvalidParams("planar harmonics are indexed 1 and 2".into())),
    };
    Ok(coef * radial * angular)
}
