//! Closed-form and series covariances.

use crate::error::{Error, Result};
use crate::expansion::coefficients::CoefficientTable;
use crate::expansion::field::radial_factor;
use crate::expansion::params::ModelParams;
use crate::harmonics::zonal_kernel;
use crate::sum::Neumaier;

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn check_dim(params: &ModelParams, x: &[f64]) -> Result<()> {
    if x.len() != params.dim() {
        return Err(Error::DimensionMismatch {
            expected: params.dim(),
            found: x.len(),
        });
    }
    Ok(())
}

/// ½(‖x‖^{2H} + ‖y‖^{2H} − ‖x − y‖^{2H}).
///
/// ```
/// use mfbm::expansion::{covariance_closed, ModelParams};
/// let p = ModelParams::new(2, 0.5).unwrap();
/// assert!((covariance_closed(&p, &[0.3, 0.4], &[0.3, 0.4]).unwrap() - 0.5).abs() < 1e-15);
/// assert_eq!(covariance_closed(&p, &[0.3, 0.4], &[0.0, 0.0]).unwrap(), 0.0);
/// ```
pub fn covariance_closed(params: &ModelParams, x: &[f64], y: &[f64]) -> Result<f64> {
    check_dim(params, x)?;
    check_dim(params, y)?;
    let e = 2.0 * params.hurst();
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    Ok(0.5 * (norm(x).powf(e) + norm(y).powf(e) - norm(&d).powf(e)))
}

/// Covariance of the truncated series, with the sum over l collapsed by the
/// addition theorem:
/// Σ τ²_mn [g_m(j‖x‖) − δ_m0][g_m(j‖y‖) − δ_m0] · Γ(N/2) h(m,N)/(2π^{N/2}) · C_m(cos φ)/C_m(1).
///
/// Symmetric in x and y bit for bit.
pub fn covariance_partial(table: &CoefficientTable, x: &[f64], y: &[f64]) -> Result<f64> {
    let params = table.params();
    check_dim(params, x)?;
    check_dim(params, y)?;
    let (rx, ry) = (norm(x), norm(y));
    if rx == 0.0 || ry == 0.0 {
        return Ok(0.0);
    }
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let cos_phi = (dot / (rx * ry)).clamp(-1.0, 1.0);
    let dim = params.dim();
    let mut acc = Neumaier::default();
    let mut angular = 0.0;
    let mut current = usize::MAX;
    for c in table.entries() {
        if c.m != current {
            angular = zonal_kernel(dim, c.m, cos_phi);
            current = c.m;
        }
        let fx = radial_factor(c.m, dim, c.zero * rx);
        let fy = radial_factor(c.m, dim, c.zero * ry);
        acc.add(c.tau * c.tau * (fx * fy) * angular);
    }
    Ok(acc.value())
}
