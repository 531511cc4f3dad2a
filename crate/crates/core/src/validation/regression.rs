//! Fitting the decay exponent of the tail sup-norm.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{resolve_truncation, ModelParams, TruncationKind};

/// Least-squares slope of y against x.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::DegenerateRegression("need two or more paired values".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateRegression("all abscissae are equal".into()));
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub params: ModelParams,
    pub p_values: Vec<usize>,
    pub tail_norms: Vec<f64>,
    pub fitted_slope: f64,
    /// −H/N
    pub expected_slope: f64,
    pub log_correction_used: bool,
}

impl RateReport {
    pub fn deviation(&self) -> f64 {
        (self.fitted_slope - self.expected_slope).abs()
    }
}

/// Minimum number of (p, tail) points.
pub const MIN_POINTS: usize = 5;
/// Minimum span of p, in decades.
pub const MIN_DECADES: f64 = 1.0;

/// Slope of log(tail / √log p) (or of log tail when `log_correction` is off)
/// against log p.
///
/// ```
/// use mfbm::expansion::ModelParams;
/// use mfbm::validation::rate_regression;
/// let params = ModelParams::new(2, 0.5).unwrap();
/// let p: Vec<usize> = vec![10, 40, 160, 640, 2560];
/// let tails: Vec<f64> = p.iter().map(|&p| (p as f64).powf(-0.25) * (p as f64).ln().sqrt()).collect();
/// let report = rate_regression(&params, &p, &tails, true).unwrap();
/// assert!((report.fitted_slope + 0.25).abs() < 1e-6);
/// ```
pub fn rate_regression(
    params: &ModelParams,
    p_values: &[usize],
    tails: &[f64],
    log_correction: bool,
) -> Result<RateReport> {
    if p_values.len() != tails.len() {
        return Err(Error::InvalidParams("p values and tail norms differ in length".into()));
    }
    if p_values.len() < MIN_POINTS {
        return Err(Error::InvalidParams(format!(
            "need at least {MIN_POINTS} points, got {}",
            p_values.len()
        )));
    }
    if p_values.iter().all(|&p| p == p_values[0]) {
        return Err(Error::DegenerateRegression("all term counts are equal".into()));
    }
    if p_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("term counts must be strictly increasing".into()));
    }
    if p_values[0] < 2 {
        return Err(Error::InvalidParams(
            "term counts must be at least 2 so that log p > 0".into(),
        ));
    }
    if let Some(t) = tails.iter().find(|&&t| !(t > 0.0) || !t.is_finite()) {
        return Err(Error::InvalidParams(format!("tail norm {t} is not positive")));
    }
    let span = (*p_values.last().unwrap() as f64 / p_values[0] as f64).log10();
    if span < MIN_DECADES {
        return Err(Error::InvalidParams(format!(
            "term counts span {span:.2} decades, at least {MIN_DECADES} needed"
        )));
    }
    let x: Vec<f64> = p_values.iter().map(|&p| (p as f64).ln()).collect();
    let y: Vec<f64> = tails
        .iter()
        .zip(&x)
        .map(|(&t, &lp)| if log_correction { t.ln() - 0.5 * lp.ln() } else { t.ln() })
        .collect();
    Ok(RateReport {
        params: *params,
        p_values: p_values.to_vec(),
        tail_norms: tails.to_vec(),
        fitted_slope: least_squares_slope(&x, &y)?,
        expected_slope: -params.hurst() / params.dim() as f64,
        log_correction_used: log_correction,
    })
}

/// Term counts p(q) of the level-set truncation and the fitted exponent of
/// log p against log q.
pub fn term_count_exponent(params: &ModelParams, q_values: &[f64]) -> Result<(Vec<usize>, f64)> {
    let counts = q_values
        .iter()
        .map(|&q| resolve_truncation(TruncationKind::LevelSet { q }, params).map(|t| t.term_count()))
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = q_values.iter().map(|q| q.ln()).collect();
    let y: Vec<f64> = counts.iter().map(|&p| (p as f64).ln()).collect();
    Ok((counts, least_squares_slope(&x, &y)?))
}
