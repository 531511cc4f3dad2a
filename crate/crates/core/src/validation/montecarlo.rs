//! Monte Carlo estimates over independent replications.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::Expansion;
use crate::grid::check_points;
use crate::sum::compensated_sum;

/// Replications below this count are refused by the covariance estimators.
pub const MIN_REPLICATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub count: usize,
}

impl MeanEstimate {
    /// |mean − target| in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target) / self.std_error
    }
}

/// Sample mean and its standard error, s/√n.
pub fn mean_with_error(samples: &[f64]) -> Result<MeanEstimate> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::InvalidParams(
            "need at least two samples for a standard error".into(),
        ));
    }
    let mean = compensated_sum(samples.iter().copied()) / n as f64;
    let var = compensated_sum(samples.iter().map(|v| (v - mean) * (v - mean))) / (n - 1) as f64;
    Ok(MeanEstimate {
        mean,
        std_error: (var / n as f64).sqrt(),
        count: n,
    })
}

/// Sample kurtosis m4 / m2² (3 for a normal law).
pub fn sample_kurtosis(samples: &[f64]) -> Result<f64> {
    let n = samples.len();
    if n < 4 {
        return Err(Error::InvalidParams("need at least four samples for a kurtosis".into()));
    }
    let mean = compensated_sum(samples.iter().copied()) / n as f64;
    let m2 = compensated_sum(samples.iter().map(|v| (v - mean).powi(2))) / n as f64;
    let m4 = compensated_sum(samples.iter().map(|v| (v - mean).powi(4))) / n as f64;
    if m2 == 0.0 {
        return Err(Error::InvalidParams("samples have zero variance".into()));
    }
    Ok(m4 / (m2 * m2))
}

/// Field values at `points` for replications 0..reps: `out[rep][point]`.
///
/// Term values are computed once per point; each replication only draws its
/// deviates and takes dot products.
pub fn realisations(expansion: &Expansion, points: &[Vec<f64>], reps: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    check_points(points, expansion.params().dim())?;
    let terms: Vec<Vec<f64>> = points
        .par_iter()
        .map(|x| {
            let mut t = Vec::new();
            expansion.terms_at(x, &mut t).map(|_| t)
        })
        .collect::<Result<_>>()?;
    Ok((0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let d = expansion.deviates(seed, rep);
            terms
                .iter()
                .map(|t| t.iter().zip(&d).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect())
}

fn check_reps(reps: usize) -> Result<()> {
    if reps < MIN_REPLICATIONS {
        return Err(Error::InvalidParams(format!(
            "{reps} replications requested, at least {MIN_REPLICATIONS} are needed"
        )));
    }
    Ok(())
}

/// Mean of ξ(x) ξ(y) over independent realisations of the truncated field.
pub fn empirical_covariance(
    expansion: &Expansion,
    x: &[f64],
    y: &[f64],
    reps: usize,
    seed: u64,
) -> Result<MeanEstimate> {
    check_reps(reps)?;
    let v = realisations(expansion, &[x.to_vec(), y.to_vec()], reps, seed)?;
    let products: Vec<f64> = v.iter().map(|r| r[0] * r[1]).collect();
    mean_with_error(&products)
}

/// Mean of (ξ(x) − ξ(y))² over independent realisations.
pub fn empirical_increment_variance(
    expansion: &Expansion,
    x: &[f64],
    y: &[f64],
    reps: usize,
    seed: u64,
) -> Result<MeanEstimate> {
    check_reps(reps)?;
    let v = realisations(expansion, &[x.to_vec(), y.to_vec()], reps, seed)?;
    let squares: Vec<f64> = v.iter().map(|r| (r[0] - r[1]).powi(2)).collect();
    mean_with_error(&squares)
}
