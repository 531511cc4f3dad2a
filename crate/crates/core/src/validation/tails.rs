//! Sup-norm of the series tail on a finite grid, from coupled truncations.
//!
//! One expansion is built at the top level q_high. For every replication the
//! terms are accumulated in decreasing order of level, so the running sum at
//! the moment the level drops to q_low is exactly ξ_{q_high} − ξ_{q_low} for
//! the same realisation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{Expansion, ModelParams, TruncationKind};
use crate::grid::check_points;
use crate::validation::montecarlo::{mean_with_error, MeanEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub q_low: f64,
    /// terms kept at level q_low
    pub term_count: usize,
    /// E max_grid |ξ_{q_high}(x) − ξ_{q_low}(x)|
    pub sup_norm: MeanEstimate,
}

/// Tail sup-norms for several lower levels sharing one realisation per replication.
pub fn tail_sup_norms(
    params: &ModelParams,
    q_lows: &[f64],
    q_high: f64,
    points: &[Vec<f64>],
    reps: usize,
    seed: u64,
) -> Result<Vec<TailEstimate>> {
    if q_lows.is_empty() {
        return Err(Error::InvalidParams("no lower levels given".into()));
    }
    if let Some(bad) = q_lows.iter().find(|&&q| !(q >= 1.0 && q <= q_high)) {
        return Err(Error::InvalidParams(format!(
            "lower level {bad} is not in [1, q_high = {q_high}]"
        )));
    }
    if reps < 2 {
        return Err(Error::InvalidParams("need at least two replications".into()));
    }
    check_points(points, params.dim())?;
    let expansion = Expansion::new(params, TruncationKind::LevelSet { q: q_high })?;
    let levels = expansion.term_levels();
    let mut order: Vec<usize> = (0..levels.len()).collect();
    // stable sort keeps canonical order among equal levels
    order.sort_by(|&a, &b| levels[b].total_cmp(&levels[a]));

    // breakpoints[k]: number of leading (highest-level) terms with level > q_lows[k]
    let breakpoints: Vec<usize> = q_lows
        .iter()
        .map(|&q| order.iter().take_while(|&&i| levels[i] > q).count())
        .collect();
    let mut stops: Vec<usize> = breakpoints.clone();
    stops.sort_unstable();
    stops.dedup();

    let matrix: Vec<Vec<f64>> = points
        .par_iter()
        .map(|x| {
            let mut t = Vec::new();
            expansion.terms_at(x, &mut t)?;
            Ok(order.iter().map(|&i| t[i]).collect())
        })
        .collect::<Result<_>>()?;

    let per_rep: Vec<Vec<f64>> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let d = expansion.deviates(seed, rep);
            let d: Vec<f64> = order.iter().map(|&i| d[i]).collect();
            let mut sup = vec![0.0f64; stops.len()];
            for row in &matrix {
                let mut acc = 0.0;
                let mut start = 0;
                for (k, &stop) in stops.iter().enumerate() {
                    acc += row[start..stop]
                        .iter()
                        .zip(&d[start..stop])
                        .map(|(a, b)| a * b)
                        .sum::<f64>();
                    start = stop;
                    sup[k] = sup[k].max(acc.abs());
                }
            }
            sup
        })
        .collect();

    let total = expansion.term_count();
    q_lows
        .iter()
        .zip(&breakpoints)
        .map(|(&q_low, &b)| {
            let k = stops.binary_search(&b).expect("breakpoint is a stop");
            let column: Vec<f64> = per_rep.iter().map(|s| s[k]).collect();
            Ok(TailEstimate {
                q_low,
                term_count: total - b,
                sup_norm: mean_with_error(&column)?,
            })
        })
        .collect()
}

/// E max over the grid of |ξ_{q_high} − ξ_{q_low}|.
pub fn tail_sup_norm(
    params: &ModelParams,
    q_low: f64,
    q_high: f64,
    points: &[Vec<f64>],
    reps: usize,
    seed: u64,
) -> Result<f64> {
    Ok(tail_sup_norms(params, &[q_low], q_high, points, reps, seed)?[0]
        .sup_norm
        .mean)
}
