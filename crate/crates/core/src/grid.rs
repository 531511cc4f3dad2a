//! Point sets in the closed unit ball.
//!
//! `ball:k` is the k-per-axis Cartesian grid on [−1, 1]^N intersected with
//! the ball, plus the origin. `disk:k` is the same thing restricted to N = 2.
//! `halton:c` is the first c Halton points (bases 2, 3, 5, …) that land in
//! the ball, the default grid for sup-norm estimates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on ‖x‖ ≤ 1 for points that were rounded on the way in.
pub const BALL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridSpec {
    Ball(usize),
    Disk(usize),
    Halton(usize),
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridSpec::Ball(k) => write!(f, "ball:{k}"),
            GridSpec::Disk(k) => write!(f, "disk:{k}"),
            GridSpec::Halton(c) => write!(f, "halton:{c}"),
        }
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, count) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("grid '{s}' is not of the form kind:count")))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("grid count '{count}' is not a nonnegative integer")))?;
        if count == 0 {
            return Err(Error::Parse(format!("grid '{s}' has no points")));
        }
        match kind.trim() {
            "ball" => Ok(GridSpec::Ball(count)),
            "disk" => Ok(GridSpec::Disk(count)),
            "halton" => Ok(GridSpec::Halton(count)),
            other => Err(Error::Parse(format!(
                "unknown grid kind '{other}' (expected ball, disk or halton)"
            ))),
        }
    }
}

impl GridSpec {
    pub fn points(&self, dim: usize) -> Result<Vec<Vec<f64>>> {
        if dim == 0 {
            return Err(Error::InvalidParams("dimension must be at least 1".into()));
        }
        match *self {
            GridSpec::Ball(k) => Ok(cartesian_ball(dim, k)),
            GridSpec::Disk(k) => {
                if dim != 2 {
                    return Err(Error::InvalidParams(format!("disk grids need dimension 2, got {dim}")));
                }
                Ok(cartesian_ball(2, k))
            }
            GridSpec::Halton(c) => Ok(halton_ball(dim, c)),
        }
    }
}

fn cartesian_ball(dim: usize, k: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = if k == 1 {
        vec![0.0]
    } else {
        (0..k).map(|i| -1.0 + 2.0 * i as f64 / (k - 1) as f64).collect()
    };
    let mut out = Vec::new();
    let mut digits = vec![0usize; dim];
    let mut has_origin = false;
    'outer: loop {
        let p: Vec<f64> = digits.iter().map(|&d| axis[d]).collect();
        let r2: f64 = p.iter().map(|v| v * v).sum();
        if r2 <= 1.0 + BALL_SLACK {
            has_origin |= r2 == 0.0;
            out.push(p);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < k {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }
    if !has_origin {
        out.insert(0, vec![0.0; dim]);
    }
    out
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut c = 2u64;
    while primes.len() < count {
        if primes.iter().all(|p| !c.is_multiple_of(*p)) {
            primes.push(c);
        }
        c += 1;
    }
    primes
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut v = 0.0;
    while i > 0 {
        v += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    v
}

fn halton_ball(dim: usize, count: usize) -> Vec<Vec<f64>> {
    let bases = first_primes(dim);
    let mut out = Vec::with_capacity(count);
    let mut i = 1u64;
    while out.len() < count {
        let p: Vec<f64> = bases.iter().map(|&b| 2.0 * radical_inverse(i, b) - 1.0).collect();
        if p.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
            out.push(p);
        }
        i += 1;
    }
    out
}

/// Checks that every point has the right length and lies in the ball.
pub fn check_points(points: &[Vec<f64>], dim: usize) -> Result<()> {
    for (index, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm <= 1.0 + BALL_SLACK) {
            return Err(Error::OutsideBall { index, norm });
        }
    }
    Ok(())
}
