use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimension N ≥ 1 and Hurst index H ∈ (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ModelParams {
    dim: usize,
    hurst: f64,
}

#[derive(Deserialize)]
struct RawParams {
    dim: usize,
    hurst: f64,
}

impl TryFrom<RawParams> for ModelParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ModelParams::new(raw.dim, raw.hurst)
    }
}

impl ModelParams {
    pub fn new(dim: usize, hurst: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParams("dimension must be at least 1".into()));
        }
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::InvalidParams(format!("Hurst index {hurst} is not in (0, 1)")));
        }
        Ok(ModelParams { dim, hurst })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    /// Bessel order |m − 1| − H whose zeros feed degree m.
    pub fn order(&self, m: usize) -> f64 {
        m.abs_diff(1) as f64 - self.hurst
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} H={}", self.dim, self.hurst)
    }
}
