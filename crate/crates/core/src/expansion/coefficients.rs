//! The constants c²_HN and τ_mn.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::params::ModelParams;
use crate::expansion::truncation::{level, Truncation};
use crate::special::{bessel_zeros, j_unchecked, ln_gamma_pos, Order, ZeroTable};

/// c²_HN = 2^{2H−1} Γ(H+N/2) Γ(H+1) sin(πH) / π^{(N+2)/2}.
///
/// ```
/// use mfbm::expansion::{c_hn_squared, ModelParams};
/// let c = c_hn_squared(&ModelParams::new(3, 0.5).unwrap());
/// let pi = std::f64::consts::PI;
/// assert!((c - 1.0 / (2.0 * pi * pi)).abs() < 1e-15);
/// ```
pub fn c_hn_squared(params: &ModelParams) -> f64 {
    let h = params.hurst();
    let n = params.dim() as f64;
    let ln =
        (2.0 * h - 1.0) * 2f64.ln() + ln_gamma_pos(h + 0.5 * n) + ln_gamma_pos(h + 1.0) - 0.5 * (n + 2.0) * PI.ln();
    ln.exp() * (PI * h).sin()
}

/// The part of τ_mn that does not depend on (m, n):
/// 2^{H+1} √(π^{(N−2)/2} Γ(H+N/2) Γ(H+1) sin πH) / Γ(N/2).
pub fn tau_prefactor(params: &ModelParams) -> f64 {
    let h = params.hurst();
    let n = params.dim() as f64;
    let ln = (h + 1.0) * 2f64.ln()
        + 0.5 * (0.5 * (n - 2.0) * PI.ln() + ln_gamma_pos(h + 0.5 * n) + ln_gamma_pos(h + 1.0))
        - ln_gamma_pos(0.5 * n);
    ln.exp() * (PI * h).sin().sqrt()
}

/// τ_mn from the zero j = j_{|m−1|−H, n}.
///
/// The sign is that of J_{ν+1}(j_{ν,n}), i.e. (−1)^{n+1}; only τ² and the
/// symmetric law of τ ξ matter downstream.
pub fn tau_from_zero(params: &ModelParams, m: usize, zero: f64) -> f64 {
    let nu = params.order(m);
    tau_prefactor(params) / (j_unchecked(nu + 1.0, zero) * zero.powf(params.hurst() + 1.0))
}

/// τ_mn with j_{|m−1|−H, n} read from `zeros`, which must be the table for that order.
pub fn tau(params: &ModelParams, m: usize, n: usize, zeros: &ZeroTable) -> Result<f64> {
    let nu = params.order(m);
    if (zeros.order().nu() - nu).abs() > 1e-14 {
        return Err(Error::InvalidParams(format!(
            "zero table has order {}, degree {m} needs {nu}",
            zeros.order().nu()
        )));
    }
    Ok(tau_from_zero(params, m, zeros.zero(n)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub m: usize,
    pub n: usize,
    /// j_{|m−1|−H, n}
    pub zero: f64,
    pub tau: f64,
    /// (m+1)(m/2+n)^{2H+1}
    pub level: f64,
}

/// τ_mn and the zeros for every pair of a truncation, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    params: ModelParams,
    entries: Vec<Coefficient>,
}

impl CoefficientTable {
    pub fn new(params: &ModelParams, truncation: &Truncation) -> Result<Self> {
        // degrees m and 2 − m share the order |m − 1| − H
        let mut needed: BTreeMap<usize, usize> = BTreeMap::new();
        for &(m, n) in truncation.pairs() {
            let e = needed.entry(m.abs_diff(1)).or_insert(0);
            *e = (*e).max(n);
        }
        let mut tables = BTreeMap::new();
        for (&k, &count) in &needed {
            let order = Order::new(k as f64 - params.hurst())?;
            tables.insert(k, bessel_zeros(order, count)?);
        }
        Self::with_tables(params, truncation, &tables)
    }

    /// Builds the table from precomputed zero tables keyed by |m − 1|.
    pub fn with_tables(
        params: &ModelParams,
        truncation: &Truncation,
        tables: &BTreeMap<usize, ZeroTable>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(truncation.pairs().len());
        for &(m, n) in truncation.pairs() {
            let table = tables.get(&m.abs_diff(1)).ok_or(Error::MissingZeros {
                nu: params.order(m),
                requested: n,
                available: 0,
            })?;
            let zero = table.zero(n)?;
            entries.push(Coefficient {
                m,
                n,
                zero,
                tau: tau(params, m, n, table)?,
                level: level(params.hurst(), m, n),
            });
        }
        Ok(CoefficientTable {
            params: *params,
            entries,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn entries(&self) -> &[Coefficient] {
        &self.entries
    }

    pub fn get(&self, m: usize, n: usize) -> Option<&Coefficient> {
        self.entries
            .binary_search_by(|c| (c.m, c.n).cmp(&(m, n)))
            .ok()
            .map(|i| &self.entries[i])
    }
}
