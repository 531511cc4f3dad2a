//! Evaluating and sampling the truncated series.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::coefficients::CoefficientTable;
use crate::expansion::params::ModelParams;
use crate::expansion::truncation::{resolve_truncation, Truncation, TruncationKind};
use crate::grid::check_points;
use crate::harmonics::{enumerate_basis, HarmonicBasis};
use crate::rng;
use crate::special::radial_kernel;

/// A resolved truncation with its coefficients and harmonic bases, ready to
/// evaluate the terms u^l_mn(x) = τ_mn [g_m(j‖x‖) − δ_m0] S^l_m(x/‖x‖).
///
/// Terms are laid out in canonical order: m ascending, then n, then l.
#[derive(Debug, Clone)]
pub struct Expansion {
    params: ModelParams,
    truncation: Truncation,
    coefficients: CoefficientTable,
    bases: Vec<HarmonicBasis>,
    /// first term index of each pair
    offsets: Vec<usize>,
}

impl Expansion {
    pub fn new(params: &ModelParams, kind: TruncationKind) -> Result<Self> {
        let truncation = resolve_truncation(kind, params)?;
        Self::from_truncation(params, truncation)
    }

    pub fn from_truncation(params: &ModelParams, truncation: Truncation) -> Result<Self> {
        let coefficients = CoefficientTable::new(params, &truncation)?;
        Self::from_parts(params, truncation, coefficients)
    }

    pub fn from_parts(params: &ModelParams, truncation: Truncation, coefficients: CoefficientTable) -> Result<Self> {
        if coefficients.entries().len() != truncation.pairs().len() {
            return Err(Error::InvalidParams(
                "coefficient table does not match the truncation".into(),
            ));
        }
        let bases = (0..=truncation.max_degree())
            .map(|m| enumerate_basis(m, params.dim()))
            .collect::<Result<Vec<_>>>()?;
        let mut offsets = Vec::with_capacity(truncation.pairs().len());
        let mut next = 0;
        for &(m, _) in truncation.pairs() {
            offsets.push(next);
            next += bases[m].len();
        }
        Ok(Expansion {
            params: *params,
            truncation,
            coefficients,
            bases,
            offsets,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn coefficients(&self) -> &CoefficientTable {
        &self.coefficients
    }

    pub fn term_count(&self) -> usize {
        self.truncation.term_count()
    }

    /// Level (m+1)(m/2+n)^{2H+1} of every term, in canonical order.
    pub fn term_levels(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.term_count());
        for c in self.coefficients.entries() {
            out.extend(std::iter::repeat_n(c.level, self.bases[c.m].len()));
        }
        out
    }

    /// u^l_mn(x) for a single term, with l counted from 1. Zero at the origin.
    pub fn term(&self, m: usize, n: usize, l: usize, x: &[f64]) -> Result<f64> {
        let c = self
            .coefficients
            .get(m, n)
            .ok_or_else(|| Error::InvalidParams(format!("pair ({m}, {n}) is not in the truncation")))?;
        let basis = &self.bases[m];
        if l == 0 || l > basis.len() {
            return Err(Error::InvalidParams(format!(
                "harmonic position {l} out of 1..={}",
                basis.len()
            )));
        }
        let r = self.norm_checked(x)?;
        if r == 0.0 {
            return Ok(0.0);
        }
        let s = basis.evaluate(x)?;
        Ok(c.tau * radial_factor(m, self.params.dim(), c.zero * r) * s[l - 1])
    }

    fn norm_checked(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.params.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.params.dim(),
                found: x.len(),
            });
        }
        Ok(x.iter().map(|v| v * v).sum::<f64>().sqrt())
    }

    /// Every term at x, in canonical order, written into `out`.
    pub fn terms_at(&self, x: &[f64], out: &mut Vec<f64>) -> Result<()> {
        out.clear();
        let r = self.norm_checked(x)?;
        if r == 0.0 {
            out.resize(self.term_count(), 0.0);
            return Ok(());
        }
        let dim = self.params.dim();
        let mut harmonics = Vec::new();
        let mut current = usize::MAX;
        for c in self.coefficients.entries() {
            if c.m != current {
                self.bases[c.m].evaluate_into(x, &mut harmonics)?;
                current = c.m;
            }
            let radial = c.tau * radial_factor(c.m, dim, c.zero * r);
            out.extend(harmonics.iter().map(|s| radial * s));
        }
        Ok(())
    }

    /// The deviates ξ^l_mn of one replication, in canonical order.
    pub fn deviates(&self, seed: u64, rep: u64) -> Vec<f64> {
        let mut out = vec![0.0; self.term_count()];
        for (i, &(m, n)) in self.truncation.pairs().iter().enumerate() {
            let start = self.offsets[i];
            let len = self.bases[m].len();
            rng::fill_block(seed, rep, m, n, &mut out[start..start + len]);
        }
        out
    }

    /// Σ u^l_mn(x) ξ^l_mn, summed in canonical order. Exactly 0 at the origin.
    pub fn value_at(&self, x: &[f64], deviates: &[f64]) -> Result<f64> {
        if deviates.len() != self.term_count() {
            return Err(Error::InvalidParams(format!(
                "{} deviates supplied for {} terms",
                deviates.len(),
                self.term_count()
            )));
        }
        if self.norm_checked(x)? == 0.0 {
            return Ok(0.0);
        }
        let mut terms = Vec::with_capacity(self.term_count());
        self.terms_at(x, &mut terms)?;
        Ok(terms.iter().zip(deviates).map(|(t, d)| t * d).sum())
    }

    /// One realisation on a point set. Points are evaluated in parallel on
    /// the current rayon pool; the result does not depend on its size.
    pub fn realise(&self, points: &[Vec<f64>], seed: u64, rep: u64) -> Result<Vec<f64>> {
        check_points(points, self.params.dim())?;
        let deviates = self.deviates(seed, rep);
        points.par_iter().map(|x| self.value_at(x, &deviates)).collect()
    }
}

/// g_m(u) − δ_m0
pub(crate) fn radial_factor(m: usize, dim: usize, u: f64) -> f64 {
    let g = radial_kernel(m, dim, u);
    if m == 0 {
        g - 1.0
    } else {
        g
    }
}

/// Grid points with one realised field value each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub params: ModelParams,
    pub truncation: TruncationKind,
    pub term_count: usize,
    pub seed: u64,
    pub points: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

/// Draws one realisation of the truncated field on `points`.
///
/// ```
/// use mfbm::expansion::{sample_field, ModelParams, TruncationKind};
/// let p = ModelParams::new(2, 0.5).unwrap();
/// let pts = vec![vec![0.0, 0.0], vec![0.3, -0.4]];
/// let s = sample_field(&p, TruncationKind::LevelSet { q: 64.0 }, &pts, 7).unwrap();
/// assert_eq!(s.values[0], 0.0);
/// let again = sample_field(&p, TruncationKind::LevelSet { q: 64.0 }, &pts, 7).unwrap();
/// assert_eq!(s.values[1].to_bits(), again.values[1].to_bits());
/// ```
pub fn sample_field(params: &ModelParams, kind: TruncationKind, points: &[Vec<f64>], seed: u64) -> Result<FieldSample> {
    check_points(points, params.dim())?;
    let expansion = Expansion::new(params, kind)?;
    let values = expansion.realise(points, seed, 0)?;
    Ok(FieldSample {
        params: *params,
        truncation: kind,
        term_count: expansion.term_count(),
        seed,
        points: points.to_vec(),
        values,
    })
}
