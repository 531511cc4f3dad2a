//! Finite index sets of (m, n) pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::params::ModelParams;
use crate::harmonics::harmonic_count;

/// (m+1)(m/2+n)^{2H+1}, the weight that orders terms in the level-set truncation.
pub fn level(hurst: f64, m: usize, n: usize) -> f64 {
    (m as f64 + 1.0) * (0.5 * m as f64 + n as f64).powf(2.0 * hurst + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TruncationKind {
    /// All pairs with level(m, n) ≤ q, ties included.
    LevelSet { q: f64 },
    /// 0 ≤ m ≤ max_degree, 1 ≤ n ≤ max_zero.
    Rectangle { max_degree: usize, max_zero: usize },
}

impl fmt::Display for TruncationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncationKind::LevelSet { q } => write!(f, "q={q}"),
            TruncationKind::Rectangle { max_degree, max_zero } => write!(f, "rect={max_degree},{max_zero}"),
        }
    }
}

/// A resolved truncation: explicit pairs in canonical order (m ascending,
/// then n ascending). Degrees without harmonics (m ≥ 2 when N = 1) are dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    kind: TruncationKind,
    pairs: Vec<(usize, usize)>,
    term_count: usize,
}

impl Truncation {
    pub fn kind(&self) -> TruncationKind {
        self.kind
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// p = Σ h(m, N) over the pairs.
    pub fn term_count(&self) -> usize {
        self.term_count
    }

    pub fn max_degree(&self) -> usize {
        self.pairs.iter().map(|p| p.0).max().unwrap_or(0)
    }
}

/// Expands a truncation kind into its (m, n) pairs.
///
/// ```
/// use mfbm::expansion::{resolve_truncation, ModelParams, TruncationKind};
/// let p = ModelParams::new(2, 0.5).unwrap();
/// let t = resolve_truncation(TruncationKind::Rectangle { max_degree: 2, max_zero: 3 }, &p).unwrap();
/// assert_eq!(t.pairs().len(), 9);
/// assert_eq!(t.term_count(), 3 + 3 * 2 + 3 * 2);
/// ```
pub fn resolve_truncation(kind: TruncationKind, params: &ModelParams) -> Result<Truncation> {
    let dim = params.dim();
    let usable = |m: usize| harmonic_count(m, dim) > 0;
    let mut pairs = Vec::new();
    match kind {
        TruncationKind::LevelSet { q } => {
            if !(q >= 1.0) || !q.is_finite() {
                return Err(Error::EmptyTruncation(format!(
                    "level q = {q} must be finite and at least 1 (the first term has level 1)"
                )));
            }
            let h = params.hurst();
            let mut m = 0;
            while usable(m) && level(h, m, 1) <= q {
                let mut n = 1;
                while level(h, m, n) <= q {
                    pairs.push((m, n));
                    n += 1;
                }
                m += 1;
            }
        }
        TruncationKind::Rectangle { max_degree, max_zero } => {
            if max_zero == 0 {
                return Err(Error::EmptyTruncation(
                    "rectangle needs at least one zero per degree".into(),
                ));
            }
            for m in (0..=max_degree).filter(|&m| usable(m)) {
                pairs.extend((1..=max_zero).map(|n| (m, n)));
            }
        }
    }
    let term_count = pairs.iter().map(|&(m, _)| harmonic_count(m, dim)).sum();
    Ok(Truncation {
        kind,
        pairs,
        term_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(dim: usize, h: f64) -> ModelParams {
        ModelParams::new(dim, h).unwrap()
    }

    #[test]
    fn level_set_membership_by_brute_force() {
        let p = params(2, 0.5);
        let t = resolve_truncation(TruncationKind::LevelSet { q: 8.0 }, &p).unwrap();
        let mut want = Vec::new();
        for m in 0..=8 {
            for n in 1..=8 {
                if (m as f64 + 1.0) * (m as f64 / 2.0 + n as f64).powi(2) <= 8.0 {
                    want.push((m, n));
                }
            }
        }
        assert_eq!(t.pairs(), want.as_slice());
        assert_eq!(t.pairs(), &[(0, 1), (0, 2), (1, 1)]);
    }

    #[test]
    fn ties_are_included() {
        // H = 1/2: level(0, 2) = 4 exactly.
        let t = resolve_truncation(TruncationKind::LevelSet { q: 4.0 }, &params(2, 0.5)).unwrap();
        assert!(t.pairs().contains(&(0, 2)));
    }

    #[test]
    fn first_term_and_empty_set() {
        for &h in &[0.1, 0.5, 0.9] {
            let t = resolve_truncation(TruncationKind::LevelSet { q: 1.0 }, &params(3, h)).unwrap();
            assert_eq!(t.pairs(), &[(0, 1)]);
            assert!(resolve_truncation(TruncationKind::LevelSet { q: 0.99 }, &params(3, h)).is_err());
        }
        assert!(resolve_truncation(
            TruncationKind::Rectangle {
                max_degree: 3,
                max_zero: 0
            },
            &params(2, 0.5)
        )
        .is_err());
    }

    #[test]
    fn one_dimension_keeps_two_degrees() {
        let t = resolve_truncation(TruncationKind::LevelSet { q: 1e4 }, &params(1, 0.5)).unwrap();
        assert!(t.pairs().iter().all(|&(m, _)| m <= 1));
        assert_eq!(t.term_count(), t.pairs().len());
        let r = resolve_truncation(
            TruncationKind::Rectangle {
                max_degree: 5,
                max_zero: 4,
            },
            &params(1, 0.5),
        )
        .unwrap();
        assert_eq!(r.pairs().len(), 8);
    }

    #[test]
    fn term_count_weights_by_harmonics() {
        let t = resolve_truncation(
            TruncationKind::Rectangle {
                max_degree: 2,
                max_zero: 3,
            },
            &params(3, 0.5),
        )
        .unwrap();
        assert_eq!(t.term_count(), 3 * (1 + 3 + 5));
    }

    #[test]
    fn nested_in_q() {
        let p = params(3, 0.7);
        let small = resolve_truncation(TruncationKind::LevelSet { q: 100.0 }, &p).unwrap();
        let large = resolve_truncation(TruncationKind::LevelSet { q: 1000.0 }, &p).unwrap();
        assert!(small.pairs().iter().all(|pr| large.pairs().contains(pr)));
    }
}
