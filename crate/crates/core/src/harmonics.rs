//! Real orthonormal spherical harmonics S^l_m on S^{N−1}.
//!
//! Harmonics of degree m are labelled by chains m = m_0 ≥ m_1 ≥ … ≥ m_{N−2} ≥ 0
//! and a sign, ordered lexicographically with `+` before `−`. The complex
//! harmonic for a chain is
//!
//! Y = (x_{N−1} ± i x_N)^{m_{N−2}} Π_{k=0}^{N−3} r_k^{m_k−m_{k+1}} C^{m_{k+1}+(N−k−2)/2}_{m_k−m_{k+1}}(x_{k+1}/r_k)
//!
//! on the unit sphere, where r_k² = x_{k+1}² + … + x_N². Every factor is
//! evaluated as a polynomial, so points where some r_k vanishes need no
//! special casing.
//!
//! N = 1 is handled separately: S^0 = {−1, 1} carries exactly two harmonics,
//! 1/√2 (degree 0) and x/√2 (degree 1).

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{gegenbauer_homogeneous, ln_gamma_pos};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One real spherical harmonic: a non-increasing chain plus a sign.
///
/// For N ≥ 2 the chain is (m_0, …, m_{N−2}); for N = 1 it is just (m).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    dim: usize,
    chain: Vec<usize>,
    sign: Sign,
}

impl MultiIndex {
    pub fn new(dim: usize, chain: Vec<usize>, sign: Sign) -> Result<Self> {
        let bad = |why: &str| Err(Error::domain("MultiIndex::new", why.to_string()));
        if dim == 0 {
            return bad("dimension must be at least 1");
        }
        if dim == 1 {
            if chain.len() != 1 || chain[0] > 1 || sign != Sign::Plus {
                return bad("in dimension 1 only degrees 0 and 1 with sign + exist");
            }
            return Ok(MultiIndex { dim, chain, sign });
        }
        if chain.len() != dim - 1 {
            return bad("chain length must be N - 1");
        }
        if chain.windows(2).any(|w| w[0] < w[1]) {
            return bad("chain must be non-increasing");
        }
        if sign == Sign::Minus && chain[dim - 2] == 0 {
            return bad("sign - requires a positive last chain entry");
        }
        Ok(MultiIndex { dim, chain, sign })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.chain[0]
    }

    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, m) in self.chain.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ",{})", self.sign)
    }
}

/// Number of linearly independent harmonics of degree m on S^{N−1}:
/// (2m+N−2)(m+N−3)! / ((N−2)! m!) for N ≥ 3, with the N = 1, 2 cases filled
/// in by direct enumeration.
///
/// ```
/// use mfbm::harmonics::harmonic_count;
/// assert_eq!(harmonic_count(4, 3), 9);
/// assert_eq!(harmonic_count(2, 4), 9);
/// assert_eq!(harmonic_count(0, 2), 1);
/// assert_eq!(harmonic_count(7, 2), 2);
/// ```
pub fn harmonic_count(m: usize, dim: usize) -> usize {
    match dim {
        0 => 0,
        1 => usize::from(m <= 1),
        2 => {
            if m == 0 {
                1
            } else {
                2
            }
        }
        _ => {
            // C(m+N−3, N−3) exactly, then the (2m+N−2)/(N−2) factor.
            let k = (dim - 3) as u128;
            let mut binom: u128 = 1;
            for i in 1..=k {
                binom = binom * (m as u128 + i) / i;
            }
            let num = (2 * m + dim - 2) as u128 * binom;
            (num / (dim as u128 - 2)) as usize
        }
    }
}

/// ln L(m_k), the log of the squared L² norm of the complex harmonic Y.
pub fn ln_l_norm(idx: &MultiIndex) -> f64 {
    let dim = idx.dim;
    if dim == 1 {
        return 2f64.ln();
    }
    let n = dim as f64;
    let m = &idx.chain;
    let mut acc = (2.0 * PI).ln();
    for k in 1..=dim - 2 {
        let kf = k as f64;
        let prev = m[k - 1] as f64;
        let cur = m[k] as f64;
        let half = 0.5 * (n - 1.0 - kf);
        acc += PI.ln() + (kf - 2.0 * cur - n + 2.0) * 2f64.ln() + ln_gamma_pos(prev + cur + n - 1.0 - kf)
            - (prev + half).ln()
            - ln_gamma_pos(prev - cur + 1.0)
            - 2.0 * ln_gamma_pos(cur + half);
    }
    acc
}

/// L(m_k) = ‖Y(m_k, ±, ·)‖² in L²(S^{N−1}).
///
/// ```
/// use mfbm::harmonics::{l_norm, MultiIndex, Sign};
/// let idx = MultiIndex::new(3, vec![0, 0], Sign::Plus).unwrap();
/// assert!((l_norm(&idx) - 4.0 * std::f64::consts::PI).abs() < 1e-13);
/// ```
pub fn l_norm(idx: &MultiIndex) -> f64 {
    ln_l_norm(idx).exp()
}

/// One basis element with its cached normalisation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub index: MultiIndex,
    /// √2 / √L for signed entries, 1/√L otherwise.
    pub scale: f64,
}

/// All h(m, N) real harmonics of one degree, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicBasis {
    dim: usize,
    degree: usize,
    entries: Vec<BasisEntry>,
}

/// Enumerates the harmonics of degree m on S^{N−1}.
pub fn enumerate_basis(m: usize, dim: usize) -> Result<HarmonicBasis> {
    if dim == 0 {
        return Err(Error::domain("enumerate_basis", "dimension must be at least 1"));
    }
    let mut indices = Vec::new();
    if dim == 1 {
        if m <= 1 {
            indices.push(MultiIndex {
                dim,
                chain: vec![m],
                sign: Sign::Plus,
            });
        }
    } else {
        let mut chain = vec![m];
        push_chains(dim, &mut chain, &mut indices);
    }
    let entries = indices
        .into_iter()
        .map(|index| {
            let signed = index.dim >= 2 && index.chain[index.dim - 2] > 0;
            let mut ln_scale = -0.5 * ln_l_norm(&index);
            if signed {
                ln_scale += 0.5 * 2f64.ln();
            }
            BasisEntry {
                index,
                scale: ln_scale.exp(),
            }
        })
        .collect();
    Ok(HarmonicBasis {
        dim,
        degree: m,
        entries,
    })
}

fn push_chains(dim: usize, chain: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
    if chain.len() == dim - 1 {
        let last = chain[dim - 2];
        out.push(MultiIndex {
            dim,
            chain: chain.clone(),
            sign: Sign::Plus,
        });
        if last > 0 {
            out.push(MultiIndex {
                dim,
                chain: chain.clone(),
                sign: Sign::Minus,
            });
        }
        return;
    }
    let top = *chain.last().unwrap();
    for next in 0..=top {
        chain.push(next);
        push_chains(dim, chain, out);
        chain.pop();
    }
}

impl HarmonicBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    /// Position l (0-based) of a multi-index in this basis.
    pub fn position(&self, idx: &MultiIndex) -> Option<usize> {
        self.entries.iter().position(|e| &e.index == idx)
    }

    /// S^l_m(x/‖x‖) for every l, written into `out` (cleared first).
    pub fn evaluate_into(&self, x: &[f64], out: &mut Vec<f64>) -> Result<()> {
        out.clear();
        let unit = unit_vector(x, self.dim)?;
        out.extend(self.entries.iter().map(|e| eval_unit(&e.index, e.scale, &unit)));
        Ok(())
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.entries.len());
        self.evaluate_into(x, &mut out)?;
        Ok(out)
    }
}

fn unit_vector(x: &[f64], dim: usize) -> Result<Vec<f64>> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::domain("spherical harmonic", "point must be nonzero and finite"));
    }
    Ok(x.iter().map(|v| v / norm).collect())
}

/// S^l_m(x/‖x‖) for a single multi-index. The position l is implied by the index.
///
/// ```
/// use mfbm::harmonics::{evaluate_real_harmonic, MultiIndex, Sign};
/// let idx = MultiIndex::new(2, vec![3], Sign::Plus).unwrap();
/// let phi: f64 = 0.4;
/// let s = evaluate_real_harmonic(&idx, &[2.0 * phi.cos(), 2.0 * phi.sin()]).unwrap();
/// assert!((s - (3.0 * phi).cos() / std::f64::consts::PI.sqrt()).abs() < 1e-14);
/// ```
pub fn evaluate_real_harmonic(idx: &MultiIndex, x: &[f64]) -> Result<f64> {
    let unit = unit_vector(x, idx.dim)?;
    let signed = idx.dim >= 2 && idx.chain[idx.dim - 2] > 0;
    let mut ln_scale = -0.5 * ln_l_norm(idx);
    if signed {
        ln_scale += 0.5 * 2f64.ln();
    }
    Ok(eval_unit(idx, ln_scale.exp(), &unit))
}

fn eval_unit(idx: &MultiIndex, scale: f64, u: &[f64]) -> f64 {
    let dim = idx.dim;
    let m = &idx.chain;
    if dim == 1 {
        return if m[0] == 0 { scale } else { scale * u[0].signum() };
    }

    // r_k for k = 0..N−2 from the tail of the coordinates.
    let mut tail = 0.0;
    let mut radii = vec![0.0; dim - 1];
    for k in (0..dim - 1).rev() {
        if k == dim - 2 {
            tail = u[dim - 2] * u[dim - 2] + u[dim - 1] * u[dim - 1];
        } else {
            tail += u[k] * u[k];
        }
        radii[k] = tail.sqrt();
    }

    let n = dim as f64;
    let mut value = scale;
    for k in 0..dim.saturating_sub(2) {
        let lambda = m[k + 1] as f64 + 0.5 * (n - k as f64 - 2.0);
        value *= gegenbauer_homogeneous(lambda, m[k] - m[k + 1], u[k], radii[k]);
    }

    let last = m[dim - 2];
    if last == 0 {
        return value;
    }
    // (x_{N−1} + i x_N)^{last} in polar form; sign − uses the imaginary part.
    let rho = radii[dim - 2];
    let theta = u[dim - 1].atan2(u[dim - 2]);
    let (s, c) = (last as f64 * theta).sin_cos();
    let modulus = rho.powi(last as i32);
    match idx.sign {
        Sign::Plus => value * modulus * c,
        Sign::Minus => value * modulus * s,
    }
}

/// Right-hand side of the addition theorem:
/// Σ_l S^l_m(x) S^l_m(y) = Γ(N/2) h(m,N) / (2π^{N/2}) · C^{(N−2)/2}_m(cos φ) / C^{(N−2)/2}_m(1),
/// with the Gegenbauer ratio replaced by T_m(cos φ) = cos(mφ) for N ≤ 2.
pub fn zonal_kernel(dim: usize, m: usize, cos_phi: f64) -> f64 {
    let h = harmonic_count(m, dim);
    if h == 0 {
        return 0.0;
    }
    let n = dim as f64;
    let weight = (ln_gamma_pos(0.5 * n) - 0.5 * n * PI.ln()).exp() * h as f64 / 2.0;
    let t = cos_phi.clamp(-1.0, 1.0);
    let lambda = if dim <= 2 { 0.0 } else { 0.5 * (n - 2.0) };
    weight * crate::special::gegenbauer_ratio(lambda, m, t)
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * cur - (kf - 1.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    let nf = n as f64;
    (cur, nf * (x * cur - prev) / (x * x - 1.0))
}

/// Product quadrature on S^{N−1} for N ≤ 3: nodes with weights summing to
/// the surface area. Exact for polynomials of degree below `order` (N = 2)
/// and for spherical polynomials of degree below `order` in each angle (N = 3).
pub fn sphere_quadrature(dim: usize, order: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    if order == 0 {
        return Err(Error::domain("sphere_quadrature", "order must be positive"));
    }
    let ring = |count: usize| -> Vec<(f64, f64)> {
        (0..count)
            .map(|k| {
                let phi = 2.0 * PI * k as f64 / count as f64;
                (phi.cos(), phi.sin())
            })
            .collect()
    };
    match dim {
        1 => Ok(vec![(vec![-1.0], 1.0), (vec![1.0], 1.0)]),
        2 => {
            let w = 2.0 * PI / order as f64;
            Ok(ring(order).into_iter().map(|(c, s)| (vec![c, s], w)).collect())
        }
        3 => {
            let azimuth = ring(2 * order);
            let w_phi = PI / order as f64;
            let mut out = Vec::with_capacity(2 * order * order);
            for (t, w) in gauss_legendre(order) {
                let s = (1.0 - t * t).sqrt();
                for &(c, sn) in &azimuth {
                    out.push((vec![t, s * c, s * sn], w * w_phi));
                }
            }
            Ok(out)
        }
        _ => Err(Error::domain(
            "sphere_quadrature",
            "only dimensions 1 to 3 are supported",
        )),
    }
}
