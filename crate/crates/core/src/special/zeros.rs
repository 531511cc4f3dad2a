//! Positive zeros j_{ν,1} < j_{ν,2} < … of J_ν.
//!
//! Each zero is first isolated in a bracket with a verified sign change,
//! bisected down to `BISECT_WIDTH`, then polished with Newton steps that are
//! only accepted while they stay inside the bracket.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::bessel::{j_and_dj, j_unchecked, Order};

const BISECT_WIDTH: f64 = 1e-8;
const ZERO_TOL: f64 = 1e-12;
const MAX_SCAN_STEPS: usize = 1_000_000;
const MAX_BISECT: usize = 200;
const MAX_NEWTON: usize = 50;
const BRACKET_MARGIN: f64 = 0.05;

/// The first `len()` positive zeros of J_ν, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    order: Order,
    zeros: Vec<f64>,
}

impl ZeroTable {
    /// Builds a table from already computed zeros, checking the ordering and
    /// the residual |J_ν(j)| of every entry.
    pub fn from_zeros(order: Order, zeros: Vec<f64>) -> Result<Self> {
        let mut prev = 0.0;
        for &z in &zeros {
            if !(z > prev) {
                return Err(Error::Parse(format!(
                    "zeros of J_{} must be positive and strictly increasing",
                    order.nu()
                )));
            }
            let r = j_unchecked(order.nu(), z);
            if !(r.abs() < ZERO_TOL) {
                return Err(Error::Parse(format!(
                    "{z} is not a zero of J_{} (residual {r:e})",
                    order.nu()
                )));
            }
            prev = z;
        }
        Ok(ZeroTable { order, zeros })
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.zeros
    }

    /// j_{ν,n} with 1-based n.
    pub fn zero(&self, n: usize) -> Result<f64> {
        if n >= 1 && n <= self.zeros.len() {
            Ok(self.zeros[n - 1])
        } else {
            Err(Error::MissingZeros {
                nu: self.order.nu(),
                requested: n,
                available: self.zeros.len(),
            })
        }
    }

    /// Appends zeros until the table holds `count` of them.
    pub fn extend_to(&mut self, count: usize) -> Result<()> {
        let nu = self.order.nu();
        while self.zeros.len() < count {
            let next = match self.zeros.len() {
                0 => first_zero(nu)?,
                k => next_zero(nu, &self.zeros, k)?,
            };
            self.zeros.push(next);
        }
        Ok(())
    }
}

/// The first `count` positive zeros of J_ν.
///
/// ```
/// use mfbm::special::{bessel_zeros, Order};
/// let t = bessel_zeros(Order::new(0.5).unwrap(), 3).unwrap();
/// for (n, z) in t.as_slice().iter().enumerate() {
///     assert!((z - (n as f64 + 1.0) * std::f64::consts::PI).abs() < 1e-12);
/// }
/// ```
pub fn bessel_zeros(order: Order, count: usize) -> Result<ZeroTable> {
    if count == 0 {
        return Err(Error::domain("bessel_zeros", "count must be at least 1"));
    }
    let mut table = ZeroTable {
        order,
        zeros: Vec::with_capacity(count),
    };
    table.extend_to(count)?;
    Ok(table)
}

/// McMahon's large-n expansion of j_{ν,n}.
pub fn mcmahon_estimate(nu: f64, n: usize) -> f64 {
    let beta = (n as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e)
}

/// Sign of J_ν just past its k-th positive zero (k = 0 means near the origin).
fn sign_after(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn first_zero(nu: f64) -> Result<f64> {
    let (start, step) = if nu >= 0.0 {
        // j_{ν,1} > ν, and j_{ν,1} ≥ j_{0,1} > 2.4 for ν ≥ 0.
        (nu.max(1.0), PI / 16.0)
    } else {
        // The first zero of J_ν moves towards 0 as ν → −1 (≈ 2√(ν+1)).
        let step = (PI / 64.0).min(0.5 * (nu + 1.0).sqrt());
        (step, step)
    };
    scan_and_refine(nu, start, step, 0)
}

fn next_zero(nu: f64, zeros: &[f64], k: usize) -> Result<f64> {
    let last = zeros[k - 1];
    if k >= 2 {
        // Successive gaps are monotone in n and tend to π, so the next gap
        // lies between the previous one and π.
        let gap = last - zeros[k - 2];
        let lo = last + gap.min(PI) - BRACKET_MARGIN;
        let hi = last + gap.max(PI) + BRACKET_MARGIN;
        let flo = j_unchecked(nu, lo);
        let fhi = j_unchecked(nu, hi);
        if flo * sign_after(k) > 0.0 && fhi * sign_after(k) < 0.0 {
            return refine(nu, lo, hi, flo);
        }
    }
    scan_and_refine(nu, last + 0.5, PI / 32.0, k)
}

fn scan_and_refine(nu: f64, start: f64, step: f64, k: usize) -> Result<f64> {
    let mut a = start;
    let mut fa = j_unchecked(nu, a);
    for _ in 0..MAX_SCAN_STEPS {
        let b = a + step;
        let fb = j_unchecked(nu, b);
        if fa == 0.0 {
            return Ok(a);
        }
        if fa * fb < 0.0 {
            if fa * sign_after(k) < 0.0 {
                return Err(Error::RootFinder {
                    nu,
                    near: a,
                    reason: "scan started past the wanted zero".into(),
                });
            }
            return refine(nu, a, b, fa);
        }
        a = b;
        fa = fb;
    }
    Err(Error::RootFinder {
        nu,
        near: a,
        reason: "no sign change found within the scan limit".into(),
    })
}

fn refine(nu: f64, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<f64> {
    let mut iters = 0;
    while hi - lo > BISECT_WIDTH {
        iters += 1;
        if iters > MAX_BISECT {
            return Err(Error::RootFinder {
                nu,
                near: lo,
                reason: "bisection did not shrink the bracket".into(),
            });
        }
        let mid = 0.5 * (lo + hi);
        let fm = j_unchecked(nu, mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm * flo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON {
        let (f, df) = j_and_dj(nu, x);
        if f == 0.0 {
            break;
        }
        // keep the bracket valid for the fallback
        if f * flo < 0.0 {
            hi = x;
        } else {
            lo = x;
            flo = f;
        }
        let step = f / df;
        let next = x - step;
        if !(next > lo && next < hi) || !next.is_finite() {
            x = 0.5 * (lo + hi);
            if hi - lo <= f64::EPSILON * x {
                break;
            }
            continue;
        }
        x = next;
        if step.abs() <= 4.0 * f64::EPSILON * x {
            break;
        }
    }

    let residual = j_unchecked(nu, x);
    if residual.abs() < ZERO_TOL {
        Ok(x)
    } else {
        Err(Error::RootFinder {
            nu,
            near: x,
            reason: format!("residual {residual:e} above {ZERO_TOL:e}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeros(nu: f64, count: usize) -> Vec<f64> {
        bessel_zeros(Order::new(nu).unwrap(), count).unwrap().zeros
    }

    #[test]
    fn half_integer_orders() {
        let z = zeros(0.5, 3);
        for (n, &j) in z.iter().enumerate() {
            assert!((j - (n + 1) as f64 * PI).abs() < 1e-12);
        }
        let z = zeros(-0.5, 2);
        assert!((z[0] - PI / 2.0).abs() < 1e-12);
        assert!((z[1] - 1.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn first_zero_of_j0_matches_bisection_oracle() {
        // Oracle: plain bisection of the power series on [2, 3].
        let series = |x: f64| {
            let q = -0.25 * x * x;
            let (mut t, mut s) = (1.0f64, 1.0f64);
            for k in 1..60 {
                t *= q / (k * k) as f64;
                s += t;
            }
            s
        };
        let (mut a, mut b) = (2.0f64, 3.0f64);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if series(a) * series(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        let oracle = 0.5 * (a + b);
        assert!((oracle - 2.404_825_557_695_773).abs() < 1e-13);
        assert!((zeros(0.0, 1)[0] - oracle).abs() < 1e-12);
    }

    #[test]
    fn matches_high_precision_reference() {
        let table: [(f64, [f64; 4]); 4] = [
            (
                0.0,
                [
                    2.404_825_557_695_772_8,
                    5.520_078_110_286_310_6,
                    30.634_606_468_431_975,
                    313.374_266_077_527_84,
                ],
            ),
            (
                -0.7,
                [
                    1.171_454_672_983_769_8,
                    4.371_391_586_085_331_5,
                    29.526_909_084_740_4,
                    312.273_925_490_715_46,
                ],
            ),
            (
                -0.25,
                [
                    2.006_299_671_789_450_4,
                    5.123_062_742_746_341,
                    30.240_927_652_200_766,
                    312.981_467_650_808_6,
                ],
            ),
            (
                1.3,
                [
                    4.231_448_685_189_517,
                    7.443_744_313_679_813,
                    32.650_519_730_892_464,
                    315.413_619_712_234_94,
                ],
            ),
        ];
        for (nu, want) in table {
            let z = zeros(nu, 100);
            for (idx, &n) in [1usize, 2, 10, 100].iter().enumerate() {
                assert!((z[n - 1] - want[idx]).abs() < 1e-10 * want[idx], "nu = {nu}, n = {n}");
            }
        }
        let z = zeros(35.5, 10);
        assert!((z[0] - 41.913_091_196_344_585).abs() < 1e-10);
        assert!((z[1] - 47.120_239_263_048_25).abs() < 1e-10);
        assert!((z[9] - 78.189_535_907_305_97).abs() < 1e-10);
    }

    #[test]
    fn table_invariants() {
        for &nu in &[-0.95, -0.7, -0.3, 0.0, 0.5, 1.7, 12.0, 60.3] {
            let z = zeros(nu, 120);
            assert!(z[0] > 0.0);
            for w in z.windows(2) {
                assert!(w[1] > w[0]);
            }
            for &x in &z {
                assert!(j_unchecked(nu, x).abs() < 1e-12);
            }
            let last_gap = z[119] - z[118];
            assert!((last_gap - PI).abs() < 0.05, "nu = {nu}, gap = {last_gap}");
            // McMahon is accurate far out
            assert!((z[119] - mcmahon_estimate(nu, 120)).abs() < 1e-3 * z[119]);
        }
    }

    #[test]
    fn extending_matches_fresh_computation() {
        let order = Order::new(0.3).unwrap();
        let mut t = bessel_zeros(order, 5).unwrap();
        t.extend_to(40).unwrap();
        assert_eq!(t, bessel_zeros(order, 40).unwrap());
        assert!(t.zero(41).is_err());
        assert!(t.zero(0).is_err());
    }

    #[test]
    fn from_zeros_rejects_garbage() {
        let order = Order::new(0.5).unwrap();
        assert!(ZeroTable::from_zeros(order, vec![PI, 2.0 * PI]).is_ok());
        assert!(ZeroTable::from_zeros(order, vec![2.0 * PI, PI]).is_err());
        assert!(ZeroTable::from_zeros(order, vec![3.0]).is_err());
    }

    #[test]
    fn zero_count_must_be_positive() {
        assert!(bessel_zeros(Order::new(0.0).unwrap(), 0).is_err());
    }
}
