//! Counter-based standard normal deviates.
//!
//! The deviate ξ^l_mn of replication `rep` is the l-th draw of a ChaCha8
//! stream keyed by a hash of (seed, rep, m, n). It depends on nothing else,
//! so enlarging a truncation only appends new deviates and never reshuffles
//! the ones already in use, and the value fed to a term does not depend on
//! evaluation order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Seed used when none is given on the command line.
pub const DEFAULT_SEED: u64 = 20_240_917;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream key for one (m, n) block of one replication.
pub fn stream_key(seed: u64, rep: u64, m: usize, n: usize) -> u64 {
    let mut h = splitmix64(seed);
    for word in [rep, m as u64, n as u64] {
        h = splitmix64(h ^ word);
    }
    h
}

/// Writes ξ^1_mn, …, ξ^count_mn into `out`.
pub fn fill_block(seed: u64, rep: u64, m: usize, n: usize, out: &mut [f64]) {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_key(seed, rep, m, n));
    for v in out.iter_mut() {
        *v = rng.sample(StandardNormal);
    }
}

/// ξ^l_mn with l counted from 1.
pub fn deviate(seed: u64, rep: u64, m: usize, n: usize, l: usize) -> f64 {
    assert!(l >= 1, "harmonic positions start at 1");
    let mut rng = ChaCha8Rng::seed_from_u64(stream_key(seed, rep, m, n));
    let mut v = 0.0;
    for _ in 0..l {
        v = rng.sample(StandardNormal);
    }
    v
}
