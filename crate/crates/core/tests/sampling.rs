//! Statistical behaviour of realisations of the truncated field.

use mfbm::expansion::{
    covariance_partial, resolve_truncation, sample_field, CoefficientTable, Expansion, ModelParams, TruncationKind,
};
use mfbm::grid::GridSpec;
use mfbm::validation::{
    empirical_covariance, empirical_increment_variance, realisations, sample_kurtosis, tail_sup_norm, tail_sup_norms,
};
use mfbm::Error;

fn setup(dim: usize, h: f64, q: f64) -> (Expansion, CoefficientTable) {
    let p = ModelParams::new(dim, h).unwrap();
    let kind = TruncationKind::LevelSet { q };
    let t = CoefficientTable::new(&p, &resolve_truncation(kind, &p).unwrap()).unwrap();
    (Expansion::new(&p, kind).unwrap(), t)
}

#[test]
fn empirical_covariance_matches_truncated_kernel() {
    let (e, t) = setup(2, 0.4, 256.0);
    let x = [0.5, -0.2];
    let y = [-0.1, 0.6];
    let est = empirical_covariance(&e, &x, &y, 6000, 11).unwrap();
    let want = covariance_partial(&t, &x, &y).unwrap();
    assert!(est.z_score(want).abs() < 4.0, "{est:?} vs {want}");
}

#[test]
fn increment_variance_matches_truncated_kernel() {
    let (e, t) = setup(3, 0.6, 256.0);
    let x = [0.3, 0.3, -0.2];
    let y = [-0.4, 0.1, 0.5];
    let est = empirical_increment_variance(&e, &x, &y, 6000, 12).unwrap();
    let c = |a: &[f64], b: &[f64]| covariance_partial(&t, a, b).unwrap();
    let want = c(&x, &x) + c(&y, &y) - 2.0 * c(&x, &y);
    assert!(est.z_score(want).abs() < 4.0, "{est:?} vs {want}");
}

#[test]
fn field_values_are_gaussian() {
    let (e, _) = setup(2, 0.5, 128.0);
    let v = realisations(&e, &[vec![0.4, 0.4]], 20000, 13).unwrap();
    let column: Vec<f64> = v.iter().map(|r| r[0]).collect();
    let k = sample_kurtosis(&column).unwrap();
    // standard error of the kurtosis is about sqrt(24 / n) = 0.035
    assert!((k - 3.0).abs() < 0.15, "kurtosis {k}");
}

#[test]
fn field_vanishes_at_origin_and_repeats_per_seed() {
    let p = ModelParams::new(3, 0.3).unwrap();
    let pts = GridSpec::Ball(5).points(3).unwrap();
    let kind = TruncationKind::LevelSet { q: 100.0 };
    let a = sample_field(&p, kind, &pts, 5).unwrap();
    let b = sample_field(&p, kind, &pts, 5).unwrap();
    let c = sample_field(&p, kind, &pts, 6).unwrap();
    let origin = pts.iter().position(|x| x.iter().all(|&v| v == 0.0)).unwrap();
    assert_eq!(a.values[origin], 0.0);
    assert_eq!(a, b);
    assert_ne!(a.values, c.values);
}

#[test]
fn larger_truncation_refines_the_same_realisation() {
    // the deviate for (m, n, l) does not depend on the truncation
    let p = ModelParams::new(2, 0.5).unwrap();
    let pts = GridSpec::Halton(32).points(2).unwrap();
    let coarse = sample_field(&p, TruncationKind::LevelSet { q: 1024.0 }, &pts, 3).unwrap();
    let fine = sample_field(&p, TruncationKind::LevelSet { q: 4096.0 }, &pts, 3).unwrap();
    let tails = tail_sup_norms(&p, &[1024.0], 4096.0, &pts, 2, 3).unwrap();
    let rms =
        |a: &[f64], b: &[f64]| (a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / a.len() as f64).sqrt();
    let spread = rms(&fine.values, &vec![0.0; pts.len()]);
    assert!(rms(&coarse.values, &fine.values) < 0.5 * spread);
    assert!(tails[0].sup_norm.mean > 0.0);
}

#[test]
fn tail_norm_decreases_with_level() {
    let p = ModelParams::new(2, 0.5).unwrap();
    let pts = GridSpec::Halton(128).points(2).unwrap();
    let tails = tail_sup_norms(&p, &[16.0, 64.0, 256.0, 1024.0], 4096.0, &pts, 50, 4).unwrap();
    for w in tails.windows(2) {
        assert!(w[1].sup_norm.mean < w[0].sup_norm.mean);
        assert!(w[1].term_count > w[0].term_count);
    }
    let single = tail_sup_norm(&p, 64.0, 4096.0, &pts, 50, 4).unwrap();
    assert_eq!(single, tails[1].sup_norm.mean);
}

#[test]
fn points_outside_the_ball_are_rejected() {
    let p = ModelParams::new(2, 0.5).unwrap();
    let err = sample_field(&p, TruncationKind::LevelSet { q: 16.0 }, &[vec![0.9, 0.9]], 1).unwrap_err();
    assert!(matches!(err, Error::OutsideBall { index: 0, .. }));
    let err = sample_field(&p, TruncationKind::LevelSet { q: 16.0 }, &[vec![0.1]], 1).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { expected: 2, found: 1 }));
}

#[test]
fn too_few_replications_is_an_error() {
    let (e, _) = setup(1, 0.5, 16.0);
    assert!(empirical_covariance(&e, &[0.1], &[0.2], 10, 1).is_err());
}
