//! Output tables and the zero cache survive a write/read cycle bit for bit.

use std::io::Cursor;

use serde_json::Map;

use mfbm::expansion::{covariance_closed, sample_field, ModelParams, TruncationKind};
use mfbm::grid::GridSpec;
use mfbm::io::{
    cached_zeros, cov_from_table, cov_table, field_from_table, field_table, rate_from_table, rate_table,
    read_zero_cache, write_zero_cache, CovRecord, Format, Table,
};
use mfbm::special::{bessel_zeros, Order};
use mfbm::validation::{rate_regression, tail_sup_norms};

fn reread(table: &Table, format: Format) -> Table {
    Table::read(format, Cursor::new(table.to_string(format))).unwrap()
}

#[test]
fn field_tables_round_trip() {
    let p = ModelParams::new(2, 0.35).unwrap();
    let pts = GridSpec::Disk(9).points(2).unwrap();
    let s = sample_field(
        &p,
        TruncationKind::Rectangle {
            max_degree: 4,
            max_zero: 6,
        },
        &pts,
        99,
    )
    .unwrap();
    for format in [Format::Csv, Format::Jsonl] {
        let back = field_from_table(&reread(&field_table(&s, Some("disk:9")), format)).unwrap();
        assert_eq!(back, s);
    }
}

#[test]
fn covariance_tables_round_trip() {
    let p = ModelParams::new(1, 0.8).unwrap();
    let records: Vec<CovRecord> = [(0.1, -0.3), (1.0 / 3.0, 0.7)]
        .iter()
        .map(|&(x, y)| {
            let closed = covariance_closed(&p, &[x], &[y]).unwrap();
            CovRecord {
                x: vec![x],
                y: vec![y],
                q: 64.0,
                partial: closed * 0.99,
                closed,
                abs_error: closed * 0.01,
            }
        })
        .collect();
    for format in [Format::Csv, Format::Jsonl] {
        let (params, back) = cov_from_table(&reread(&cov_table(&p, &records, Map::new()), format)).unwrap();
        assert_eq!(params, p);
        assert_eq!(back, records);
    }
}

#[test]
fn rate_tables_round_trip() {
    let p = ModelParams::new(1, 0.5).unwrap();
    let pts = GridSpec::Halton(16).points(1).unwrap();
    let lows = [8.0, 32.0, 128.0, 512.0, 2048.0];
    let tails = tail_sup_norms(&p, &lows, 8192.0, &pts, 8, 1).unwrap();
    let ps: Vec<usize> = tails.iter().map(|t| t.term_count).collect();
    let norms: Vec<f64> = tails.iter().map(|t| t.sup_norm.mean).collect();
    let report = rate_regression(&p, &ps, &norms, true).unwrap();
    for format in [Format::Csv, Format::Jsonl] {
        assert_eq!(
            rate_from_table(&reread(&rate_table(&report, &tails, Map::new()), format)).unwrap(),
            report
        );
    }
}

#[test]
fn zero_cache_round_trips_and_recovers_from_corruption() {
    let tables = vec![
        bessel_zeros(Order::new(-0.3).unwrap(), 12).unwrap(),
        bessel_zeros(Order::new(2.0).unwrap(), 5).unwrap(),
    ];
    let mut buf = Vec::new();
    write_zero_cache(&tables, &mut buf).unwrap();
    let back = read_zero_cache(Cursor::new(buf)).unwrap();
    assert_eq!(back.len(), 2);
    for (a, b) in tables.iter().zip(&back) {
        assert_eq!(a.as_slice(), b.as_slice());
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.jsonl");
    let order = Order::new(0.7).unwrap();
    let first = cached_zeros(&path, order, 10).unwrap();
    assert_eq!(
        cached_zeros(&path, order, 4).unwrap().as_slice(),
        &first.as_slice()[..4]
    );
    // a longer request extends the cache
    assert_eq!(cached_zeros(&path, order, 20).unwrap().len(), 20);

    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(
        cached_zeros(&path, order, 3).unwrap().as_slice(),
        &first.as_slice()[..3]
    );
    // a tampered zero fails revalidation
    let mut bad = Vec::new();
    write_zero_cache(std::slice::from_ref(&first), &mut bad).unwrap();
    let text = String::from_utf8(bad)
        .unwrap()
        .replacen(&mfbm::io::format_float(first.as_slice()[0]), "1.5", 1);
    assert!(read_zero_cache(Cursor::new(text)).is_err());
}
