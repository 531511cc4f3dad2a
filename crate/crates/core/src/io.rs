//! Text formats shared by the library and the command-line tool.
//!
//! Tables come in two flavours. CSV starts with a `# {json}` metadata line,
//! then a header row, then comma-separated rows. JSON lines start with a
//! `{"metadata": {...}}` record followed by one object per row. Floats are
//! written in the shortest form that parses back to the same bits, so every
//! table round-trips exactly.
//!
//! The zero cache is a separate line-delimited format: one
//! `{"nu": "...", "zeros": ["...", ...]}` record per order, numbers as
//! decimal strings.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::expansion::{FieldSample, ModelParams, TruncationKind};
use crate::special::{bessel_zeros, Order, ZeroTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json-lines" => Ok(Format::Jsonl),
            other => Err(Error::Parse(format!(
                "unknown format '{other}' (expected csv or jsonl)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        })
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Result<f64> {
        match self {
            Cell::Float(v) => Ok(*v),
            Cell::Int(v) => Ok(*v as f64),
            Cell::Text(t) => Err(Error::Parse(format!("expected a number, found '{t}'"))),
        }
    }

    pub fn as_usize(&self) -> Result<usize> {
        match self {
            Cell::Int(v) if *v >= 0 => Ok(*v as usize),
            other => Err(Error::Parse(format!("expected a nonnegative integer, found {other:?}"))),
        }
    }

    pub fn as_text(&self) -> Result<&str> {
        match self {
            Cell::Text(t) => Ok(t),
            other => Err(Error::Parse(format!("expected text, found {other:?}"))),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(t) => t.clone(),
        }
    }

    fn from_csv(s: &str) -> Cell {
        if let Ok(v) = s.parse::<i64>() {
            return Cell::Int(v);
        }
        match s.parse::<f64>() {
            Ok(v) => Cell::Float(v),
            Err(_) => Cell::Text(s.to_string()),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(t) => json!(t),
        }
    }

    fn from_json(v: &Value) -> Result<Cell> {
        match v {
            Value::Number(n) if n.is_i64() => Ok(Cell::Int(n.as_i64().unwrap())),
            Value::Number(n) => Ok(Cell::Float(n.as_f64().unwrap())),
            Value::String(s) => Ok(Cell::Text(s.clone())),
            other => Err(Error::Parse(format!("unsupported cell {other}"))),
        }
    }
}

/// Shortest decimal form that parses back to the same bits; always has a
/// '.' or exponent so it is never mistaken for an integer.
pub fn format_float(v: f64) -> String {
    format!("{v:?}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(metadata: Map<String, Value>, columns: Vec<String>) -> Self {
        Table {
            metadata,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Parse(format!("missing column '{name}'")))
    }

    fn meta<T: for<'de> Deserialize<'de>>(&self, key: &str) -> Result<T> {
        let v = self
            .metadata
            .get(key)
            .ok_or_else(|| Error::Parse(format!("missing metadata field '{key}'")))?;
        Ok(serde_json::from_value(v.clone())?)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "# {}", Value::Object(self.metadata.clone()))?;
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::to_csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Jsonl => {
                writeln!(out, "{}", json!({ "metadata": Value::Object(self.metadata.clone()) }))?;
                for row in &self.rows {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::to_json))
                        .collect();
                    writeln!(out, "{}", Value::Object(obj))?;
                }
            }
        }
        Ok(())
    }

    pub fn to_string(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.write(format, &mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("tables are UTF-8")
    }

    pub fn read(format: Format, input: impl BufRead) -> Result<Table> {
        let mut lines = input.lines();
        let mut next = || -> Result<Option<String>> { lines.next().transpose().map_err(Error::from) };
        let first = next()?.ok_or_else(|| Error::Parse("empty input".into()))?;
        match format {
            Format::Csv => {
                let meta = first
                    .strip_prefix("# ")
                    .ok_or_else(|| Error::Parse("CSV must start with a '# ' metadata line".into()))?;
                let metadata = match serde_json::from_str(meta)? {
                    Value::Object(m) => m,
                    _ => return Err(Error::Parse("metadata is not an object".into())),
                };
                let header = next()?.ok_or_else(|| Error::Parse("missing header row".into()))?;
                let columns: Vec<String> = header.split(',').map(str::to_string).collect();
                let mut rows = Vec::new();
                while let Some(line) = next()? {
                    if line.is_empty() {
                        continue;
                    }
                    let row: Vec<Cell> = line.split(',').map(Cell::from_csv).collect();
                    if row.len() != columns.len() {
                        return Err(Error::Parse(format!(
                            "row has {} cells, header has {}",
                            row.len(),
                            columns.len()
                        )));
                    }
                    rows.push(row);
                }
                Ok(Table {
                    metadata,
                    columns,
                    rows,
                })
            }
            Format::Jsonl => {
                let metadata = match serde_json::from_str::<Value>(&first)? {
                    Value::Object(mut m) => match m.remove("metadata") {
                        Some(Value::Object(meta)) => meta,
                        _ => return Err(Error::Parse("first record must hold a metadata object".into())),
                    },
                    _ => return Err(Error::Parse("first record must be an object".into())),
                };
                let mut columns: Vec<String> = Vec::new();
                let mut rows = Vec::new();
                while let Some(line) = next()? {
                    if line.is_empty() {
                        continue;
                    }
                    let obj = match serde_json::from_str::<Value>(&line)? {
                        Value::Object(o) => o,
                        _ => return Err(Error::Parse("row is not an object".into())),
                    };
                    if columns.is_empty() {
                        columns = obj.keys().cloned().collect();
                    }
                    let row = columns
                        .iter()
                        .map(|c| {
                            obj.get(c)
                                .ok_or_else(|| Error::Parse(format!("row lacks '{c}'")))
                                .and_then(Cell::from_json)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(row);
                }
                Ok(Table {
                    metadata,
                    columns,
                    rows,
                })
            }
        }
    }
}

fn coordinate_columns(prefix: &str, dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("{prefix}{i}")).collect()
}

// ---------------------------------------------------------------- field

pub fn field_table(sample: &FieldSample, grid: Option<&str>) -> Table {
    let mut meta = Map::new();
    meta.insert("kind".into(), json!("field"));
    meta.insert("params".into(), json!(sample.params));
    meta.insert("truncation".into(), json!(sample.truncation));
    meta.insert("term_count".into(), json!(sample.term_count));
    meta.insert("seed".into(), json!(sample.seed));
    if let Some(g) = grid {
        meta.insert("grid".into(), json!(g));
    }
    let mut columns = coordinate_columns("x", sample.params.dim());
    columns.push("value".into());
    let mut table = Table::new(meta, columns);
    for (p, v) in sample.points.iter().zip(&sample.values) {
        let mut row: Vec<Cell> = p.iter().map(|&c| Cell::Float(c)).collect();
        row.push(Cell::Float(*v));
        table.rows.push(row);
    }
    table
}

pub fn field_from_table(table: &Table) -> Result<FieldSample> {
    let params: ModelParams = table.meta("params")?;
    let truncation: TruncationKind = table.meta("truncation")?;
    let dim = params.dim();
    let coords = coordinate_columns("x", dim)
        .iter()
        .map(|c| table.column(c))
        .collect::<Result<Vec<_>>>()?;
    let value = table.column("value")?;
    let mut points = Vec::with_capacity(table.rows.len());
    let mut values = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        points.push(coords.iter().map(|&i| row[i].as_f64()).collect::<Result<Vec<_>>>()?);
        values.push(row[value].as_f64()?);
    }
    Ok(FieldSample {
        params,
        truncation,
        term_count: table.meta("term_count")?,
        seed: table.meta("seed")?,
        points,
        values,
    })
}

// ----------------------------------------------------------- covariance

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovRecord {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub q: f64,
    pub partial: f64,
    pub closed: f64,
    pub abs_error: f64,
}

pub fn cov_table(params: &ModelParams, records: &[CovRecord], extra: Map<String, Value>) -> Table {
    let mut meta = extra;
    meta.insert("kind".into(), json!("covariance"));
    meta.insert("params".into(), json!(params));
    let dim = params.dim();
    let mut columns = coordinate_columns("x", dim);
    columns.extend(coordinate_columns("y", dim));
    columns.extend(["q", "partial", "closed", "abs_error"].map(String::from));
    let mut table = Table::new(meta, columns);
    for r in records {
        let mut row: Vec<Cell> = r.x.iter().chain(&r.y).map(|&c| Cell::Float(c)).collect();
        row.extend([r.q, r.partial, r.closed, r.abs_error].map(Cell::Float));
        table.rows.push(row);
    }
    table
}

pub fn cov_from_table(table: &Table) -> Result<(ModelParams, Vec<CovRecord>)> {
    let params: ModelParams = table.meta("params")?;
    let dim = params.dim();
    let xs = coordinate_columns("x", dim)
        .iter()
        .map(|c| table.column(c))
        .collect::<Result<Vec<_>>>()?;
    let ys = coordinate_columns("y", dim)
        .iter()
        .map(|c| table.column(c))
        .collect::<Result<Vec<_>>>()?;
    let [q, partial, closed, err] = ["q", "partial", "closed", "abs_error"].map(|c| table.column(c));
    let (q, partial, closed, err) = (q?, partial?, closed?, err?);
    let records = table
        .rows
        .iter()
        .map(|row| {
            Ok(CovRecord {
                x: xs.iter().map(|&i| row[i].as_f64()).collect::<Result<_>>()?,
                y: ys.iter().map(|&i| row[i].as_f64()).collect::<Result<_>>()?,
                q: row[q].as_f64()?,
                partial: row[partial].as_f64()?,
                closed: row[closed].as_f64()?,
                abs_error: row[err].as_f64()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((params, records))
}

// ----------------------------------------------------------------- rate

/// Rows q_low, p, tail, std_error; the fit and the run settings go in the metadata.
pub fn rate_table(
    report: &crate::validation::RateReport,
    tails: &[crate::validation::TailEstimate],
    extra: Map<String, Value>,
) -> Table {
    let mut meta = extra;
    meta.insert("kind".into(), json!("rate"));
    meta.insert("params".into(), json!(report.params));
    meta.insert("fitted_slope".into(), json!(report.fitted_slope));
    meta.insert("expected_slope".into(), json!(report.expected_slope));
    meta.insert("log_correction_used".into(), json!(report.log_correction_used));
    let mut table = Table::new(meta, ["q_low", "p", "tail", "std_error"].map(String::from).to_vec());
    for t in tails {
        table.rows.push(vec![
            Cell::Float(t.q_low),
            Cell::Int(t.term_count as i64),
            Cell::Float(t.sup_norm.mean),
            Cell::Float(t.sup_norm.std_error),
        ]);
    }
    table
}

pub fn rate_from_table(table: &Table) -> Result<crate::validation::RateReport> {
    let p = table.column("p")?;
    let tail = table.column("tail")?;
    Ok(crate::validation::RateReport {
        params: table.meta("params")?,
        p_values: table.rows.iter().map(|r| r[p].as_usize()).collect::<Result<_>>()?,
        tail_norms: table.rows.iter().map(|r| r[tail].as_f64()).collect::<Result<_>>()?,
        fitted_slope: table.meta("fitted_slope")?,
        expected_slope: table.meta("expected_slope")?,
        log_correction_used: table.meta("log_correction_used")?,
    })
}

// ------------------------------------------------------------ harmonics

/// One row per basis element: degree, position l (from 1), chain, sign, L and 1/√L scaling.
pub fn harmonics_table(dim: usize, bases: &[crate::harmonics::HarmonicBasis]) -> Table {
    let mut meta = Map::new();
    meta.insert("kind".into(), json!("harmonics"));
    meta.insert("dim".into(), json!(dim));
    let mut table = Table::new(
        meta,
        ["degree", "l", "chain", "sign", "l_norm", "scale"]
            .map(String::from)
            .to_vec(),
    );
    for b in bases {
        for (l, e) in b.entries().iter().enumerate() {
            let chain: Vec<String> = e.index.chain().iter().map(|m| m.to_string()).collect();
            table.rows.push(vec![
                Cell::Int(b.degree() as i64),
                Cell::Int(l as i64 + 1),
                Cell::Text(chain.join(" ")),
                Cell::Text(e.index.sign().to_string()),
                Cell::Float(crate::harmonics::l_norm(&e.index)),
                Cell::Float(e.scale),
            ]);
        }
    }
    table
}

// ------------------------------------------------------------ zero cache

#[derive(Debug, Serialize, Deserialize)]
struct ZeroRecord {
    nu: String,
    zeros: Vec<String>,
}

pub fn write_zero_cache(tables: &[ZeroTable], out: &mut impl Write) -> Result<()> {
    for t in tables {
        let rec = ZeroRecord {
            nu: format_float(t.order().nu()),
            zeros: t.as_slice().iter().map(|&z| format_float(z)).collect(),
        };
        writeln!(out, "{}", serde_json::to_string(&rec)?)?;
    }
    Ok(())
}

/// Parses a zero cache. Every table is re-validated (|J_ν| < 1e−12 at each zero).
pub fn read_zero_cache(input: impl BufRead) -> Result<Vec<ZeroTable>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ZeroRecord = serde_json::from_str(&line)?;
        let nu: f64 = rec
            .nu
            .parse()
            .map_err(|_| Error::Parse(format!("bad order '{}'", rec.nu)))?;
        let zeros = rec
            .zeros
            .iter()
            .map(|z| z.parse::<f64>().map_err(|_| Error::Parse(format!("bad zero '{z}'"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(ZeroTable::from_zeros(Order::new(nu)?, zeros)?);
    }
    Ok(out)
}

/// Zeros for `order` from the cache file when it holds enough of them,
/// otherwise computed and written back. A missing or unreadable cache is
/// treated as empty.
pub fn cached_zeros(path: &Path, order: Order, count: usize) -> Result<ZeroTable> {
    let mut tables: BTreeMap<u64, ZeroTable> = fs::File::open(path)
        .ok()
        .and_then(|f| read_zero_cache(std::io::BufReader::new(f)).ok())
        .unwrap_or_default()
        .into_iter()
        .map(|t| (t.order().nu().to_bits(), t))
        .collect();
    if let Some(t) = tables.get(&order.nu().to_bits()) {
        if t.len() >= count {
            let zeros = t.as_slice()[..count].to_vec();
            return ZeroTable::from_zeros(order, zeros);
        }
    }
    let fresh = bessel_zeros(order, count)?;
    tables.insert(order.nu().to_bits(), fresh.clone());
    let mut buf = Vec::new();
    write_zero_cache(&tables.into_values().collect::<Vec<_>>(), &mut buf)?;
    fs::write(path, buf)?;
    Ok(fresh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::sample_field;
    use crate::grid::GridSpec;

    fn round_trip(table: &Table, format: Format) -> Table {
        let text = table.to_string(format);
        Table::read(format, text.as_bytes()).unwrap()
    }

    #[test]
    fn field_round_trips_exactly() {
        let p = ModelParams::new(2, 0.37).unwrap();
        let pts = GridSpec::Disk(7).points(2).unwrap();
        let s = sample_field(&p, TruncationKind::LevelSet { q: 300.0 }, &pts, 5).unwrap();
        for format in [Format::Csv, Format::Jsonl] {
            let back = field_from_table(&round_trip(&field_table(&s, Some("disk:7")), format)).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn awkward_floats_survive() {
        let mut t = Table::new(Map::new(), vec!["v".into()]);
        for v in [0.1, 1e-300, -2.5e17, 1.0 / 3.0, 5e-324, 0.0, 3.0] {
            t.rows.push(vec![Cell::Float(v)]);
        }
        for format in [Format::Csv, Format::Jsonl] {
            let back = round_trip(&t, format);
            for (a, b) in back.rows.iter().zip(&t.rows) {
                assert_eq!(a[0].as_f64().unwrap().to_bits(), b[0].as_f64().unwrap().to_bits());
            }
        }
    }

    #[test]
    fn cov_round_trips() {
        let p = ModelParams::new(3, 0.3).unwrap();
        let rec = CovRecord {
            x: vec![0.1, 0.2, -0.3],
            y: vec![0.5, 0.0, 0.25],
            q: 4096.0,
            partial: 0.123456789,
            closed: 0.1234,
            abs_error: 5.6789e-5,
        };
        for format in [Format::Csv, Format::Jsonl] {
            let (pb, rb) = cov_from_table(&round_trip(
                &cov_table(&p, std::slice::from_ref(&rec), Map::new()),
                format,
            ))
            .unwrap();
            assert_eq!(pb, p);
            assert_eq!(rb, vec![rec.clone()]);
        }
    }

    #[test]
    fn zero_cache_round_trip_and_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeros.jsonl");
        let order = Order::new(-0.3).unwrap();
        let a = cached_zeros(&path, order, 5).unwrap();
        let b = cached_zeros(&path, order, 3).unwrap();
        assert_eq!(&a.as_slice()[..3], b.as_slice());
        // larger request recomputes and rewrites
        let c = cached_zeros(&path, order, 8).unwrap();
        assert_eq!(&c.as_slice()[..5], a.as_slice());
        let tables = read_zero_cache(std::io::BufReader::new(fs::File::open(&path).unwrap())).unwrap();
        assert_eq!(tables.len(), 1);
        assert_eq!(tables[0].len(), 8);
    }

    #[test]
    fn corrupt_cache_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeros.jsonl");
        fs::write(&path, "{\"nu\":\"0.5\",\"zeros\":[\"3.0\"]}\n").unwrap();
        // 3.0 is not a zero of J_{1/2}; the cache is discarded
        let t = cached_zeros(&path, Order::new(0.5).unwrap(), 1).unwrap();
        assert!((t.as_slice()[0] - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(Table::read(Format::Csv, "x1,value\n1.0,2.0\n".as_bytes()).is_err());
        assert!(Table::read(Format::Csv, "# {}\na,b\n1.0\n".as_bytes()).is_err());
        assert!(Table::read(Format::Jsonl, "[1,2]\n".as_bytes()).is_err());
        assert!("tsv".parse::<Format>().is_err());
    }
}
