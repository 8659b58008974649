//! CSV and JSON encodings of the command outputs, and the readers used to
//! check emitted files.
//!
//! CSV: comma separated, header row, LF line endings, numeric fields only.
//! Floats carry 12 significant digits.

use num_bigint::BigUint;
use permprob_core::{ExactCounts, GridRow, MatrixFamily, TermDistribution};
use serde_json::{json, Value};

use crate::error::CliError;

/// Formats `x` with 12 significant digits, `%.12g` style.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{exp}")
    } else {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii output")
}

fn read_records(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), CliError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| CliError::Input(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let rows = reader
        .records()
        .map(|r| {
            r.map(|rec| rec.iter().map(str::to_string).collect())
                .map_err(|e| CliError::Input(e.to_string()))
        })
        .collect::<Result<_, _>>()?;
    Ok((header, rows))
}

fn parse_field<T: std::str::FromStr>(field: &str, what: &str) -> Result<T, CliError> {
    field
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("bad {what} {field:?}")))
}

fn expect_header(header: &[String], expected: &[&str]) -> Result<(), CliError> {
    if header.iter().map(String::as_str).eq(expected.iter().copied()) {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "expected header {}, got {}",
            expected.join(","),
            header.join(",")
        )))
    }
}

/// One `(n, m, count)` entry of a term-count triangle.
pub type DistRow = (usize, usize, BigUint);

pub fn dist_rows(dists: &[TermDistribution]) -> Vec<DistRow> {
    dists
        .iter()
        .flat_map(|d| d.counts().iter().enumerate().map(move |(m, c)| (d.n(), m, c.clone())))
        .collect()
}

pub fn dist_csv(rows: &[DistRow]) -> String {
    let mut w = csv_writer();
    w.write_record(["n", "m", "count"]).expect("in-memory");
    for (n, m, c) in rows {
        w.write_record([n.to_string(), m.to_string(), c.to_string()])
            .expect("in-memory");
    }
    finish(w)
}

pub fn read_dist_csv(text: &str) -> Result<Vec<DistRow>, CliError> {
    let (header, rows) = read_records(text)?;
    expect_header(&header, &["n", "m", "count"])?;
    rows.iter()
        .map(|r| {
            if r.len() != 3 {
                return Err(CliError::Input(format!("expected 3 fields, got {}", r.len())));
            }
            Ok((
                parse_field(&r[0], "n")?,
                parse_field(&r[1], "m")?,
                parse_field(&r[2], "count")?,
            ))
        })
        .collect()
}

pub fn dist_json(family: MatrixFamily, dists: &[TermDistribution]) -> Value {
    json!({
        "family": family.to_string(),
        "rows": dists.iter().map(|d| json!({
            "n": d.n(),
            "counts": d.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// One compare series: the approximate and exact curves of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub family: MatrixFamily,
    pub rows: Vec<GridRow>,
}

pub fn compare_header(families: &[MatrixFamily]) -> Vec<String> {
    std::iter::once("r".to_string())
        .chain(families.iter().flat_map(|f| [format!("Q_{f}"), format!("P_{f}")]))
        .collect()
}

pub fn compare_csv(series: &[Series]) -> String {
    let families: Vec<MatrixFamily> = series.iter().map(|s| s.family).collect();
    let table: Vec<Vec<f64>> = grid_table(series);
    write_float_table(&compare_header(&families), &table)
}

fn grid_table(series: &[Series]) -> Vec<Vec<f64>> {
    let len = series.first().map_or(0, |s| s.rows.len());
    (0..len)
        .map(|k| {
            std::iter::once(series[0].rows[k].r)
                .chain(series.iter().flat_map(|s| [s.rows[k].q, s.rows[k].p]))
                .collect()
        })
        .collect()
}

pub fn write_float_table(header: &[String], rows: &[Vec<f64>]) -> String {
    let mut w = csv_writer();
    w.write_record(header).expect("in-memory");
    for row in rows {
        w.write_record(row.iter().map(|&x| format_float(x))).expect("in-memory");
    }
    finish(w)
}

pub fn read_float_table(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), CliError> {
    let (header, rows) = read_records(text)?;
    let parsed = rows
        .iter()
        .map(|r| {
            if r.len() != header.len() {
                return Err(CliError::Input(format!(
                    "expected {} fields, got {}",
                    header.len(),
                    r.len()
                )));
            }
            r.iter().map(|f| parse_field(f, "number")).collect()
        })
        .collect::<Result<_, _>>()?;
    Ok((header, parsed))
}

pub fn compare_json(n: usize, series: &[Series]) -> Value {
    json!({
        "n": n,
        "series": series.iter().map(|s| json!({
            "family": s.family.to_string(),
            "target": s.family.target(),
            "r": s.rows.iter().map(|g| g.r).collect::<Vec<_>>(),
            "q": s.rows.iter().map(|g| g.q).collect::<Vec<_>>(),
            "p": s.rows.iter().map(|g| g.p).collect::<Vec<_>>(),
            "max_abs_diff": s.rows.iter().map(|g| g.diff().abs()).fold(0.0, f64::max),
        })).collect::<Vec<_>>(),
    })
}

pub fn exact_csv(counts: &[u64]) -> String {
    let mut w = csv_writer();
    w.write_record(["i", "count"]).expect("in-memory");
    for (i, c) in counts.iter().enumerate() {
        w.write_record([i.to_string(), c.to_string()]).expect("in-memory");
    }
    finish(w)
}

pub fn read_exact_csv(text: &str) -> Result<Vec<u64>, CliError> {
    let (header, rows) = read_records(text)?;
    expect_header(&header, &["i", "count"])?;
    rows.iter()
        .enumerate()
        .map(|(k, r)| {
            if r.len() != 2 {
                return Err(CliError::Input(format!("expected 2 fields, got {}", r.len())));
            }
            let i: usize = parse_field(&r[0], "i")?;
            if i != k {
                return Err(CliError::Input(format!("row {k} has index {i}")));
            }
            parse_field(&r[1], "count")
        })
        .collect()
}

pub fn exact_json(e: &ExactCounts) -> Value {
    json!({
        "family": e.family().to_string(),
        "n": e.n(),
        "target": e.family().target(),
        "variable_count": e.variable_count(),
        "counts": e.counts(),
        "polynomial": e.bernstein_string(),
    })
}
