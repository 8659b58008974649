//! The `dist`, `compare`, `exact`, `validate` and `seq` subcommands.
//!
//! Each command returns the artifact text plus any notes for stderr; the
//! caller decides where the artifact goes.

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use permprob_core::oeis::OeisClient;
use permprob_core::reference::{exact_n3_padded, V_TABLE, W_TABLE};
use permprob_core::sequences::builtin_checks;
use permprob_core::terms::factorial;
use permprob_core::{
    compare_on, e_table, e_table_bruteforce_with, exact_counts_with, permanent_ryser, uniform_grid, v_closed_form,
    v_via_w, w_closed_form, w_recurrence_table, w_via_cycles, ApproxModel, BinaryMatrix, Limits, MatrixFamily,
};

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::output::{self, Series};
use crate::svg;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Artifact {
    pub body: String,
    /// Human-readable notes for stderr.
    pub notes: Vec<String>,
}

fn json_body(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
    s.push('\n');
    s
}

fn check_table_n(n: usize, limits: &Limits) -> Result<(), CliError> {
    if n > limits.table_max_n {
        return Err(CliError::Guard(permprob_core::Error::DimensionTooLarge {
            what: "term-distribution table dimension n",
            n,
            limit: limits.table_max_n,
        }));
    }
    Ok(())
}

/// E_n(m) triangle for n = 1..=N.
pub fn cmd_dist(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let family = cfg.require_family()?;
    let n = cfg.require_n()?;
    check_table_n(n, &cfg.limits())?;
    let dists: Vec<_> = (1..=n).map(|k| e_table(family, k)).collect();
    let body = match cfg.output_format {
        OutputFormat::Csv => output::dist_csv(&output::dist_rows(&dists)),
        OutputFormat::Json => json_body(output::dist_json(family, &dists)),
        OutputFormat::Svg => return Err(CliError::Usage("dist supports csv and json output".into())),
    };
    Ok(Artifact {
        body,
        notes: Vec::new(),
    })
}

/// Q and P curves for the selected families (all three by default).
pub fn cmd_compare(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let n = cfg.require_n()?;
    let families: Vec<MatrixFamily> = match cfg.family {
        Some(f) => vec![f],
        None => MatrixFamily::ALL.to_vec(),
    };
    let grid = uniform_grid(cfg.grid_points)?;
    let limits = cfg.limits();
    let mut series = Vec::with_capacity(families.len());
    let mut notes = Vec::new();
    for family in families {
        let model = ApproxModel::new(family, n);
        let exact = exact_counts_with(family, n, &limits, None)?;
        let rows = compare_on(&model, &exact, &grid)?;
        let max_diff = rows.iter().map(|g| g.diff().abs()).fold(0.0, f64::max);
        notes.push(format!(
            "family {family}, n = {n}: max |Q - P| = {}",
            output::format_float(max_diff)
        ));
        series.push(Series { family, rows });
    }
    let body = match cfg.output_format {
        OutputFormat::Csv => output::compare_csv(&series),
        OutputFormat::Json => json_body(output::compare_json(n, &series)),
        OutputFormat::Svg => svg::render(n, &series),
    };
    Ok(Artifact { body, notes })
}

/// Exact Bernstein coefficients by exhaustive enumeration.
pub fn cmd_exact(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let family = cfg.require_family()?;
    let n = cfg.require_n()?;
    let exact = exact_counts_with(family, n, &cfg.limits(), None)?;
    let body = match cfg.output_format {
        OutputFormat::Csv => output::exact_csv(exact.counts()),
        OutputFormat::Json => json_body(output::exact_json(&exact)),
        OutputFormat::Svg => return Err(CliError::Usage("exact supports csv and json output".into())),
    };
    let notes = vec![format!(
        "P(per {family}_{n} = {}) = {}",
        family.target(),
        exact.bernstein_string()
    )];
    Ok(Artifact { body, notes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, failures: Vec<String>) -> Self {
        CheckLine {
            name: name.into(),
            passed: failures.is_empty(),
            detail: failures.join("; "),
        }
    }

    pub fn render(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            format!("{status} {}", self.name)
        } else {
            format!("{status} {}: {}", self.name, self.detail)
        }
    }
}

fn published_table_check(name: &str, table: &[&[u64]], value: impl Fn(usize, usize) -> BigUint) -> CheckLine {
    let mut failures = Vec::new();
    for (i, row) in table.iter().enumerate() {
        let n = i + 1;
        for (m, &want) in row.iter().enumerate() {
            let got = value(n, m);
            if got != BigUint::from(want) {
                failures.push(format!("n={n} m={m}: expected {want}, got {got}"));
            }
        }
    }
    CheckLine::new(name, failures)
}

/// Runs every offline cross-check. Returns the report lines.
pub fn offline_checks(limits: &Limits) -> Vec<CheckLine> {
    let mut lines = Vec::new();

    lines.push(published_table_check("W table n = 1..6", &W_TABLE, |n, m| {
        e_table(MatrixFamily::C, n).counts()[m].clone()
    }));
    lines.push(published_table_check("V table n = 1..8", &V_TABLE, |n, m| {
        e_table(MatrixFamily::B, n).counts()[m].clone()
    }));

    let brute_max = limits.bruteforce_max_n.min(10);
    let mut failures = Vec::new();
    for family in MatrixFamily::ALL {
        for n in 1..=brute_max {
            match e_table_bruteforce_with(family, n, limits) {
                Ok(b) if b == e_table(family, n) => {}
                Ok(b) => failures.push(format!("{family} n={n}: brute force {:?}", b.counts())),
                Err(e) => failures.push(format!("{family} n={n}: {e}")),
            }
        }
    }
    lines.push(CheckLine::new(
        format!("term distribution equals permutation brute force, n = 1..{brute_max}"),
        failures,
    ));

    let table = w_recurrence_table(12);
    let mut failures = Vec::new();
    for n in 1..=12 {
        for m in 0..=n {
            let closed = w_closed_form(n, m).expect("m <= n");
            let cycles = w_via_cycles(n, m).expect("m <= n");
            let rec = table.get(n, m).expect("in table");
            if closed != cycles || &closed != rec {
                failures.push(format!(
                    "W_{n}({m}): closed {closed}, recurrence {rec}, cycles {cycles}"
                ));
            }
        }
    }
    lines.push(CheckLine::new(
        "W closed form = recurrence = cycle census, n = 1..12",
        failures,
    ));

    let mut failures = Vec::new();
    for n in 1..=12 {
        for m in 1..=n {
            let closed = v_closed_form(n, m).expect("m <= n");
            let via = v_via_w(n, m).expect("1 <= m <= n");
            if closed != via {
                failures.push(format!("V_{n}({m}): closed {closed}, via W {via}"));
            }
        }
    }
    lines.push(CheckLine::new("V closed form = W identity, n = 1..12", failures));

    let mut failures = Vec::new();
    for family in MatrixFamily::ALL {
        for n in 1..=12 {
            let total = e_table(family, n).total();
            if total != factorial(n) {
                failures.push(format!("{family} n={n}: sum {total}"));
            }
        }
    }
    lines.push(CheckLine::new("sum of E_n(m) over m = n!, n = 1..12", failures));

    let mut failures = Vec::new();
    for n in 1..=12 {
        let derangement = BinaryMatrix::ones_minus_identity(n).expect("valid n");
        let special = BinaryMatrix::from_fn(n, |i, j| i != j || i == 0).expect("valid n");
        let w = BigUint::from(permanent_ryser(&derangement).expect("n <= 30"));
        let v = BigUint::from(permanent_ryser(&special).expect("n <= 30"));
        if w != w_closed_form(n, n).expect("m = n") {
            failures.push(format!("per(J - I) at n={n} is {w}"));
        }
        if v != v_closed_form(n, n).expect("m = n") {
            failures.push(format!("per(B extremal) at n={n} is {v}"));
        }
    }
    lines.push(CheckLine::new(
        "permanents equal W_n(n) and V_n(n), n = 1..12",
        failures,
    ));

    let mut failures = Vec::new();
    for family in MatrixFamily::ALL {
        match exact_counts_with(family, 3, limits, None) {
            Ok(e) if e.counts() == exact_n3_padded(family).as_slice() => {}
            Ok(e) => failures.push(format!("{family}: {:?}", e.counts())),
            Err(e) => failures.push(format!("{family}: {e}")),
        }
    }
    lines.push(CheckLine::new("exact n = 3 polynomials reproduced", failures));

    let mut failures = Vec::new();
    let grid = uniform_grid(101).expect("101 points");
    for family in MatrixFamily::ALL {
        let model = ApproxModel::new(family, 2);
        let rows = exact_counts_with(family, 2, limits, None).and_then(|e| compare_on(&model, &e, &grid));
        match rows {
            Ok(rows) => {
                let max = rows.iter().map(|g| g.diff().abs()).fold(0.0, f64::max);
                if max > 1e-12 {
                    failures.push(format!("{family}: max |Q - P| = {max:e}"));
                }
            }
            Err(e) => failures.push(format!("{family}: {e}")),
        }
    }
    lines.push(CheckLine::new("Q = P for n = 2 (within 1e-12)", failures));

    for check in builtin_checks() {
        lines.push(CheckLine {
            name: format!("sequence {}", check.summary()),
            passed: check.passed(),
            detail: String::new(),
        });
    }
    lines
}

/// Compares a `dist` CSV file against freshly generated counts.
pub fn table_file_check(path: &Path, family: MatrixFamily) -> CheckLine {
    let name = format!("table file {} (family {family})", path.display());
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return CheckLine::new(name, vec![e.to_string()]),
    };
    let rows = match output::read_dist_csv(&text) {
        Ok(r) => r,
        Err(e) => return CheckLine::new(name, vec![e.to_string()]),
    };
    let mut failures = Vec::new();
    for (n, m, count) in rows {
        if n == 0 || m > n || n > Limits::HARD_TABLE_MAX_N {
            failures.push(format!("row n={n} m={m} out of range"));
            continue;
        }
        let dist = e_table(family, n);
        let want = &dist.counts()[m];
        if want != &count {
            failures.push(format!("n={n} m={m}: file has {count}, expected {want}"));
        }
    }
    CheckLine::new(name, failures)
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// One line describing a lookup outcome. Never a failure.
fn lookup_line(client: &OeisClient, label: &str, prefix: &[BigUint], expect: Option<&str>) -> String {
    let terms: Vec<String> = prefix.iter().map(ToString::to_string).collect();
    match client.lookup(&terms) {
        Ok(ids) => {
            let listed = if ids.is_empty() {
                "none".to_string()
            } else {
                ids.join(" ")
            };
            match expect {
                Some(id) if ids.iter().any(|x| x == id) => {
                    format!("OEIS {label} [{}]: found {id} (candidates: {listed})", terms.join(","))
                }
                Some(id) => format!(
                    "OEIS {label} [{}]: {id} not among candidates ({listed})",
                    terms.join(",")
                ),
                None => format!("OEIS {label} [{}]: candidates {listed}", terms.join(",")),
            }
        }
        Err(e) if e.is_soft() => format!("OEIS {label}: lookup skipped ({e})"),
        Err(e) => format!("OEIS {label}: lookup failed ({e})"),
    }
}

fn slice(values: impl Fn(usize) -> BigUint, from: usize, len: usize) -> Vec<BigUint> {
    (from..from + len).map(values).collect()
}

/// Remote identifications of the W and V diagonals. Informational only.
pub fn oeis_identifications(client: &OeisClient) -> Vec<String> {
    let mut lines = vec![format!(
        "OEIS lookups against {} at unix time {}",
        client.base_url(),
        unix_now()
    )];
    let w_diag = slice(|n| w_closed_form(n, n).expect("m = n"), 1, 6);
    lines.push(lookup_line(client, "W_n(n)", &w_diag, Some("A000166")));
    let v_diag = slice(|n| v_closed_form(n, n).expect("m = n"), 2, 5);
    lines.push(lookup_line(client, "V_n(n)", &v_diag, Some("A000255")));
    lines
}

pub struct ValidateReport {
    pub lines: Vec<CheckLine>,
    pub info: Vec<String>,
}

impl ValidateReport {
    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.passed).count()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(&l.render());
            s.push('\n');
        }
        for i in &self.info {
            s.push_str(i);
            s.push('\n');
        }
        s.push_str(&format!(
            "{} of {} checks passed\n",
            self.lines.len() - self.failures(),
            self.lines.len()
        ));
        s
    }
}

pub fn cmd_validate(cfg: &RunConfig, table: Option<&Path>) -> Result<ValidateReport, CliError> {
    let mut lines = offline_checks(&cfg.limits());
    if let Some(path) = table {
        let family = cfg.require_family()?;
        lines.push(table_file_check(path, family));
    }
    let info = if cfg.oeis_enabled {
        oeis_identifications(&cfg.oeis_client())
    } else {
        Vec::new()
    };
    Ok(ValidateReport { lines, info })
}

/// Sequence report; with OEIS enabled also looks up the slices reported absent from OEIS.
pub fn cmd_seq(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let mut body = String::new();
    for check in builtin_checks() {
        body.push_str(&check.to_string());
        body.push('\n');
    }
    if cfg.oeis_enabled {
        let client = cfg.oeis_client();
        for line in oeis_identifications(&client) {
            body.push_str(&line);
            body.push('\n');
        }
        for m in [6, 7] {
            let terms = slice(|n| w_closed_form(n, m).expect("n >= m"), m, 5);
            body.push_str(&lookup_line(&client, &format!("W_n({m})"), &terms, None));
            body.push('\n');
        }
        for m in [2, 4, 5] {
            let terms = slice(|n| v_closed_form(n, m).expect("n >= m"), m, 5);
            body.push_str(&lookup_line(&client, &format!("V_n({m})"), &terms, None));
            body.push('\n');
        }
    }
    let failures = builtin_checks().iter().filter(|c| !c.passed()).count();
    if failures > 0 {
        return Err(CliError::ValidationFailed(failures));
    }
    Ok(Artifact {
        body,
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(family: Option<MatrixFamily>, n: Option<usize>) -> RunConfig {
        RunConfig {
            family,
            n,
            ..RunConfig::default()
        }
    }

    #[test]
    fn dist_family_a_single_nonzero_row() {
        let art = cmd_dist(&cfg(Some(MatrixFamily::A), Some(4))).unwrap();
        let rows = output::read_dist_csv(&art.body).unwrap();
        let nonzero: Vec<_> = rows
            .iter()
            .filter(|(n, _, c)| *n == 4 && *c != BigUint::from(0u32))
            .collect();
        assert_eq!(nonzero, [&(4, 4, BigUint::from(24u32))]);
    }

    #[test]
    fn dist_guards_and_usage() {
        let err = cmd_dist(&cfg(Some(MatrixFamily::C), Some(31))).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let mut forced = cfg(Some(MatrixFamily::C), Some(31));
        forced.force = true;
        assert!(cmd_dist(&forced).is_ok());
        assert_eq!(cmd_dist(&cfg(None, Some(3))).unwrap_err().exit_code(), 2);
        assert_eq!(
            cmd_dist(&cfg(Some(MatrixFamily::C), Some(0))).unwrap_err().exit_code(),
            2
        );
    }

    #[test]
    fn exact_c2_and_b1() {
        let art = cmd_exact(&cfg(Some(MatrixFamily::C), Some(2))).unwrap();
        assert_eq!(art.body, "i,count\n0,1\n1,2\n2,0\n");
        let art = cmd_exact(&cfg(Some(MatrixFamily::B), Some(1))).unwrap();
        assert_eq!(output::read_exact_csv(&art.body).unwrap(), [1, 0]);
        assert_eq!(art.notes, ["P(per B_1 = 0) = (1-r)"]);
    }

    #[test]
    fn exact_a3_polynomial_note() {
        let art = cmd_exact(&cfg(Some(MatrixFamily::A), Some(3))).unwrap();
        assert!(art.notes[0].contains("+78r^3(1-r)^6+"));
    }

    #[test]
    fn exact_guard() {
        let err = cmd_exact(&cfg(Some(MatrixFamily::A), Some(6))).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn compare_n2_curves_coincide() {
        let mut c = cfg(None, Some(2));
        c.grid_points = 21;
        let art = cmd_compare(&c).unwrap();
        let (header, rows) = output::read_float_table(&art.body).unwrap();
        assert_eq!(header.join(","), "r,Q_A,P_A,Q_B,P_B,Q_C,P_C");
        assert_eq!(rows.len(), 21);
        for row in rows {
            for pair in row[1..].chunks(2) {
                assert!((pair[0] - pair[1]).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn table_file_tamper_detected() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("good.csv");
        let art = cmd_dist(&cfg(Some(MatrixFamily::C), Some(6))).unwrap();
        fs::write(&good, &art.body).unwrap();
        assert!(table_file_check(&good, MatrixFamily::C).passed);
        let bad = dir.path().join("bad.csv");
        fs::write(&bad, art.body.replace("6,5,264", "6,5,263")).unwrap();
        let line = table_file_check(&bad, MatrixFamily::C);
        assert!(!line.passed);
        assert!(line.detail.contains("n=6 m=5"));
    }
}
