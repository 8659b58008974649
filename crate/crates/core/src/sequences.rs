//! Cross-checks of generated W and V slices against OEIS reference terms.
//!
//! Reference terms ship with the crate (`data/sequences.txt`), so
//! [`builtin_checks`] runs offline. The optional remote lookup lives in
//! [`crate::oeis`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::terms::{v_closed_form, w_closed_form};

const REFERENCE_DATA: &str = include_str!("../data/sequences.txt");

/// Which slice of the W or V triangle a sequence corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    /// W_n(n) for n >= 1.
    WDiagonal,
    /// W_n(m) for n >= m.
    WColumn(usize),
    /// V_n(n) for n >= 1.
    VDiagonal,
    /// V_n(m) for n >= m.
    VColumn(usize),
}

impl Selector {
    pub fn value(self, n: usize) -> Option<BigUint> {
        match self {
            Selector::WDiagonal => w_closed_form(n, n).ok(),
            Selector::WColumn(m) => w_closed_form(n, m).ok(),
            Selector::VDiagonal => v_closed_form(n, n).ok(),
            Selector::VColumn(m) => v_closed_form(n, m).ok(),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::WDiagonal => f.write_str("W_n(n)"),
            Selector::WColumn(m) => write!(f, "W_n({m})"),
            Selector::VDiagonal => f.write_str("V_n(n)"),
            Selector::VColumn(m) => write!(f, "V_n({m})"),
        }
    }
}

impl FromStr for Selector {
    type Err = ReferenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ReferenceError::Selector(s.to_string());
        let (kind, which) = s.split_once(':').ok_or_else(bad)?;
        match (kind, which) {
            ("w", "diag") => Ok(Selector::WDiagonal),
            ("v", "diag") => Ok(Selector::VDiagonal),
            ("w", m) => m.parse().map(Selector::WColumn).map_err(|_| bad()),
            ("v", m) => m.parse().map(Selector::VColumn).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReferenceError {
    #[error("line {line}: expected 7 '|'-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("bad selector {0:?}")]
    Selector(String),
    #[error("line {line}: bad number {value:?}")]
    Number { line: usize, value: String },
}

/// One OEIS sequence and the table slice it should match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRef {
    pub oeis_id: String,
    pub description: String,
    pub selector: Selector,
    /// n of the first reference term.
    pub first_n: usize,
    /// OEIS index of the first reference term; the terms before it are not compared.
    pub oeis_first_index: usize,
    /// Terms taken from the published tables.
    pub table_terms: Vec<BigUint>,
    /// Terms continued from the sequence's defining formula.
    pub formula_terms: Vec<BigUint>,
}

impl SequenceRef {
    pub fn terms(&self) -> impl Iterator<Item = &BigUint> {
        self.table_terms.iter().chain(&self.formula_terms)
    }

    pub fn window(&self) -> std::ops::RangeInclusive<usize> {
        self.first_n..=self.first_n + self.table_terms.len() + self.formula_terms.len() - 1
    }
}

/// Parses the reference-data format; `#` starts a comment line.
pub fn parse_references(text: &str) -> Result<Vec<SequenceRef>, ReferenceError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('|').map(str::trim).collect();
        if fields.len() != 7 {
            return Err(ReferenceError::FieldCount {
                line,
                found: fields.len(),
            });
        }
        let number = |s: &str| -> Result<usize, ReferenceError> {
            s.parse().map_err(|_| ReferenceError::Number {
                line,
                value: s.to_string(),
            })
        };
        let terms = |s: &str| -> Result<Vec<BigUint>, ReferenceError> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse().map_err(|_| ReferenceError::Number {
                        line,
                        value: t.to_string(),
                    })
                })
                .collect()
        };
        out.push(SequenceRef {
            oeis_id: fields[0].to_string(),
            selector: fields[1].parse()?,
            first_n: number(fields[2])?,
            oeis_first_index: number(fields[3])?,
            table_terms: terms(fields[4])?,
            formula_terms: terms(fields[5])?,
            description: fields[6].to_string(),
        });
    }
    Ok(out)
}

/// The vendored references.
pub fn builtin_references() -> Vec<SequenceRef> {
    parse_references(REFERENCE_DATA).expect("vendored reference data parses")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub expected: BigUint,
    pub generated: Option<BigUint>,
}

/// Outcome of comparing one reference against the generated slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCheck {
    pub reference: SequenceRef,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SequenceCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// True when part of the window relies on formula terms rather than published values.
    pub fn self_referential(&self) -> bool {
        !self.reference.formula_terms.is_empty()
    }
}

impl SequenceCheck {
    /// The report line without the PASS/FAIL prefix.
    pub fn summary(&self) -> String {
        use std::fmt::Write;
        let r = &self.reference;
        let window = r.window();
        let mut s = format!(
            "{} {} vs {} for n = {}..={} ({} terms, {} from tables",
            r.oeis_id,
            r.description,
            r.selector,
            window.start(),
            window.end(),
            self.compared,
            r.table_terms.len(),
        );
        if self.self_referential() {
            let _ = write!(s, ", {} self-referential", r.formula_terms.len());
        }
        s.push(')');
        for m in &self.mismatches {
            let _ = match &m.generated {
                Some(g) => write!(s, "; n={}: expected {}, generated {}", m.n, m.expected, g),
                None => write!(s, "; n={}: expected {}, nothing generated", m.n, m.expected),
            };
        }
        s
    }
}

impl fmt::Display for SequenceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.summary())
    }
}

/// Compares one reference against values produced by `generate`.
pub fn check_reference(
    reference: &SequenceRef,
    generate: impl Fn(Selector, usize) -> Option<BigUint>,
) -> SequenceCheck {
    let mismatches: Vec<Mismatch> = reference
        .terms()
        .enumerate()
        .filter_map(|(offset, expected)| {
            let n = reference.first_n + offset;
            let generated = generate(reference.selector, n);
            (generated.as_ref() != Some(expected)).then(|| Mismatch {
                n,
                expected: expected.clone(),
                generated,
            })
        })
        .collect();
    SequenceCheck {
        reference: reference.clone(),
        compared: reference.terms().count(),
        mismatches,
    }
}

/// Checks every vendored reference against the closed-form W and V values.
pub fn builtin_checks() -> Vec<SequenceCheck> {
    builtin_references()
        .iter()
        .map(|r| check_reference(r, Selector::value))
        .collect()
}
