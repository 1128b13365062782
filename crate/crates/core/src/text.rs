//! Plain-text table and ring file formats, and ASCII rendering.
//!
//! Cayley table file:
//!
//! ```text
//! # comment
//! elements: 24 12 36 48
//! 36 48 24 12
//! 48 24 12 36
//! 24 12 36 48
//! 12 36 48 24
//! ```
//!
//! Ring file: an `elements:` line, then `add:` followed by n rows, then
//! `mul:` followed by n rows.

use std::fmt::Write as _;

use thiserror::Error;

use crate::magma::{CayleyTable, Label, MagmaError};
use crate::rings::{RingError, RingTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `elements:` line")]
    MissingElements,
    #[error("expected {expected} rows after `{section}`, found {found}")]
    RowCount {
        section: &'static str,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Table(#[from] MagmaError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_labels(line: usize, s: &str) -> Result<Vec<Label>, ParseError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<Label>().map_err(|_| ParseError::Syntax {
                line,
                message: format!("`{tok}` is not an integer"),
            })
        })
        .collect()
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Vec<Label>, ParseError> {
    let (line, first) = lines.next().ok_or(ParseError::MissingElements)?;
    let rest = first
        .strip_prefix("elements:")
        .ok_or(ParseError::MissingElements)?;
    let labels = parse_labels(line, rest)?;
    if labels.is_empty() {
        return Err(ParseError::Syntax {
            line,
            message: "no elements listed".into(),
        });
    }
    Ok(labels)
}

pub fn parse_table(text: &str) -> Result<CayleyTable, ParseError> {
    let mut lines = content_lines(text);
    let labels = parse_header(&mut lines)?;
    let rows = lines
        .map(|(line, l)| parse_labels(line, l))
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != labels.len() {
        return Err(ParseError::RowCount {
            section: "elements:",
            expected: labels.len(),
            found: rows.len(),
        });
    }
    Ok(CayleyTable::new(labels, &rows)?)
}

pub fn parse_ring(text: &str) -> Result<RingTable, ParseError> {
    let mut lines = content_lines(text).peekable();
    let labels = parse_header(&mut lines)?;
    let mut section = |name: &'static str| -> Result<Vec<Vec<Label>>, ParseError> {
        match lines.next() {
            Some((_, l)) if l == name => {}
            Some((line, l)) => {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("expected `{name}`, found `{l}`"),
                })
            }
            None => {
                return Err(ParseError::RowCount {
                    section: name,
                    expected: labels.len(),
                    found: 0,
                })
            }
        }
        let mut rows = Vec::new();
        while let Some(&(line, l)) = lines.peek() {
            if l.ends_with(':') {
                break;
            }
            rows.push(parse_labels(line, l)?);
            lines.next();
        }
        if rows.len() != labels.len() {
            return Err(ParseError::RowCount {
                section: name,
                expected: labels.len(),
                found: rows.len(),
            });
        }
        Ok(rows)
    };
    let add = section("add:")?;
    let mul = section("mul:")?;
    if let Some((line, l)) = lines.next() {
        return Err(ParseError::Syntax {
            line,
            message: format!("unexpected trailing content `{l}`"),
        });
    }
    Ok(RingTable::new(labels, &add, &mul)?)
}

fn write_rows(out: &mut String, t: &CayleyTable) {
    for row in t.label_rows() {
        let _ = writeln!(out, "{}", crate::embed::join_labels(&row, " "));
    }
}

/// Serializes a table in the Cayley file format (no comments).
pub fn write_table(t: &CayleyTable) -> String {
    let mut out = format!("elements: {}\n", crate::embed::join_labels(t.labels(), " "));
    write_rows(&mut out, t);
    out
}

pub fn write_ring(rt: &RingTable) -> String {
    let mut out = format!(
        "elements: {}\nadd:\n",
        crate::embed::join_labels(rt.labels(), " ")
    );
    write_rows(&mut out, rt.add_table());
    out.push_str("mul:\n");
    write_rows(&mut out, rt.mul_table());
    out
}

/// Multiplication table with a header row and column of labels:
///
/// ```text
///  x | 24 12 36 48
/// ---+------------
/// 24 | 36 48 24 12
/// ```
pub fn render_table(t: &CayleyTable, symbol: &str) -> String {
    let width = t
        .labels()
        .iter()
        .map(|l| l.to_string().len())
        .chain([symbol.len()])
        .max()
        .unwrap_or(1);
    let cells = |row: &[Label]| {
        row.iter()
            .map(|l| format!("{l:>width$}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let header = cells(t.labels());
    let mut out = format!("{symbol:>width$} | {header}\n");
    let _ = writeln!(out, "{}-+-{}", "-".repeat(width), "-".repeat(header.len()));
    for (label, row) in t.labels().iter().zip(t.label_rows()) {
        let _ = writeln!(out, "{label:>width$} | {}", cells(&row));
    }
    out
}
