//! Plain-text table format.
//!
//! ```text
//! # comment lines start with '#'
//! group 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! The header word is an unchecked hint (`magma`, `semigroup`, `monoid`,
//! `quasigroup`, `loop` or `group`). Rings use the header `ring <n>`, the
//! additive table, a line holding only `*`, then the multiplicative table.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ring::{validate_ring, RingTable};
use crate::table::{CayleyTable, Kind};

const HINTS: [&str; 6] = ["magma", "semigroup", "monoid", "quasigroup", "loop", "group"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Table { hint: String, table: CayleyTable },
    Ring(RingTable),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses either a table or a ring; rings are validated.
pub fn parse(src: &str) -> Result<Structure> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let mut words = header.split_whitespace();
    let hint = words.next().unwrap_or_default().to_string();
    let n: usize = words
        .next()
        .ok_or_else(|| parse_err(hline, "header needs an element count"))?
        .parse()
        .map_err(|_| parse_err(hline, "element count is not a number"))?;
    if words.next().is_some() {
        return Err(parse_err(hline, "unexpected text after element count"));
    }
    if n == 0 {
        return Err(Error::EmptyTable);
    }

    let read_block = |lines: &mut dyn Iterator<Item = (usize, &str)>, what: &str| -> Result<CayleyTable> {
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let (lno, line) = lines
                .next()
                .ok_or_else(|| parse_err(hline, format!("{what}: expected {n} rows, found {r}")))?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| parse_err(lno, format!("bad entry {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(parse_err(lno, format!("row has {} entries, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(parse_err(lno, format!("entry {x} out of range 0..{n}")));
            }
            rows.push(row);
        }
        CayleyTable::from_rows(rows)
    };

    let structure = if hint == "ring" {
        let add = read_block(&mut lines, "additive table")?;
        match lines.next() {
            Some((_, "*")) => {}
            Some((lno, other)) => {
                return Err(parse_err(lno, format!("expected '*' between ring tables, found {other:?}")))
            }
            None => return Err(parse_err(hline, "missing '*' and multiplicative table")),
        }
        let mul = read_block(&mut lines, "multiplicative table")?;
        Structure::Ring(validate_ring(add, mul)?)
    } else if HINTS.contains(&hint.as_str()) {
        let table = read_block(&mut lines, "table")?;
        Structure::Table { hint, table }
    } else {
        return Err(parse_err(hline, format!("unknown header {hint:?}")));
    };

    if let Some((lno, _)) = lines.next() {
        return Err(parse_err(lno, "unexpected trailing content"));
    }
    Ok(structure)
}

/// Parses a single table; a ring file is an error.
pub fn parse_table(src: &str) -> Result<CayleyTable> {
    match parse(src)? {
        Structure::Table { table, .. } => Ok(table),
        Structure::Ring(_) => Err(parse_err(1, "expected a table, found a ring")),
    }
}

pub fn parse_ring(src: &str) -> Result<RingTable> {
    match parse(src)? {
        Structure::Ring(r) => Ok(r),
        Structure::Table { .. } => Err(parse_err(1, "expected a ring, found a table")),
    }
}

fn push_rows(out: &mut String, t: &CayleyTable) {
    let width = (t.order() - 1).to_string().len();
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Writes a table with a header hint taken from its classification.
pub fn write_table(t: &CayleyTable, comments: &[String]) -> String {
    let hint = match t.classify().kind {
        Kind::Magma => "magma",
        Kind::Semigroup | Kind::Monoid => "semigroup",
        Kind::Quasigroup | Kind::Loop => "quasigroup",
        Kind::Group => "group",
    };
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{hint} {}", t.order());
    push_rows(&mut out, t);
    out
}

pub fn write_ring(r: &RingTable, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "ring {}", r.order());
    push_rows(&mut out, r.add_table());
    out.push_str("*\n");
    push_rows(&mut out, r.mul_table());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let src = "# the order-3 group\ngroup 3\n0 1 2\n# inline comment line\n1 2 0\n2 0 1\n";
        assert_eq!(parse_table(src).unwrap(), corpus::cyclic(3));
    }

    #[test]
    fn malformed_row_reports_line() {
        let src = "magma 2\n0 1\n1\n";
        assert_eq!(
            parse(src),
            Err(Error::Parse { line: 3, message: "row has 1 entries, expected 2".into() })
        );
        assert!(matches!(parse("magma 2\n0 1\n1 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse("magma 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse("widget 1\n0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse("magma 1\n0\n0\n"), Err(Error::Parse { line: 3, .. })));
        assert_eq!(parse("magma 0\n"), Err(Error::EmptyTable));
    }

    #[test]
    fn ring_round_trip() {
        let r = corpus::ring_boolean_cube(2);
        let text = write_ring(&r, &["F2^2".into()]);
        assert!(text.contains("\n*\n"));
        assert_eq!(parse_ring(&text).unwrap(), r);
    }

    #[test]
    fn invalid_ring_is_rejected() {
        let src = "ring 2\n0 1\n1 1\n*\n0 0\n0 1\n";
        assert!(matches!(parse(src), Err(Error::Ring(_))));
    }

    #[test]
    fn header_hint_follows_classification() {
        assert!(write_table(&corpus::right_zero(3), &[]).starts_with("semigroup 3\n"));
        assert!(write_table(&corpus::small_quasigroup(), &[]).starts_with("quasigroup 3\n"));
        assert!(write_table(&corpus::cyclic(3), &[]).starts_with("group 3\n"));
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(n in 1usize..12, seed in any::<u64>()) {
            let t = corpus::random_magma(n, seed);
            prop_assert_eq!(parse_table(&write_table(&t, &["x".into()])).unwrap(), t);
        }
    }
}
