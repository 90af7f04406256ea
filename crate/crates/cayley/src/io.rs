//! Cayley-table file format.
//!
//! A table file is line-oriented text. Blank lines and `#` comments are
//! ignored. The required fields are `order N` followed by `mul` and then
//! exactly N rows of N space-separated element indices. Optional fields,
//! in any order after the table: `generators` with a list of indices on
//! the same line, and `labels` with exactly N whitespace-separated tokens.
//! The identity must be index 0; loading runs the full invariant check,
//! including associativity.

use std::fmt::Write as _;
use std::path::Path;

use crate::group::GroupTable;
use crate::{Error, Result};

/// Parses a table document from text.
pub fn parse_table(text: &str) -> Result<GroupTable> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let err = |message: &str| Error::Parse { offset: 0, message: message.into() };

    let order_line = lines.next().ok_or_else(|| err("missing `order` line"))?;
    let order: usize = match order_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["order", n] => n
            .parse()
            .map_err(|_| err("`order` takes a positive integer"))?,
        _ => return Err(err("first line must be `order N`")),
    };
    if order == 0 {
        return Err(err("`order` must be positive"));
    }

    match lines.next() {
        Some("mul") => {}
        _ => return Err(err("expected `mul` line after `order`")),
    }
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(order);
    for i in 0..order {
        let line = lines
            .next()
            .ok_or_else(|| err(&format!("expected {order} table rows, got {i}")))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(&format!("bad entry `{t}` in row {i}"))))
            .collect::<Result<_>>()?;
        rows.push(row);
    }

    let mut generators: Option<Vec<usize>> = None;
    let mut labels: Option<Vec<String>> = None;
    for line in lines {
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("generators") => {
                let gens: Vec<usize> = tokens
                    .map(|t| t.parse().map_err(|_| err(&format!("bad generator `{t}`"))))
                    .collect::<Result<_>>()?;
                generators = Some(gens);
            }
            Some("labels") => {
                labels = Some(tokens.map(str::to_string).collect());
            }
            Some(other) => return Err(err(&format!("unknown field `{other}`"))),
            None => unreachable!("blank lines are filtered"),
        }
    }
    // Without a recorded generating set the whole element list serves.
    let generators = generators.unwrap_or_else(|| (1..order).collect());
    GroupTable::from_rows(&rows, generators, labels)
}

/// Renders a table in the file format. The output round-trips through
/// [`parse_table`] and is byte-stable for a given table.
pub fn format_table(g: &GroupTable) -> String {
    let n = g.order();
    let mut out = String::new();
    writeln!(out, "order {n}").unwrap();
    writeln!(out, "mul").unwrap();
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a as u16, b as u16).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    if !g.generators().is_empty() {
        let gens: Vec<String> = g.generators().iter().map(|v| v.to_string()).collect();
        writeln!(out, "generators {}", gens.join(" ")).unwrap();
    }
    if let Some(labels) = g.labels() {
        writeln!(out, "labels {}", labels.join(" ")).unwrap();
    }
    out
}

/// Loads and fully verifies a table file.
pub fn load_table(path: &Path) -> Result<GroupTable> {
    parse_table(&std::fs::read_to_string(path)?)
}

/// Writes a table file.
pub fn save_table(g: &GroupTable, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, format_table(g))?)
}
