//! The dissection table file and its comparison with a generated atlas.
//!
//! Row format: `label | T0 | T1 | k | pi`, with coordinate lists separated by
//! commas, `-` for an empty list, and `x^n` for a repeated factor in `pi`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::atlas::{find_pi_with, minimal_coordinates, pi_verifies, Atlas, DEFAULT_PI_CAP};
use super::CuspError;
use crate::pencil::CoordId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub line: usize,
    pub label: String,
    pub t0: BTreeSet<CoordId>,
    pub t1: BTreeSet<CoordId>,
    pub bound_numerator: usize,
    pub pi: Vec<CoordId>,
}

fn parse_list(field: &str, line: usize) -> Result<Vec<CoordId>, CuspError> {
    let field = field.trim();
    if field == "-" || field.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for item in field.split(',') {
        let item = item.trim();
        let (name, power) = match item.split_once('^') {
            Some((n, p)) => (
                n,
                p.trim().parse::<usize>().map_err(|_| CuspError::ParseError {
                    line,
                    message: format!("bad exponent in {:?}", item),
                })?,
            ),
            None => (item, 1),
        };
        let c: CoordId = name.parse().map_err(|_| CuspError::ParseError {
            line,
            message: format!("unknown coordinate {:?}", name),
        })?;
        out.extend(std::iter::repeat(c).take(power));
    }
    Ok(out)
}

pub fn parse_table(text: &str) -> Result<Vec<TableRow>, CuspError> {
    let mut rows = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split('|').collect();
        if fields.len() != 5 {
            return Err(CuspError::ParseError {
                line,
                message: format!("expected 5 fields, found {}", fields.len()),
            });
        }
        let bound_numerator = fields[3].trim().parse().map_err(|_| CuspError::ParseError {
            line,
            message: format!("bad bound numerator {:?}", fields[3].trim()),
        })?;
        rows.push(TableRow {
            line,
            label: fields[0].trim().to_string(),
            t0: parse_list(fields[1], line)?.into_iter().collect(),
            t1: parse_list(fields[2], line)?.into_iter().collect(),
            bound_numerator,
            pi: parse_list(fields[4], line)?,
        });
    }
    Ok(rows)
}

fn format_list(items: &[CoordId]) -> String {
    if items.is_empty() {
        return "-".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let mut j = i;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        parts.push(if j - i > 1 {
            format!("{}^{}", items[i], j - i)
        } else {
            items[i].to_string()
        });
        i = j;
    }
    parts.join(",")
}

/// Render an atlas in the table format, using the generated factors.
pub fn format_atlas(atlas: &Atlas) -> String {
    let mut s = String::from("# label | T0 | T1 | k | pi\n");
    for n in &atlas.nodes {
        let t0: Vec<CoordId> = n.t0.iter().copied().collect();
        let t1: Vec<CoordId> = n.t1.iter().copied().collect();
        let _ = writeln!(
            s,
            "{} | {} | {} | {} | {}",
            n.label,
            format_list(&t0),
            format_list(&t1),
            n.bound_numerator,
            format_list(&n.pi)
        );
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub label: String,
    pub line: usize,
    pub generated_label: Option<String>,
    pub t0_found: bool,
    pub t1_match: bool,
    pub bound_match: bool,
    pub pi_verifies: bool,
    pub pi_supported_on_t1: bool,
    pub auto_pi_len: Option<usize>,
    pub auto_pi_not_larger: bool,
}

impl RowCheck {
    pub fn ok(&self) -> bool {
        self.t0_found
            && self.t1_match
            && self.bound_match
            && self.pi_verifies
            && self.pi_supported_on_t1
            && self.auto_pi_not_larger
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowCheck>,
    pub matched: usize,
    pub mismatched: usize,
    /// Generated cases with no table row.
    pub unlisted: Vec<String>,
}

impl TableReport {
    pub fn all_match(&self) -> bool {
        self.mismatched == 0 && self.unlisted.is_empty()
    }
}

fn check_row(atlas: &Atlas, row: &TableRow) -> RowCheck {
    let node = atlas.find(&row.t0);
    let t1 = minimal_coordinates(&row.t0);
    let verifies = pi_verifies(&row.t0, &row.pi);
    let supported = row.pi.iter().all(|c| row.t1.contains(c));
    let auto = find_pi_with(&row.t0, &t1, DEFAULT_PI_CAP).ok();
    RowCheck {
        label: row.label.clone(),
        line: row.line,
        generated_label: node.map(|n| n.label.clone()),
        t0_found: node.is_some(),
        t1_match: t1 == row.t1,
        bound_match: 40 + row.pi.len() == row.t0.len() + row.bound_numerator,
        pi_verifies: verifies,
        pi_supported_on_t1: supported,
        auto_pi_len: auto.as_ref().map(Vec::len),
        auto_pi_not_larger: auto.map_or(false, |a| a.len() <= row.pi.len()),
    }
}

pub fn verify_against_table(atlas: &Atlas, rows: &[TableRow]) -> TableReport {
    let checks: Vec<RowCheck> = rows.par_iter().map(|r| check_row(atlas, r)).collect();
    let matched = checks.iter().filter(|c| c.ok()).count();
    let listed: BTreeSet<&BTreeSet<CoordId>> = rows.iter().map(|r| &r.t0).collect();
    let unlisted = atlas
        .nodes
        .iter()
        .filter(|n| !listed.contains(&n.t0))
        .map(|n| n.label.clone())
        .collect();
    TableReport {
        mismatched: checks.len() - matched,
        matched,
        rows: checks,
        unlisted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_list() {
        let v = parse_list("a25^2,a34,d13^3", 1).unwrap();
        assert_eq!(v.len(), 6);
        assert_eq!(format_list(&v), "a25^2,a34,d13^3");
        assert!(parse_list("-", 1).unwrap().is_empty());
        assert!(matches!(
            parse_list("z99", 7),
            Err(CuspError::ParseError { line: 7, .. })
        ));
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = parse_table("# c\n0 | - | a12 | 40\n").unwrap_err();
        assert!(matches!(err, CuspError::ParseError { line: 2, .. }));
    }
}
