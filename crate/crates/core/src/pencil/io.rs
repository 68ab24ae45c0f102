//! Plain-text quadruple files: one quadruple per line, forty integers in
//! coordinate order, `#` starts a comment.

use num_bigint::BigInt;
use thiserror::Error;

use super::quadruple::Quadruple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadrupleParseError {
    #[error("line {line}, column {column}: not an integer: {token:?}")]
    ParseError {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("line {line}: expected 40 integers, found {found}")]
    CountMismatch { line: usize, found: usize },
}

pub fn parse_quadruples(text: &str) -> Result<Vec<Quadruple>, QuadrupleParseError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut coords = Vec::with_capacity(40);
        let mut offset = 0;
        for token in content.split_whitespace() {
            let column = content[offset..].find(token).map_or(0, |p| p + offset) + 1;
            offset = column - 1 + token.len();
            let v: BigInt = token
                .parse()
                .map_err(|_| QuadrupleParseError::ParseError {
                    line,
                    column,
                    token: token.to_string(),
                })?;
            coords.push(v);
        }
        let found = coords.len();
        out.push(
            Quadruple::from_coords(coords)
                .ok_or(QuadrupleParseError::CountMismatch { line, found })?,
        );
    }
    Ok(out)
}

pub fn format_quadruples(qs: &[Quadruple]) -> String {
    let mut s = String::new();
    for q in qs {
        s.push_str(&q.to_string());
        s.push('\n');
    }
    s
}
