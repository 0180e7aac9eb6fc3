//! Plain-text grid format, shared by the CLI and the test fixtures.
//!
//! Line 1 holds the dimensions `F K` (rows, then columns); each of the next
//! `F` lines holds `K` whitespace-separated tokens, `*` for a star or a
//! decimal symbol index. Canonical output separates tokens with one space and
//! ends every line (including the last) with a newline.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Pda, PdaEntry};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing dimension header")]
    MissingHeader,
    #[error("bad dimension header {found:?}: expected two positive integers")]
    BadHeader { found: String },
    #[error("grid dimensions must be positive")]
    ZeroDimension,
    #[error("line {line}: found {found} tokens, expected {expected}")]
    WrongTokenCount { line: usize, found: usize, expected: usize },
    #[error("line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("expected {expected} grid rows, found {found}")]
    WrongRowCount { found: usize, expected: usize },
    #[error("line {line}: unexpected content after the grid")]
    TrailingContent { line: usize },
}

impl fmt::Display for Pda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                match self.get(i, j) {
                    PdaEntry::Star => f.write_str("*")?,
                    PdaEntry::Symbol(s) => write!(f, "{s}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Pda {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let mut lines = input.lines().enumerate();
        let (_, header) = lines.find(|(_, l)| !l.trim().is_empty()).ok_or(ParseError::MissingHeader)?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let (rows, cols) = match dims.as_slice() {
            [r, c] => match (r.parse::<usize>(), c.parse::<usize>()) {
                (Ok(r), Ok(c)) => (r, c),
                _ => return Err(ParseError::BadHeader { found: header.trim().to_string() }),
            },
            _ => return Err(ParseError::BadHeader { found: header.trim().to_string() }),
        };
        if rows == 0 || cols == 0 {
            return Err(ParseError::ZeroDimension);
        }

        let mut grid = Vec::with_capacity(rows);
        for (idx, line) in &mut lines {
            if line.trim().is_empty() {
                continue;
            }
            if grid.len() == rows {
                return Err(ParseError::TrailingContent { line: idx + 1 });
            }
            let mut row = Vec::with_capacity(cols);
            for token in line.split_whitespace() {
                if token == "*" {
                    row.push(PdaEntry::Star);
                } else {
                    let symbol = token
                        .parse::<usize>()
                        .map_err(|_| ParseError::BadToken { line: idx + 1, token: token.to_string() })?;
                    row.push(PdaEntry::Symbol(symbol));
                }
            }
            if row.len() != cols {
                return Err(ParseError::WrongTokenCount { line: idx + 1, found: row.len(), expected: cols });
            }
            grid.push(row);
        }
        if grid.len() != rows {
            return Err(ParseError::WrongRowCount { found: grid.len(), expected: rows });
        }
        Pda::from_rows(grid).map_err(|_| ParseError::ZeroDimension)
    }
}
