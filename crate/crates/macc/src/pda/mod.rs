//! The placement delivery array grid: a dense rectangular array whose cells
//! are either a star (the cell is cached) or a non-negative symbol index (the
//! cell is served by broadcast slot `s`). Rows index sub-files, columns index
//! users.

mod oracle;
mod report;
mod text;
mod validate;

pub use oracle::validate_oracle;
pub use report::{Condition, ValidationReport, Violation};
pub use text::ParseError;

use thiserror::Error;

/// One cell of a [`Pda`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PdaEntry {
    Star,
    Symbol(usize),
}

impl PdaEntry {
    pub fn is_star(&self) -> bool {
        matches!(self, PdaEntry::Star)
    }

    pub fn symbol(&self) -> Option<usize> {
        match self {
            PdaEntry::Star => None,
            PdaEntry::Symbol(s) => Some(*s),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("grid must have at least one row and one column")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NonRectangular { row: usize, len: usize, expected: usize },
    #[error("part {index} has {rows} rows, expected {expected}")]
    RowCountMismatch { index: usize, rows: usize, expected: usize },
}

/// A dense `rows x cols` grid over stars and symbols. Rectangularity and
/// non-emptiness are enforced at construction, so every `Pda` value is
/// structurally sound.
#[derive(Clone, PartialEq, Eq)]
pub struct Pda {
    rows: usize,
    cols: usize,
    entries: Vec<PdaEntry>,
}

impl Pda {
    pub fn from_rows(rows: Vec<Vec<PdaEntry>>) -> Result<Self, GridError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(GridError::Empty);
        }
        let cols = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(GridError::NonRectangular { row: i, len: row.len(), expected: cols });
            }
        }
        let nrows = rows.len();
        Ok(Pda { rows: nrows, cols, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds a grid by evaluating `f` at every `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> PdaEntry) -> Self {
        assert!(rows > 0 && cols > 0, "grid dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Pda { rows, cols, entries }
    }

    pub fn all_stars(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| PdaEntry::Star)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> PdaEntry {
        assert!(row < self.rows && col < self.cols, "entry ({row},{col}) out of bounds");
        self.entries[row * self.cols + col]
    }

    /// Iterates all cells in row-major order as `(row, col, entry)`.
    pub fn iter_entries(&self) -> impl Iterator<Item = (usize, usize, PdaEntry)> + '_ {
        let cols = self.cols;
        self.entries.iter().enumerate().map(move |(idx, e)| (idx / cols, idx % cols, *e))
    }

    /// Adds `offset` to every symbol; stars are unchanged.
    pub fn shift_add(&self, offset: usize) -> Pda {
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                PdaEntry::Star => PdaEntry::Star,
                PdaEntry::Symbol(s) => PdaEntry::Symbol(s + offset),
            })
            .collect();
        Pda { rows: self.rows, cols: self.cols, entries }
    }

    pub fn transpose(&self) -> Pda {
        Pda::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Joins grids side by side. All parts must share the same row count.
    pub fn concat_columns(parts: &[Pda]) -> Result<Pda, GridError> {
        if parts.is_empty() {
            return Err(GridError::Empty);
        }
        let rows = parts[0].rows;
        for (index, part) in parts.iter().enumerate() {
            if part.rows != rows {
                return Err(GridError::RowCountMismatch { index, rows: part.rows, expected: rows });
            }
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for part in parts {
                entries.extend_from_slice(&part.entries[i * part.cols..(i + 1) * part.cols]);
            }
        }
        Ok(Pda { rows, cols, entries })
    }
}

impl std::fmt::Debug for Pda {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pda({}x{})\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> PdaEntry {
        PdaEntry::Star
    }

    fn sym(s: usize) -> PdaEntry {
        PdaEntry::Symbol(s)
    }

    #[test]
    fn from_rows_rejects_ragged_grids() {
        let err = Pda::from_rows(vec![vec![star(), sym(0)], vec![star()]]).unwrap_err();
        assert_eq!(err, GridError::NonRectangular { row: 1, len: 1, expected: 2 });
        assert_eq!(Pda::from_rows(vec![]).unwrap_err(), GridError::Empty);
    }

    #[test]
    fn shift_add_zero_is_identity() {
        let p = Pda::from_rows(vec![vec![star(), sym(1)], vec![sym(0), star()]]).unwrap();
        assert_eq!(p.shift_add(0), p);
    }

    #[test]
    fn shift_add_leaves_stars_alone() {
        let p = Pda::from_rows(vec![vec![star(), sym(1)]]).unwrap();
        let shifted = p.shift_add(5);
        assert_eq!(shifted.get(0, 0), star());
        assert_eq!(shifted.get(0, 1), sym(6));
    }

    #[test]
    fn transpose_swaps_coordinates() {
        let p = Pda::from_rows(vec![vec![star(), sym(0)], vec![star(), star()]]).unwrap();
        let t = p.transpose();
        assert_eq!(t.get(0, 0), star());
        assert_eq!(t.get(0, 1), star());
        assert_eq!(t.get(1, 0), sym(0));
        assert_eq!(t.get(1, 1), star());
        assert_eq!(t.transpose(), p);
    }

    #[test]
    fn concat_of_single_part_is_that_part() {
        let p = Pda::from_rows(vec![vec![sym(0), star()], vec![star(), sym(1)]]).unwrap();
        assert_eq!(Pda::concat_columns(std::slice::from_ref(&p)).unwrap(), p);
    }

    #[test]
    fn concat_rejects_mismatched_row_counts() {
        let a = Pda::all_stars(2, 2);
        let b = Pda::all_stars(3, 2);
        let err = Pda::concat_columns(&[a, b]).unwrap_err();
        assert_eq!(err, GridError::RowCountMismatch { index: 1, rows: 3, expected: 2 });
    }

    #[test]
    fn concat_orders_columns_left_to_right() {
        let a = Pda::from_rows(vec![vec![sym(0)], vec![star()]]).unwrap();
        let b = Pda::from_rows(vec![vec![star()], vec![sym(1)]]).unwrap();
        let joined = Pda::concat_columns(&[a, b]).unwrap();
        assert_eq!(joined.cols(), 2);
        assert_eq!(joined.get(0, 0), sym(0));
        assert_eq!(joined.get(0, 1), star());
        assert_eq!(joined.get(1, 1), sym(1));
    }
}
