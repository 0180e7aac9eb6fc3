//! Validation outcome for a grid, shared by the fast validator and the
//! brute-force oracle. Both must produce identical reports, so the exact
//! semantics of every field are pinned here:
//!
//! - `stars_per_column` is present iff every column has the same star count.
//!   When counts differ, the reference count is the most frequent one (ties
//!   broken toward the smaller count) and each deviating column gets one
//!   star-count finding.
//! - `symbol_count` is the number of distinct symbols present. Symbols must
//!   cover the contiguous range `[0, max]`; each missing value is reported,
//!   and a grid with no symbols at all reports value `0` as missing.
//! - `regular_gain` is present iff the grid is a valid array and every symbol
//!   occurs the same number of times.
//! - `cyclic_shift` is evaluated only when `regular_gain` is present: every
//!   column's stars must occupy cyclically consecutive rows, and there must be
//!   a single `t` in `[1, rows)` shifting each column's star set down onto the
//!   next column's. Single-row grids never report a shift. When stars are
//!   consecutive but no shift works, the finding names the first column at
//!   which no candidate `t` survives.

use serde::ser::{Serialize, SerializeMap, Serializer};

/// Which defining condition a finding violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Condition {
    C1,
    C2,
    C3a,
    C3b,
    Cyclicity,
}

impl Condition {
    pub fn as_str(&self) -> &'static str {
        match self {
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C3a => "C3a",
            Condition::C3b => "C3b",
            Condition::Cyclicity => "cyclicity",
        }
    }
}

/// A single structural finding, with the coordinates that witness it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// C1: `column` holds `found` stars while the reference count is `expected`.
    StarCountMismatch { column: usize, found: usize, expected: usize },
    /// C2: `symbol` lies below the maximum symbol but never occurs.
    MissingSymbol { symbol: usize },
    /// C3a: two equal symbols share a row or a column.
    SymbolCollision { symbol: usize, first: (usize, usize), second: (usize, usize) },
    /// C3b: the cross position of two equal symbols is not a star.
    CrossNotStar {
        symbol: usize,
        first: (usize, usize),
        second: (usize, usize),
        cross: (usize, usize),
    },
    /// Cyclicity: the stars of `column` do not form a circular interval.
    StarsNotConsecutive { column: usize },
    /// Cyclicity: no single downward shift maps every column onto the next;
    /// `column` is the first where all candidates die.
    InconsistentShift { column: usize },
}

impl Violation {
    pub fn condition(&self) -> Condition {
        match self {
            Violation::StarCountMismatch { .. } => Condition::C1,
            Violation::MissingSymbol { .. } => Condition::C2,
            Violation::SymbolCollision { .. } => Condition::C3a,
            Violation::CrossNotStar { .. } => Condition::C3b,
            Violation::StarsNotConsecutive { .. } | Violation::InconsistentShift { .. } => {
                Condition::Cyclicity
            }
        }
    }

    /// True for findings that disqualify the grid from being a valid array
    /// (cyclicity findings do not).
    pub fn is_defining(&self) -> bool {
        self.condition() != Condition::Cyclicity
    }
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("condition", self.condition().as_str())?;
        match self {
            Violation::StarCountMismatch { column, found, expected } => {
                map.serialize_entry("kind", "star_count_mismatch")?;
                map.serialize_entry("column", column)?;
                map.serialize_entry("found", found)?;
                map.serialize_entry("expected", expected)?;
            }
            Violation::MissingSymbol { symbol } => {
                map.serialize_entry("kind", "missing_symbol")?;
                map.serialize_entry("symbol", symbol)?;
            }
            Violation::SymbolCollision { symbol, first, second } => {
                map.serialize_entry("kind", "symbol_collision")?;
                map.serialize_entry("symbol", symbol)?;
                map.serialize_entry("first", first)?;
                map.serialize_entry("second", second)?;
            }
            Violation::CrossNotStar { symbol, first, second, cross } => {
                map.serialize_entry("kind", "cross_not_star")?;
                map.serialize_entry("symbol", symbol)?;
                map.serialize_entry("first", first)?;
                map.serialize_entry("second", second)?;
                map.serialize_entry("cross", cross)?;
            }
            Violation::StarsNotConsecutive { column } => {
                map.serialize_entry("kind", "stars_not_consecutive")?;
                map.serialize_entry("column", column)?;
            }
            Violation::InconsistentShift { column } => {
                map.serialize_entry("kind", "inconsistent_shift")?;
                map.serialize_entry("column", column)?;
            }
        }
        map.end()
    }
}

/// Everything the validators establish about a grid.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub is_pda: bool,
    #[serde(rename = "Z")]
    pub stars_per_column: Option<usize>,
    #[serde(rename = "S")]
    pub symbol_count: usize,
    #[serde(rename = "g")]
    pub regular_gain: Option<usize>,
    #[serde(rename = "t")]
    pub cyclic_shift: Option<usize>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// Findings that violate the defining conditions, i.e. everything except
    /// cyclicity notes.
    pub fn defining_violations(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.is_defining())
    }
}
