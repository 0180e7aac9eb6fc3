//! Structural validation of a grid against the array-defining conditions.
//!
//! The checks, in report order:
//! - C1: the star count is the same in every column.
//! - C2: the symbols present cover the contiguous range `[0, max]`.
//! - C3: any two equal symbols lie in distinct rows and columns (C3a) and
//!   both cross positions of the 2x2 sub-array they span are stars (C3b).
//! - Regularity and the cyclic star layout are measured on top of a valid
//!   array; they never disqualify it.

use std::collections::BTreeMap;

use super::report::{ValidationReport, Violation};
use super::{Pda, PdaEntry};

impl Pda {
    /// Checks every defining condition and measures the regular gain and the
    /// cyclic shift when they exist. See [`ValidationReport`] for the exact
    /// semantics of each field.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let star_counts: Vec<usize> = (0..self.cols())
            .map(|j| (0..self.rows()).filter(|&i| self.get(i, j).is_star()).count())
            .collect();
        let reference = modal_count(&star_counts);
        let uniform = star_counts.iter().all(|&c| c == reference);
        for (column, &found) in star_counts.iter().enumerate() {
            if found != reference {
                violations.push(Violation::StarCountMismatch { column, found, expected: reference });
            }
        }
        let stars_per_column = uniform.then_some(reference);

        let mut positions: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, j, entry) in self.iter_entries() {
            if let PdaEntry::Symbol(s) = entry {
                positions.entry(s).or_default().push((i, j));
            }
        }
        let symbol_count = positions.len();
        match positions.keys().next_back() {
            None => violations.push(Violation::MissingSymbol { symbol: 0 }),
            Some(&max) => {
                for symbol in 0..=max {
                    if !positions.contains_key(&symbol) {
                        violations.push(Violation::MissingSymbol { symbol });
                    }
                }
            }
        }

        for (&symbol, occs) in &positions {
            for a in 0..occs.len() {
                for b in a + 1..occs.len() {
                    let (first, second) = (occs[a], occs[b]);
                    if first.0 == second.0 || first.1 == second.1 {
                        violations.push(Violation::SymbolCollision { symbol, first, second });
                        continue;
                    }
                    for cross in [(first.0, second.1), (second.0, first.1)] {
                        if !self.get(cross.0, cross.1).is_star() {
                            violations.push(Violation::CrossNotStar { symbol, first, second, cross });
                        }
                    }
                }
            }
        }

        let is_pda = violations.iter().all(|v| !v.is_defining());

        let regular_gain = if is_pda {
            let mut gains = positions.values().map(|occs| occs.len());
            match gains.next() {
                Some(first) if gains.all(|g| g == first) => Some(first),
                _ => None,
            }
        } else {
            None
        };

        let cyclic_shift = if regular_gain.is_some() {
            self.measure_cyclic_shift(&mut violations)
        } else {
            None
        };

        violations.sort();
        ValidationReport {
            is_pda,
            stars_per_column,
            symbol_count,
            regular_gain,
            cyclic_shift,
            violations,
        }
    }

    fn measure_cyclic_shift(&self, violations: &mut Vec<Violation>) -> Option<usize> {
        let rows = self.rows();
        let star_rows: Vec<Vec<usize>> = (0..self.cols())
            .map(|j| (0..rows).filter(|&i| self.get(i, j).is_star()).collect())
            .collect();

        let mut all_consecutive = true;
        for (column, stars) in star_rows.iter().enumerate() {
            if !is_circular_interval(stars, rows) {
                violations.push(Violation::StarsNotConsecutive { column });
                all_consecutive = false;
            }
        }
        if !all_consecutive || rows == 1 {
            return None;
        }

        let z = star_rows[0].len();
        if z == 0 || self.cols() == 1 {
            // Any shift works vacuously; report the smallest.
            return Some(1);
        }
        // With 0 < z < rows each column's interval has a unique start, so the
        // shift between adjacent columns is forced.
        let starts: Vec<usize> =
            star_rows.iter().map(|stars| interval_start(stars, rows)).collect();
        let implied: Vec<usize> =
            (1..starts.len()).map(|j| (starts[j] + rows - starts[j - 1]) % rows).collect();
        if implied[0] == 0 {
            violations.push(Violation::InconsistentShift { column: 1 });
            return None;
        }
        if let Some(offset) = implied.iter().position(|&t| t != implied[0]) {
            violations.push(Violation::InconsistentShift { column: offset + 1 });
            return None;
        }
        Some(implied[0])
    }
}

/// The most frequent value in `counts`; ties go to the smaller count.
fn modal_count(counts: &[usize]) -> usize {
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in counts {
        *freq.entry(c).or_default() += 1;
    }
    freq.into_iter().max_by_key(|&(count, n)| (n, std::cmp::Reverse(count))).map(|(c, _)| c).unwrap()
}

/// Whether the sorted row set forms one contiguous run modulo `rows`. Empty
/// and full columns qualify trivially.
fn is_circular_interval(sorted: &[usize], rows: usize) -> bool {
    let z = sorted.len();
    if z == 0 || z == rows {
        return true;
    }
    let breaks = (0..z)
        .filter(|&m| (sorted[(m + 1) % z] + rows - sorted[m]) % rows != 1)
        .count();
    breaks <= 1
}

/// First row of the run; requires `0 < len < rows` and a genuine interval.
fn interval_start(sorted: &[usize], rows: usize) -> usize {
    *sorted
        .iter()
        .find(|&&r| !sorted.binary_search(&((r + rows - 1) % rows)).is_ok())
        .expect("non-trivial interval has a start")
}
