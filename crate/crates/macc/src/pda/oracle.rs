//! Brute-force reference validator. Re-derives the whole report from raw cell
//! reads with no shared logic beyond the report vocabulary: C3 is a full scan
//! over every ordered pair of cells, the gain is recounted per symbol by
//! rescanning the grid, and the cyclic shift is found by trying every
//! candidate against every column pair. Exists to differential-test
//! [`Pda::validate`].

use super::report::{ValidationReport, Violation};
use super::{Pda, PdaEntry};

#[allow(clippy::needless_range_loop)] // deliberately index-driven scans
pub fn validate_oracle(grid: &Pda) -> ValidationReport {
    let rows = grid.rows();
    let cols = grid.cols();
    let mut violations = Vec::new();

    // C1, the long way: count stars per column, then find the most frequent
    // count by scanning candidate values.
    let mut star_counts = vec![0usize; cols];
    for j in 0..cols {
        for i in 0..rows {
            if grid.get(i, j) == PdaEntry::Star {
                star_counts[j] += 1;
            }
        }
    }
    let mut reference = star_counts[0];
    let mut reference_freq = 0usize;
    for candidate in 0..=rows {
        let freq = star_counts.iter().filter(|&&c| c == candidate).count();
        if freq > reference_freq {
            reference = candidate;
            reference_freq = freq;
        }
    }
    let mut uniform = true;
    for (column, &found) in star_counts.iter().enumerate() {
        if found != reference {
            uniform = false;
            violations.push(Violation::StarCountMismatch { column, found, expected: reference });
        }
    }

    // C2: scan for the maximum symbol, then probe every value below it.
    let mut max_symbol = None;
    for (_, _, entry) in grid.iter_entries() {
        if let PdaEntry::Symbol(s) = entry {
            if max_symbol.is_none_or(|m| s > m) {
                max_symbol = Some(s);
            }
        }
    }
    let mut symbol_count = 0usize;
    match max_symbol {
        None => violations.push(Violation::MissingSymbol { symbol: 0 }),
        Some(max) => {
            for symbol in 0..=max {
                let occurs = grid.iter_entries().any(|(_, _, e)| e == PdaEntry::Symbol(symbol));
                if occurs {
                    symbol_count += 1;
                } else {
                    violations.push(Violation::MissingSymbol { symbol });
                }
            }
        }
    }

    // C3: every ordered pair of distinct cells, no grouping.
    for i1 in 0..rows {
        for j1 in 0..cols {
            let PdaEntry::Symbol(symbol) = grid.get(i1, j1) else { continue };
            for i2 in 0..rows {
                for j2 in 0..cols {
                    if (i2, j2) <= (i1, j1) {
                        continue;
                    }
                    if grid.get(i2, j2) != PdaEntry::Symbol(symbol) {
                        continue;
                    }
                    let (first, second) = ((i1, j1), (i2, j2));
                    if i1 == i2 || j1 == j2 {
                        violations.push(Violation::SymbolCollision { symbol, first, second });
                        continue;
                    }
                    if grid.get(i1, j2) != PdaEntry::Star {
                        violations.push(Violation::CrossNotStar {
                            symbol,
                            first,
                            second,
                            cross: (i1, j2),
                        });
                    }
                    if grid.get(i2, j1) != PdaEntry::Star {
                        violations.push(Violation::CrossNotStar {
                            symbol,
                            first,
                            second,
                            cross: (i2, j1),
                        });
                    }
                }
            }
        }
    }

    let is_pda = violations.iter().all(|v| !v.is_defining());

    // Regularity: recount each symbol from scratch.
    let mut regular_gain = None;
    if is_pda {
        if let Some(max) = max_symbol {
            let mut gain = None;
            let mut all_equal = true;
            for symbol in 0..=max {
                let count =
                    grid.iter_entries().filter(|&(_, _, e)| e == PdaEntry::Symbol(symbol)).count();
                match gain {
                    None => gain = Some(count),
                    Some(g) if g != count => all_equal = false,
                    _ => {}
                }
            }
            if all_equal {
                regular_gain = gain;
            }
        }
    }

    let cyclic_shift = if regular_gain.is_some() {
        oracle_cyclic_shift(grid, &mut violations)
    } else {
        None
    };

    violations.sort();
    ValidationReport { is_pda, stars_per_column: uniform.then_some(reference), symbol_count, regular_gain, cyclic_shift, violations }
}

fn oracle_cyclic_shift(grid: &Pda, violations: &mut Vec<Violation>) -> Option<usize> {
    let rows = grid.rows();
    let cols = grid.cols();

    // Consecutiveness: try every possible start of a circular run.
    let mut all_consecutive = true;
    for column in 0..cols {
        let stars: Vec<bool> = (0..rows).map(|i| grid.get(i, column).is_star()).collect();
        let z = stars.iter().filter(|&&s| s).count();
        let mut consecutive = z == 0 || z == rows;
        for start in 0..rows {
            if consecutive {
                break;
            }
            consecutive =
                (0..rows).all(|offset| stars[(start + offset) % rows] == (offset < z));
        }
        if !consecutive {
            violations.push(Violation::StarsNotConsecutive { column });
            all_consecutive = false;
        }
    }
    if !all_consecutive || rows == 1 {
        return None;
    }

    // Shift search: keep every t in [1, rows) alive while columns agree with
    // it; the first column killing all candidates is the finding.
    let mut candidates: Vec<usize> = (1..rows).collect();
    for j in 1..cols {
        candidates.retain(|&t| {
            (0..rows).all(|i| {
                grid.get(i, j).is_star() == grid.get((i + rows - t) % rows, j - 1).is_star()
            })
        });
        if candidates.is_empty() {
            violations.push(Violation::InconsistentShift { column: j });
            return None;
        }
    }
    candidates.first().copied()
}
