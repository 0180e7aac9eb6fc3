//! Fixture-backed checks of the documented grids: the 12x6 part, the full
//! 12x12 array, and their relationship under symbol shifts and column
//! concatenation.

use macc::pda::{validate_oracle, Pda, PdaEntry};
use macc::sim::DetRng;

const PART_12X6: &str = include_str!("fixtures/part_12x6.txt");
const PDA_12X12: &str = include_str!("fixtures/pda_12x12.txt");

fn part() -> Pda {
    PART_12X6.parse().unwrap()
}

fn full() -> Pda {
    PDA_12X12.parse().unwrap()
}

#[test]
fn part_fixture_is_a_2_cyclic_4_regular_array() {
    let report = part().validate();
    assert!(report.is_pda);
    assert_eq!(report.stars_per_column, Some(8));
    assert_eq!(report.symbol_count, 6);
    assert_eq!(report.regular_gain, Some(4));
    assert_eq!(report.cyclic_shift, Some(2));
    assert!(report.violations.is_empty());
}

#[test]
fn oracle_agrees_on_the_part_fixture() {
    let grid = part();
    assert_eq!(grid.validate(), validate_oracle(&grid));
}

#[test]
fn shifted_part_is_the_right_half_of_the_full_array() {
    let shifted = part().shift_add(6);
    let full = full();
    for i in 0..full.rows() {
        for j in 6..full.cols() {
            assert_eq!(shifted.get(i, j - 6), full.get(i, j), "cell ({i},{j})");
        }
    }
}

#[test]
fn concatenating_the_shifted_parts_rebuilds_the_full_array() {
    let part = part();
    let rebuilt = Pda::concat_columns(&[part.clone(), part.shift_add(6)]).unwrap();
    assert_eq!(rebuilt, full());
}

#[test]
fn full_fixture_is_a_2_cyclic_4_regular_array() {
    let report = full().validate();
    assert!(report.is_pda);
    assert_eq!(report.stars_per_column, Some(8));
    assert_eq!(report.symbol_count, 12);
    assert_eq!(report.regular_gain, Some(4));
    assert_eq!(report.cyclic_shift, Some(2));
}

#[test]
fn transpose_of_the_seed_matches_the_lower_left_block() {
    let params = macc::SchemeParams::for_construction(12, 2, 4).unwrap();
    let seed = macc::construct::seed_block(&params);
    let expected: Pda = "3 3\n* * *\n0 * *\n1 2 *\n".parse().unwrap();
    assert_eq!(seed.transpose(), expected);
}

#[test]
fn validators_agree_on_one_hundred_single_cell_mutations() {
    let base = full();
    let mut rng = DetRng::new(0x5eed);
    for round in 0..100 {
        let mut rows: Vec<Vec<PdaEntry>> = (0..base.rows())
            .map(|i| (0..base.cols()).map(|j| base.get(i, j)).collect())
            .collect();
        let (i, j) = (rng.below(base.rows()), rng.below(base.cols()));
        let old = rows[i][j];
        let mut replacement = old;
        while replacement == old {
            replacement = match rng.below(13) {
                0 => PdaEntry::Star,
                s => PdaEntry::Symbol(s - 1),
            };
        }
        rows[i][j] = replacement;
        let mutant = Pda::from_rows(rows).unwrap();
        assert_eq!(
            mutant.validate(),
            validate_oracle(&mutant),
            "round {round}: mutated ({i},{j}) from {old:?} to {replacement:?}"
        );
    }
}
