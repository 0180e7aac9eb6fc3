//! Deterministic construction of the k-cyclic regular array in four steps:
//! a triangular seed block, a block-cyclic square grid, a row expansion that
//! interleaves shifted copies of each row, and a column-wise concatenation of
//! symbol-shifted parts. The star pattern of the result matches the cyclic
//! cache placement: entry `(i, j)` is a star exactly when user `j` reaches
//! sub-file `i` through its caches.

use serde::Serialize;

use crate::params::{ParamError, SchemeParams};
use crate::pda::{Pda, PdaEntry};

/// Triangular seed block: stars on and below the diagonal, the cells above it
/// numbered so that each symbol occurs exactly once. Row 0 counts up from 0;
/// every later cell adds a row-dependent stride to the cell above it.
#[allow(clippy::needless_range_loop)] // each cell reads the cell one row up
pub fn seed_block(params: &SchemeParams) -> Pda {
    let dim = params.seed_dim();
    let stride_base = dim - 1;
    let mut grid = vec![vec![PdaEntry::Star; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            grid[i][j] = if j <= i {
                PdaEntry::Star
            } else if i == 0 {
                PdaEntry::Symbol(j - 1)
            } else {
                match grid[i - 1][j] {
                    PdaEntry::Symbol(s) => PdaEntry::Symbol(s + stride_base - i),
                    PdaEntry::Star => unreachable!("cell above a strict upper cell is never a star"),
                }
            };
        }
    }
    Pda::from_rows(grid).expect("seed block is rectangular")
}

/// Block-cyclic square grid over the seed: block `(r, c)` is the seed when
/// `r == c`, its transpose when `c` follows `r` cyclically, and all stars
/// otherwise. Needs at least two blocks so the seed and its transpose land in
/// distinct positions, which parameter validation guarantees.
pub fn block_grid(seed: &Pda, params: &SchemeParams) -> Pda {
    let blocks = params.block_count();
    let dim = seed.rows();
    let transposed = seed.transpose();
    Pda::from_fn(blocks * dim, blocks * dim, |i, j| {
        let (block_row, block_col) = (i / dim, j / dim);
        if block_row == block_col {
            seed.get(i % dim, j % dim)
        } else if block_col == (block_row + 1) % blocks {
            transposed.get(i % dim, j % dim)
        } else {
            PdaEntry::Star
        }
    })
}

/// Row expansion: each source row is followed by `k - 1` copies whose symbols
/// are successively shifted by the seed symbol count, so consecutive rows use
/// disjoint symbol ranges while sharing one star pattern.
pub fn expand_rows(grid: &Pda, params: &SchemeParams) -> Pda {
    let k = params.subfiles_per_cache();
    let shift = params.seed_symbol_count();
    Pda::from_fn(grid.rows() * k, grid.cols(), |i, j| match grid.get(i / k, j) {
        PdaEntry::Star => PdaEntry::Star,
        PdaEntry::Symbol(s) => PdaEntry::Symbol(s + (i % k) * shift),
    })
}

/// Builds the full `users x users` delivery array for an admissible
/// configuration: `k` column parts, each a symbol-shifted copy of the
/// row-expanded grid.
pub fn construct(
    users: usize,
    subfiles_per_cache: usize,
    caches_per_user: usize,
) -> Result<Pda, ParamError> {
    let params = SchemeParams::for_construction(users, subfiles_per_cache, caches_per_user)?;
    Ok(construct_from(&params))
}

/// As [`construct`], for an already validated parameter set.
pub fn construct_from(params: &SchemeParams) -> Pda {
    let seed = seed_block(params);
    let grid = block_grid(&seed, params);
    let part = expand_rows(&grid, params);
    let parts: Vec<Pda> = (0..params.subfiles_per_cache())
        .map(|t| part.shift_add(t * params.part_symbol_count()))
        .collect();
    Pda::concat_columns(&parts).expect("parts share the row count")
}

/// Summary of a constructed array, serialized alongside the grid text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PdaDescriptor {
    #[serde(rename = "K")]
    pub users: usize,
    #[serde(rename = "k")]
    pub subfiles_per_cache: usize,
    #[serde(rename = "L")]
    pub caches_per_user: usize,
    #[serde(rename = "Z")]
    pub stars_per_column: usize,
    #[serde(rename = "S")]
    pub symbol_count: usize,
    #[serde(rename = "g")]
    pub coding_gain: usize,
    #[serde(rename = "t")]
    pub cyclic_shift: usize,
    #[serde(rename = "F")]
    pub subfiles: usize,
}

impl PdaDescriptor {
    pub fn from_params(params: &SchemeParams) -> Self {
        PdaDescriptor {
            users: params.users(),
            subfiles_per_cache: params.subfiles_per_cache(),
            caches_per_user: params.caches_per_user(),
            stars_per_column: params.stars_per_column(),
            symbol_count: params.symbol_count(),
            coding_gain: params.coding_gain(),
            cyclic_shift: params.subfiles_per_cache(),
            subfiles: params.subfiles(),
        }
    }
}
