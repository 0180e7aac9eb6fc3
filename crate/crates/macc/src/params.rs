//! Validated configuration of the cyclic multi-access network: `users` caches
//! and users on a ring, each cache holding `subfiles_per_cache` consecutive
//! sub-files of every file, each user reading `caches_per_user` neighboring
//! caches. Construction succeeds only on the divisibility lattice the array
//! construction needs, and every derived quantity is then an exact integer.

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("{name} must be positive")]
    Zero { name: &'static str },
    #[error("per-cache sub-file count {cached} exceeds the user count {users}")]
    CacheTooLarge { cached: usize, users: usize },
    #[error("per-cache sub-file count {cached} does not divide the user count {users}")]
    CacheNotDivisor { cached: usize, users: usize },
    #[error(
        "every user already reaches all {users} sub-files ({cached} per cache x {window} caches); \
         the broadcast rate is zero and there is nothing to construct"
    )]
    TrivialRegime { users: usize, cached: usize, window: usize },
    #[error("uncovered span {span} plus one cache ({block}) does not divide the user count {users}")]
    BlockNotDivisor { block: usize, span: usize, users: usize },
    #[error(
        "single-block layout: the construction needs at least two column blocks \
         (window {window} leaves none to wrap)"
    )]
    DegenerateBlockCount { window: usize },
}

/// A validated `(users, per-cache sub-files, access window, files)` tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeParams {
    users: usize,
    subfiles_per_cache: usize,
    caches_per_user: usize,
    files: usize,
}

impl SchemeParams {
    /// Checks the admissibility conditions and returns the fully derived
    /// parameter set. `TrivialRegime` is reported once every user can read
    /// every sub-file; callers that can serve such a configuration without a
    /// broadcast schedule (the simulator can) catch it explicitly.
    pub fn new(
        users: usize,
        subfiles_per_cache: usize,
        caches_per_user: usize,
        files: usize,
    ) -> Result<Self, ParamError> {
        for (name, value) in [
            ("users", users),
            ("subfiles-per-cache", subfiles_per_cache),
            ("caches-per-user", caches_per_user),
            ("files", files),
        ] {
            if value == 0 {
                return Err(ParamError::Zero { name });
            }
        }
        let (k, l) = (subfiles_per_cache, caches_per_user);
        if k > users {
            return Err(ParamError::CacheTooLarge { cached: k, users });
        }
        if !users.is_multiple_of(k) {
            return Err(ParamError::CacheNotDivisor { cached: k, users });
        }
        if k * l >= users {
            return Err(ParamError::TrivialRegime { users, cached: k, window: l });
        }
        let block = users - k * l + k;
        if !users.is_multiple_of(block) {
            return Err(ParamError::BlockNotDivisor { block, span: users - k * l, users });
        }
        if users / block == 1 {
            return Err(ParamError::DegenerateBlockCount { window: l });
        }
        Ok(SchemeParams { users, subfiles_per_cache, caches_per_user, files })
    }

    /// Parameters for array construction alone, where the file count is
    /// irrelevant; it defaults to one file per user.
    pub fn for_construction(
        users: usize,
        subfiles_per_cache: usize,
        caches_per_user: usize,
    ) -> Result<Self, ParamError> {
        Self::new(users, subfiles_per_cache, caches_per_user, users)
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn subfiles_per_cache(&self) -> usize {
        self.subfiles_per_cache
    }

    pub fn caches_per_user(&self) -> usize {
        self.caches_per_user
    }

    pub fn files(&self) -> usize {
        self.files
    }

    /// Normalized cache size: fraction of the library each cache stores.
    pub fn gamma(&self) -> Ratio<u64> {
        Ratio::new(self.subfiles_per_cache as u64, self.users as u64)
    }

    /// Sub-files of each file a user cannot reach through its caches.
    pub fn uncovered_span(&self) -> usize {
        self.users - self.subfiles_per_cache * self.caches_per_user
    }

    /// Side of one block in the block-cyclic layout, in cache units.
    fn block_span(&self) -> usize {
        self.uncovered_span() + self.subfiles_per_cache
    }

    /// Number of row/column blocks in the block-cyclic layout.
    pub fn block_count(&self) -> usize {
        self.users / self.block_span()
    }

    /// Side of the triangular seed block.
    pub fn seed_dim(&self) -> usize {
        self.uncovered_span() / self.subfiles_per_cache + 1
    }

    /// Symbols in the seed block: one per cell above its diagonal.
    pub fn seed_symbol_count(&self) -> usize {
        let d = self.seed_dim() - 1;
        d * (d + 1) / 2
    }

    /// Symbols in one row-expanded part of the final array.
    pub fn part_symbol_count(&self) -> usize {
        self.subfiles_per_cache * self.seed_symbol_count()
    }

    /// Symbols in the final array.
    pub fn symbol_count(&self) -> usize {
        self.uncovered_span() * self.block_span() / 2
    }

    /// Occurrences of each symbol, i.e. users served per broadcast slot.
    pub fn coding_gain(&self) -> usize {
        2 * self.block_count()
    }

    /// Stars per column of the final array: sub-files a user reads from cache.
    pub fn stars_per_column(&self) -> usize {
        self.subfiles_per_cache * self.caches_per_user
    }

    /// Rows of the final array; also the sub-packetization level.
    pub fn subfiles(&self) -> usize {
        self.users
    }

    /// Whether the library is large enough for all-distinct demands.
    pub fn distinct_demands_possible(&self) -> bool {
        self.files >= self.users
    }
}

/// Every admissible `(users, per-cache, window)` configuration with at most
/// `max_users` users, in lexicographic order.
pub fn enumerate_valid(max_users: usize) -> Vec<SchemeParams> {
    let mut out = Vec::new();
    for users in 1..=max_users {
        for cached in 1..=users {
            if users % cached != 0 {
                continue;
            }
            for window in 1..users.div_ceil(cached) {
                if let Ok(params) = SchemeParams::for_construction(users, cached, window) {
                    out.push(params);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derives_the_12_user_example() {
        let p = SchemeParams::new(12, 2, 4, 12).unwrap();
        assert_eq!(p.gamma(), Ratio::new(1, 6));
        assert_eq!(p.block_count(), 2);
        assert_eq!(p.seed_dim(), 3);
        assert_eq!(p.seed_symbol_count(), 3);
        assert_eq!(p.part_symbol_count(), 6);
        assert_eq!(p.coding_gain(), 4);
        assert_eq!(p.symbol_count(), 12);
        assert_eq!(p.stars_per_column(), 8);
        assert_eq!(p.subfiles(), 12);
        assert!(p.distinct_demands_possible());
    }

    #[test]
    fn derives_the_36_user_example() {
        let p = SchemeParams::new(36, 3, 9, 36).unwrap();
        assert_eq!(p.block_count(), 3);
        assert_eq!(p.seed_dim(), 4);
        assert_eq!(p.seed_symbol_count(), 6);
        assert_eq!(p.part_symbol_count(), 18);
        assert_eq!(p.coding_gain(), 6);
        assert_eq!(p.symbol_count(), 54);
        assert_eq!(p.stars_per_column(), 27);
    }

    #[test]
    fn rejects_non_divisor_cache_sizes() {
        assert_eq!(
            SchemeParams::new(12, 5, 1, 12).unwrap_err(),
            ParamError::CacheNotDivisor { cached: 5, users: 12 }
        );
    }

    #[test]
    fn full_coverage_is_the_trivial_regime() {
        assert_eq!(
            SchemeParams::new(12, 2, 6, 12).unwrap_err(),
            ParamError::TrivialRegime { users: 12, cached: 2, window: 6 }
        );
        // A cache as large as the library forces full coverage for any window.
        assert_eq!(
            SchemeParams::new(12, 12, 1, 12).unwrap_err(),
            ParamError::TrivialRegime { users: 12, cached: 12, window: 1 }
        );
    }

    #[test]
    fn single_block_layouts_are_rejected() {
        // A window of one cache always collapses the layout to a single block.
        assert_eq!(
            SchemeParams::new(24, 1, 1, 24).unwrap_err(),
            ParamError::DegenerateBlockCount { window: 1 }
        );
    }

    #[test]
    fn block_divisibility_is_named() {
        assert_eq!(
            SchemeParams::new(12, 2, 3, 12).unwrap_err(),
            ParamError::BlockNotDivisor { block: 8, span: 6, users: 12 }
        );
    }

    #[test]
    fn small_library_is_allowed_but_flagged() {
        let p = SchemeParams::new(12, 2, 4, 3).unwrap();
        assert!(!p.distinct_demands_possible());
    }

    #[test]
    fn enumeration_includes_the_known_points() {
        let points: Vec<(usize, usize, usize)> = enumerate_valid(48)
            .iter()
            .map(|p| (p.users(), p.subfiles_per_cache(), p.caches_per_user()))
            .collect();
        for expected in [(6, 1, 4), (12, 2, 4), (24, 2, 10), (24, 4, 5), (36, 3, 9)] {
            assert!(points.contains(&expected), "missing {expected:?}");
        }
        assert!(!points.iter().any(|&(users, k, l)| k * l >= users));
    }
}
