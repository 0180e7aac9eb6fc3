//! Closed-form transmission rate, coding gain, and sub-packetization of each
//! comparison scheme, evaluated over exact rationals. Floats appear only when
//! rows are serialized.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use thiserror::Error;

use crate::params::{ParamError, SchemeParams};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompareError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("{scheme} does not apply: {reason}")]
    NotApplicable { scheme: &'static str, reason: String },
}

fn int(value: usize) -> BigInt {
    BigInt::from(value)
}

fn rational(numer: usize, denom: usize) -> BigRational {
    BigRational::new(int(numer), int(denom))
}

/// Exact binomial coefficient; zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let r = r.min(n - r);
    let mut acc = BigUint::from(1u32);
    for i in 1..=r {
        acc = acc * BigUint::from(n - r + i) / BigUint::from(i);
    }
    acc
}

/// Iterator over every vector of `parts` non-negative integers summing to
/// `total`, each yielded exactly once. Yields `C(total + parts - 1, parts - 1)`
/// vectors.
pub struct WeakCompositions {
    current: Option<Vec<usize>>,
}

pub fn weak_compositions(total: usize, parts: usize) -> WeakCompositions {
    assert!(parts >= 1, "a composition needs at least one part");
    let mut first = vec![0; parts];
    first[0] = total;
    WeakCompositions { current: Some(first) }
}

impl Iterator for WeakCompositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.take()?;
        let parts = current.len();
        // Move one unit right from the rightmost movable position and gather
        // everything beyond it back onto that neighbor.
        if let Some(i) = (0..parts - 1).rev().find(|&i| current[i] > 0) {
            let mut next = current.clone();
            next[i] -= 1;
            let gathered: usize = next[i + 1..].iter().sum::<usize>() + 1;
            next[i + 1..].iter_mut().for_each(|v| *v = 0);
            next[i + 1] = gathered;
            self.current = Some(next);
        }
        Some(current)
    }
}

/// Rate of the cyclic-array scheme: `(K - kL)(K - kL + k) / 2K`, zero in the
/// full-coverage regime.
pub fn rate_new(users: usize, cached: usize, window: usize) -> Result<BigRational, ParamError> {
    match SchemeParams::for_construction(users, cached, window) {
        Ok(params) => {
            let span = params.uncovered_span();
            Ok(rational(span * (span + cached), 2 * users))
        }
        Err(ParamError::TrivialRegime { .. }) => Ok(BigRational::from_integer(int(0))),
        Err(err) => Err(err),
    }
}

pub fn gain_new(params: &SchemeParams) -> BigRational {
    BigRational::from_integer(int(params.coding_gain()))
}

/// NT scheme rate `(K - kL)/(k + 1)`; zero at full coverage.
pub fn rate_nt(users: usize, cached: usize, window: usize) -> Result<BigRational, ParamError> {
    match SchemeParams::for_construction(users, cached, window) {
        Ok(_) => Ok(rational(users - cached * window, cached + 1)),
        Err(ParamError::TrivialRegime { .. }) => Ok(BigRational::from_integer(int(0))),
        Err(err) => Err(err),
    }
}

pub fn gain_nt(cached: usize) -> BigRational {
    BigRational::from_integer(int(cached + 1))
}

/// NT sub-packetization `K * C(K - kL + k, k)`; needs `kL <= K`.
pub fn subpacketization_nt(users: usize, cached: usize, window: usize) -> Option<BigUint> {
    let covered = cached.checked_mul(window)?;
    if covered > users {
        return None;
    }
    Some(BigUint::from(users) * binomial(users - covered + cached, cached))
}

/// RK scheme rate: `(K - kL)^2 / K` while `k <= floor(K/L)`, zero at
/// `k = ceil(K/L)`, undefined beyond.
pub fn rate_rk(users: usize, cached: usize, window: usize) -> Result<BigRational, CompareError> {
    match SchemeParams::for_construction(users, cached, window) {
        Ok(_) | Err(ParamError::TrivialRegime { .. }) => {}
        Err(err) => return Err(err.into()),
    }
    if cached <= users / window {
        let span = users - cached * window;
        Ok(rational(span * span, users))
    } else if cached == users.div_ceil(window) {
        Ok(BigRational::from_integer(int(0)))
    } else {
        Err(CompareError::NotApplicable {
            scheme: "RK",
            reason: format!("cache fraction {cached}/{users} is outside the rate domain"),
        })
    }
}

pub fn gain_rk(params: &SchemeParams) -> BigRational {
    rational(params.users(), params.uncovered_span())
}

/// RK (and NK) sub-packetization `(K/k) * C(K - k(L-1) - 1, k - 1)`; needs
/// `kL <= K`.
pub fn subpacketization_rk(users: usize, cached: usize, window: usize) -> Option<BigUint> {
    let covered = cached.checked_mul(window)?;
    if covered > users || !users.is_multiple_of(cached) {
        return None;
    }
    Some(BigUint::from(users / cached) * binomial(users - covered + cached - 1, cached - 1))
}

/// NK scheme rate: an average over the weak `(k+1)`-compositions of
/// `K - kL - 1`, each contributing `min(2(K - kL) + k - 1 - max_part, K)`,
/// normalized by `F_NK * (k + 1)`.
pub fn rate_nk(users: usize, cached: usize, window: usize) -> Result<BigRational, CompareError> {
    let params = SchemeParams::for_construction(users, cached, window).map_err(|err| match err {
        ParamError::TrivialRegime { .. } => CompareError::NotApplicable {
            scheme: "NK",
            reason: "full coverage leaves no sub-file to schedule".into(),
        },
        other => CompareError::Param(other),
    })?;
    let span = params.uncovered_span();
    let numerator: u128 = weak_compositions(span - 1, cached + 1)
        .map(|composition| {
            let largest = *composition.iter().max().expect("at least one part");
            (2 * span + cached - 1 - largest).min(users) as u128
        })
        .sum();
    let subpacketization =
        subpacketization_rk(users, cached, window).expect("valid parameters have a count");
    let denominator = BigInt::from(subpacketization) * int(cached + 1);
    Ok(BigRational::new(BigInt::from(numerator), denominator))
}

/// SPE sub-packetization `K(K - 2L + 2)/4`, defined for two sub-files per
/// cache and a window short enough to leave it positive.
pub fn subpacketization_spe(users: usize, window: usize) -> Result<BigUint, CompareError> {
    if !users.is_multiple_of(2) {
        return Err(CompareError::NotApplicable {
            scheme: "SPE",
            reason: "two sub-files per cache need an even user count".into(),
        });
    }
    let doubled = 2 * window;
    if users + 2 <= doubled {
        return Err(CompareError::NotApplicable {
            scheme: "SPE",
            reason: "window too wide: the sub-packetization degenerates to zero".into(),
        });
    }
    Ok(BigUint::from(users) * BigUint::from(users + 2 - doubled) / BigUint::from(4u32))
}

/// Optimal-rate lower bound, piecewise in the normalized cache size; stated
/// only for windows covering at least half the ring.
pub fn rate_lower_bound(
    users: usize,
    window: usize,
    gamma: &BigRational,
) -> Result<BigRational, CompareError> {
    if 2 * window < users {
        return Err(CompareError::NotApplicable {
            scheme: "LowerBound",
            reason: "stated only for windows covering at least half the ring".into(),
        });
    }
    let zero = BigRational::from_integer(int(0));
    if gamma < &zero {
        return Err(CompareError::NotApplicable {
            scheme: "LowerBound",
            reason: "negative cache size".into(),
        });
    }
    let k_users = BigRational::from_integer(int(users));
    let knee = rational(users - window, 1) * rational(users - window + 1, 2 * users);
    let one_over = rational(1, users);
    let two_over = rational(2, users);
    Ok(if gamma <= &one_over {
        &k_users - (&k_users - &knee) * &k_users * gamma
    } else if gamma <= &two_over {
        knee * (BigRational::from_integer(int(2)) - &k_users * gamma)
    } else {
        zero
    })
}

/// How the cyclic scheme's coding gain compares against NT and RK on a valid
/// configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GainComparison {
    /// Strictly beats the NT gain; holds exactly when
    /// `k(k+1)(L-1) > K(k-1)`.
    pub exceeds_nt: bool,
    /// At least the RK gain; holds on every valid configuration.
    pub at_least_rk: bool,
}

pub fn gain_comparisons(params: &SchemeParams) -> GainComparison {
    let exceeds_nt = gain_new(params) > gain_nt(params.subfiles_per_cache());
    let at_least_rk = gain_new(params) >= gain_rk(params);
    GainComparison { exceeds_nt, at_least_rk }
}

/// The window threshold form of the NT gain comparison:
/// `L > K(k-1)/(k(k+1)) + 1`, as exact integer arithmetic.
pub fn nt_gain_threshold_exceeded(users: usize, cached: usize, window: usize) -> bool {
    cached * (cached + 1) * (window - 1) > users * (cached - 1)
}

#[cfg(test)]
mod tests {
    use num_traits::ToPrimitive;

    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binomial_anchors() {
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(binomial(12, 3), BigUint::from(220u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
    }

    #[test]
    fn weak_compositions_enumerate_once_each() {
        let all: Vec<Vec<usize>> = weak_compositions(3, 3).collect();
        assert_eq!(all.len(), 10);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 10);
        assert!(all.iter().all(|c| c.iter().sum::<usize>() == 3));

        assert_eq!(weak_compositions(0, 4).collect::<Vec<_>>(), vec![vec![0, 0, 0, 0]]);
        assert_eq!(weak_compositions(1, 2).collect::<Vec<_>>(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn new_scheme_rate_anchors() {
        assert_eq!(rate_new(12, 2, 4).unwrap(), rat(1, 1));
        assert_eq!(rate_new(12, 2, 6).unwrap(), rat(0, 1));
        assert_eq!(rate_new(36, 3, 9).unwrap(), rat(3, 2));
        assert!(rate_new(12, 5, 1).is_err());
    }

    #[test]
    fn nt_anchors() {
        assert_eq!(rate_nt(12, 2, 4).unwrap(), rat(4, 3));
        assert_eq!(rate_nt(12, 2, 6).unwrap(), rat(0, 1));
        assert_eq!(gain_nt(2), rat(3, 1));
        assert_eq!(subpacketization_nt(12, 2, 4).unwrap(), BigUint::from(180u32));
        assert_eq!(subpacketization_nt(36, 3, 9).unwrap(), BigUint::from(7920u32));
        assert_eq!(gain_nt(3), rat(4, 1));
    }

    #[test]
    fn rk_anchors() {
        assert_eq!(rate_rk(12, 2, 4).unwrap(), rat(4, 3));
        assert_eq!(rate_rk(12, 2, 6).unwrap(), rat(0, 1));
        let params = SchemeParams::for_construction(12, 2, 4).unwrap();
        assert_eq!(gain_rk(&params), rat(3, 1));
        assert_eq!(subpacketization_rk(12, 2, 4).unwrap(), BigUint::from(30u32));
        assert_eq!(subpacketization_rk(36, 3, 9).unwrap(), BigUint::from(660u32));
    }

    #[test]
    fn nk_rate_matches_the_hand_enumeration() {
        // Ten compositions of 3 into 3 parts: three with a part of 3, six
        // topping out at 2, one flat, contributing 6, 7, and 8 sub-files each.
        let rate = rate_nk(12, 2, 4).unwrap();
        assert_eq!(rate, rat(68, 90));
        assert!((rate.to_f64().unwrap() - 0.755).abs() < 1e-3);
        assert_eq!(subpacketization_rk(12, 2, 4).unwrap(), BigUint::from(30u32));
    }

    #[test]
    fn nk_needs_an_uncovered_subfile() {
        assert!(matches!(rate_nk(12, 2, 6), Err(CompareError::NotApplicable { .. })));
    }

    #[test]
    fn nk_single_composition_case() {
        // An uncovered span of one leaves only the all-zero composition.
        let params = SchemeParams::for_construction(4, 1, 3).unwrap();
        assert_eq!(params.uncovered_span(), 1);
        // min(2*span + k - 1 - largest, users) = min(2, 4) with one flat composition.
        let expected_numerator = 2;
        let denominator = subpacketization_rk(4, 1, 3).unwrap() * BigUint::from(2u32);
        assert_eq!(
            rate_nk(4, 1, 3).unwrap(),
            BigRational::new(BigInt::from(expected_numerator), BigInt::from(denominator))
        );
    }

    #[test]
    fn spe_anchors() {
        assert_eq!(subpacketization_spe(12, 4).unwrap(), BigUint::from(18u32));
        assert_eq!(subpacketization_spe(24, 4).unwrap(), BigUint::from(108u32));
        assert!(matches!(subpacketization_spe(12, 7), Err(CompareError::NotApplicable { .. })));
    }

    #[test]
    fn lower_bound_branches() {
        let users = 12;
        let window = 7;
        assert_eq!(
            rate_lower_bound(users, window, &rat(0, 1)).unwrap(),
            BigRational::from_integer(BigInt::from(users))
        );
        assert_eq!(rate_lower_bound(users, window, &rat(1, 4)).unwrap(), rat(0, 1));
        assert!(matches!(
            rate_lower_bound(12, 3, &rat(1, 12)),
            Err(CompareError::NotApplicable { .. })
        ));
    }

    #[test]
    fn lower_bound_is_continuous_at_the_first_knee() {
        for (users, window) in [(12usize, 7usize), (24, 13), (10, 5)] {
            let gamma = rat(1, users as i64);
            let first = {
                let k_users = BigRational::from_integer(BigInt::from(users));
                let knee = rat(((users - window) * (users - window + 1)) as i64, (2 * users) as i64);
                &k_users - (&k_users - &knee) * &k_users * &gamma
            };
            let second = {
                let knee = rat(((users - window) * (users - window + 1)) as i64, (2 * users) as i64);
                knee * (BigRational::from_integer(BigInt::from(2)) - BigRational::from_integer(BigInt::from(users)) * &gamma)
            };
            assert_eq!(first, second);
            assert_eq!(rate_lower_bound(users, window, &gamma).unwrap(), first);
        }
    }

    #[test]
    fn gain_comparison_thresholds() {
        let p = SchemeParams::for_construction(12, 2, 4).unwrap();
        let cmp = gain_comparisons(&p);
        assert!(cmp.exceeds_nt);
        assert!(cmp.at_least_rk);
        assert!(nt_gain_threshold_exceeded(12, 2, 4));

        let p = SchemeParams::for_construction(24, 6, 3).unwrap();
        let cmp = gain_comparisons(&p);
        assert!(!cmp.exceeds_nt);
        assert!(cmp.at_least_rk);
        assert!(!nt_gain_threshold_exceeded(24, 6, 3));
    }
}
