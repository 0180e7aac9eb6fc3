//! Scheme comparison as a strategy registry: every comparison target sits
//! behind the [`Scheme`] trait, is registered by name, and is picked at
//! runtime by the CLI. `compare` evaluates one configuration across the
//! registry; `sweep` walks every admissible `(k, L)` pair for a user count
//! and emits the CSV behind the rate and sub-packetization plots.

mod formulas;

pub use formulas::{
    binomial, gain_comparisons, gain_new, gain_nt, gain_rk, nt_gain_threshold_exceeded,
    rate_lower_bound, rate_new, rate_nk, rate_nt, rate_rk, subpacketization_nt,
    subpacketization_rk, subpacketization_spe, weak_compositions, CompareError, GainComparison,
    WeakCompositions,
};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::params::{ParamError, SchemeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    New,
    Nt,
    Rk,
    Spe,
    Nk,
    LowerBound,
}

impl SchemeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeKind::New => "New",
            SchemeKind::Nt => "NT",
            SchemeKind::Rk => "RK",
            SchemeKind::Spe => "SPE",
            SchemeKind::Nk => "NK",
            SchemeKind::LowerBound => "LowerBound",
        }
    }
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Coding gain of a scheme: an exact value, or a half-open range when the
/// scheme only bounds it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gain {
    Exact(BigRational),
    Range { min: BigRational, max: BigRational },
}

/// One scheme evaluated at one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeRow {
    pub scheme: SchemeKind,
    pub applicable: bool,
    pub reason: Option<String>,
    pub rate: Option<BigRational>,
    pub gain: Option<Gain>,
    pub subpacketization: Option<BigUint>,
}

impl SchemeRow {
    fn not_applicable(scheme: SchemeKind, reason: impl Into<String>) -> Self {
        SchemeRow {
            scheme,
            applicable: false,
            reason: Some(reason.into()),
            rate: None,
            gain: None,
            subpacketization: None,
        }
    }
}

/// One `(users, k, L)` configuration, classified once so every scheme can
/// evaluate it without re-deriving the regime.
#[derive(Debug, Clone)]
pub struct ComparePoint {
    users: usize,
    subfiles_per_cache: usize,
    caches_per_user: usize,
    params: Option<SchemeParams>,
}

impl ComparePoint {
    /// Accepts constructible configurations and full-coverage (zero-rate)
    /// ones; anything else is a hard parameter error.
    pub fn classify(
        users: usize,
        subfiles_per_cache: usize,
        caches_per_user: usize,
    ) -> Result<Self, ParamError> {
        match SchemeParams::for_construction(users, subfiles_per_cache, caches_per_user) {
            Ok(params) => Ok(ComparePoint {
                users,
                subfiles_per_cache,
                caches_per_user,
                params: Some(params),
            }),
            Err(ParamError::TrivialRegime { .. }) => {
                Ok(ComparePoint { users, subfiles_per_cache, caches_per_user, params: None })
            }
            Err(err) => Err(err),
        }
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

    /// Parameters when the configuration is constructible; `None` in the
    /// full-coverage regime.
    pub fn params(&self) -> Option<&SchemeParams> {
        self.params.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.params.is_none()
    }

    pub fn gamma(&self) -> BigRational {
        BigRational::new(BigInt::from(self.subfiles_per_cache), BigInt::from(self.users))
    }
}

/// A rate/gain/sub-packetization computation for one scheme.
pub trait Scheme: Send + Sync {
    /// Registry key, e.g. `"nt"`.
    fn name(&self) -> &'static str;
    fn kind(&self) -> SchemeKind;
    fn evaluate(&self, point: &ComparePoint) -> SchemeRow;
}

struct NewScheme;

impl Scheme for NewScheme {
    fn name(&self) -> &'static str {
        "new"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::New
    }

    fn evaluate(&self, point: &ComparePoint) -> SchemeRow {
        match point.params() {
            Some(params) => SchemeRow {
                scheme: self.kind(),
                applicable: true,
                reason: None,
                rate: rate_new(point.users(), point.subfiles_per_cache(), point.caches_per_user())
                    .ok(),
                gain: Some(Gain::Exact(gain_new(params))),
                subpacketization: Some(BigUint::from(params.subfiles())),
            },
            None => SchemeRow {
                scheme: self.kind(),
                applicable: true,
                reason: Some("full coverage: nothing to broadcast".into()),
                rate: Some(BigRational::from_integer(BigInt::from(0))),
                gain: None,
                subpacketization: None,
            },
        }
    }
}

struct NtScheme;

impl Scheme for NtScheme {
    fn name(&self) -> &'static str {
        "nt"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Nt
    }

    fn evaluate(&self, point: &ComparePoint) -> SchemeRow {
        let (users, cached, window) =
            (point.users(), point.subfiles_per_cache(), point.caches_per_user());
        if cached * window > users {
            return SchemeRow::not_applicable(self.kind(), "window overshoots full coverage");
        }
        SchemeRow {
            scheme: self.kind(),
            applicable: true,
            reason: None,
            rate: rate_nt(users, cached, window).ok(),
            gain: Some(Gain::Exact(gain_nt(cached))),
            subpacketization: subpacketization_nt(users, cached, window),
        }
    }
}

struct RkScheme;

impl Scheme for RkScheme {
    fn name(&self) -> &'static str {
        "rk"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Rk
    }

    fn evaluate(&self, point: &ComparePoint) -> SchemeRow {
        let (users, cached, window) =
            (point.users(), point.subfiles_per_cache(), point.caches_per_user());
        let rate = match rate_rk(users, cached, window) {
            Ok(rate) => rate,
            Err(CompareError::NotApplicable { reason, .. }) => {
                return SchemeRow::not_applicable(self.kind(), reason)
            }
            Err(CompareError::Param(err)) => {
                return SchemeRow::not_applicable(self.kind(), err.to_string())
            }
        };
        SchemeRow {
            scheme: self.kind(),
            applicable: true,
            reason: None,
            rate: Some(rate),
            gain: point.params().map(|p| Gain::Exact(gain_rk(p))),
            subpacketization: subpacketization_rk(users, cached, window),
        }
    }
}

struct SpeScheme;

impl Scheme for SpeScheme {
    fn name(&self) -> &'static str {
        "spe"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Spe
    }

    fn evaluate(&self, point: &ComparePoint) -> SchemeRow {
        if point.subfiles_per_cache() != 2 {
            return SchemeRow::not_applicable(
                self.kind(),
                "defined only for two sub-files per cache",
            );
        }
        match subpacketization_spe(point.users(), point.caches_per_user()) {
            Ok(subpacketization) => SchemeRow {
                scheme: self.kind(),
                applicable: true,
                reason: Some("rate depends on an external construction".into()),
                rate: None,
                gain: Some(Gain::Range {
                    min: BigRational::from_integer(BigInt::from(3)),
                    max: BigRational::from_integer(BigInt::from(4)),
                }),
                subpacketization: Some(subpacketization),
            },
            Err(CompareError::NotApplicable { reason, .. }) => {
                SchemeRow::not_applicable(self.kind(), reason)
            }
            Err(CompareError::Param(err)) => {
                SchemeRow::not_applicable(self.kind(), err.to_string())
            }
        }
    }
}

struct NkScheme;

impl Scheme for NkScheme {
    fn name(&self) -> &'static str {
        "nk"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Nk
    }

    fn evaluate(&self, point: &ComparePoint) -> SchemeRow {
        let (users, cached, window) =
            (point.users(), point.subfiles_per_cache(), point.caches_per_user());
        match rate_nk(users, cached, window) {
            Ok(rate) => SchemeRow {
                scheme: self.kind(),
                applicable: true,
                reason: None,
                rate: Some(rate),
                gain: None,
                subpacketization: subpacketization_rk(users, cached, window),
            },
            Err(CompareError::NotApplicable { reason, .. }) => {
                SchemeRow::not_applicable(self.kind(), reason)
            }
            Err(CompareError::Param(err)) => {
                SchemeRow::not_applicable(self.kind(), err.to_string())
            }
        }
    }
}

struct LowerBoundScheme;

impl Scheme for LowerBoundScheme {
    fn name(&self) -> &'static str {
        "lower-bound"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::LowerBound
    }

    fn evaluate(&self, point: &ComparePoint) -> SchemeRow {
        if point.is_trivial() {
            // Full coverage admits a zero-rate scheme, so the bound is zero.
            if 2 * point.caches_per_user() < point.users() {
                return SchemeRow::not_applicable(
                    self.kind(),
                    "stated only for windows covering at least half the ring",
                );
            }
            return SchemeRow {
                scheme: self.kind(),
                applicable: true,
                reason: None,
                rate: Some(BigRational::from_integer(BigInt::from(0))),
                gain: None,
                subpacketization: None,
            };
        }
        match rate_lower_bound(point.users(), point.caches_per_user(), &point.gamma()) {
            Ok(rate) => SchemeRow {
                scheme: self.kind(),
                applicable: true,
                reason: None,
                rate: Some(rate),
                gain: None,
                subpacketization: None,
            },
            Err(CompareError::NotApplicable { reason, .. }) => {
                SchemeRow::not_applicable(self.kind(), reason)
            }
            Err(CompareError::Param(err)) => {
                SchemeRow::not_applicable(self.kind(), err.to_string())
            }
        }
    }
}

/// The comparison strategies, registered by name.
pub struct SchemeRegistry {
    schemes: Vec<Box<dyn Scheme>>,
}

impl SchemeRegistry {
    /// All built-in schemes, in table order.
    pub fn standard() -> Self {
        SchemeRegistry {
            schemes: vec![
                Box::new(NewScheme),
                Box::new(NtScheme),
                Box::new(RkScheme),
                Box::new(SpeScheme),
                Box::new(NkScheme),
                Box::new(LowerBoundScheme),
            ],
        }
    }

    pub fn register(&mut self, scheme: Box<dyn Scheme>) {
        self.schemes.push(scheme);
    }

    /// Case-insensitive lookup by registry name or table label.
    pub fn get(&self, name: &str) -> Option<&dyn Scheme> {
        let wanted = name.to_ascii_lowercase();
        self.schemes
            .iter()
            .find(|s| s.name() == wanted || s.kind().as_str().to_ascii_lowercase() == wanted)
            .map(|s| s.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Scheme> {
        self.schemes.iter().map(|s| s.as_ref())
    }

    pub fn evaluate_all(&self, point: &ComparePoint) -> Vec<SchemeRow> {
        self.iter().map(|s| s.evaluate(point)).collect()
    }
}

/// Evaluates every registered scheme at one configuration.
pub fn compare(
    users: usize,
    subfiles_per_cache: usize,
    caches_per_user: usize,
) -> Result<Vec<SchemeRow>, ParamError> {
    let point = ComparePoint::classify(users, subfiles_per_cache, caches_per_user)?;
    Ok(SchemeRegistry::standard().evaluate_all(&point))
}

/// One swept configuration with its per-scheme rows.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub subfiles_per_cache: usize,
    pub caches_per_user: usize,
    pub gamma: BigRational,
    pub rows: Vec<SchemeRow>,
}

impl SweepPoint {
    pub fn row(&self, kind: SchemeKind) -> &SchemeRow {
        self.rows.iter().find(|r| r.scheme == kind).expect("registry covers every kind")
    }
}

/// Every admissible and every zero-rate-endpoint configuration for one user
/// count, with all registered schemes evaluated.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub users: usize,
    pub points: Vec<SweepPoint>,
}

/// Walks `k` over the divisors of `users` and the window up to the
/// full-coverage endpoint, keeping constructible points and the single
/// zero-rate endpoint per divisor.
pub fn sweep(users: usize) -> SweepTable {
    assert!(users >= 2, "a sweep needs at least two users");
    let registry = SchemeRegistry::standard();
    let mut points = Vec::new();
    for cached in (1..=users).filter(|k| users.is_multiple_of(*k)) {
        for window in 1..=users / cached {
            let Ok(point) = ComparePoint::classify(users, cached, window) else { continue };
            points.push(SweepPoint {
                subfiles_per_cache: cached,
                caches_per_user: window,
                gamma: point.gamma(),
                rows: registry.evaluate_all(&point),
            });
        }
    }
    SweepTable { users, points }
}

/// Renders a float with six significant digits for CSV output.
fn six_significant(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

fn rational_csv(value: &BigRational) -> String {
    six_significant(value.to_f64().unwrap_or(f64::NAN))
}

impl SweepTable {
    pub const CSV_HEADER: &'static str =
        "K,k,L,gamma,scheme,rate,gain,subpacketization,applicable,reason";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for point in &self.points {
            for row in &point.rows {
                let rate = row.rate.as_ref().map(rational_csv).unwrap_or_default();
                let gain = match &row.gain {
                    Some(Gain::Exact(g)) => rational_csv(g),
                    Some(Gain::Range { min, max }) => {
                        format!("{}..{}", rational_csv(min), rational_csv(max))
                    }
                    None => String::new(),
                };
                let subpacketization =
                    row.subpacketization.as_ref().map(BigUint::to_string).unwrap_or_default();
                let reason = row.reason.clone().unwrap_or_default();
                debug_assert!(!reason.contains(','), "reasons must stay comma-free for CSV");
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    self.users,
                    point.subfiles_per_cache,
                    point.caches_per_user,
                    rational_csv(&point.gamma),
                    row.scheme,
                    rate,
                    gain,
                    subpacketization,
                    row.applicable,
                    reason,
                ));
            }
        }
        out
    }
}

fn rational_entry<M: SerializeMap>(
    map: &mut M,
    key: &'static str,
    value: &BigRational,
) -> Result<(), M::Error> {
    #[derive(Serialize)]
    struct Repr {
        exact: String,
        float: f64,
    }
    map.serialize_entry(
        key,
        &Repr { exact: value.to_string(), float: value.to_f64().unwrap_or(f64::NAN) },
    )
}

impl Serialize for SchemeRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("scheme", self.scheme.as_str())?;
        map.serialize_entry("applicable", &self.applicable)?;
        if let Some(reason) = &self.reason {
            map.serialize_entry("reason", reason)?;
        }
        if let Some(rate) = &self.rate {
            rational_entry(&mut map, "rate", rate)?;
        }
        match &self.gain {
            Some(Gain::Exact(gain)) => rational_entry(&mut map, "gain", gain)?,
            Some(Gain::Range { min, max }) => {
                map.serialize_entry(
                    "gain_range",
                    &[min.to_string(), max.to_string()],
                )?;
            }
            None => {}
        }
        if let Some(subpacketization) = &self.subpacketization {
            map.serialize_entry("subpacketization", &subpacketization.to_string())?;
        }
        map.end()
    }
}

impl Serialize for SweepPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("k", &self.subfiles_per_cache)?;
        map.serialize_entry("L", &self.caches_per_user)?;
        rational_entry(&mut map, "gamma", &self.gamma)?;
        map.serialize_entry("schemes", &self.rows)?;
        map.end()
    }
}

impl Serialize for SweepTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("K", &self.users)?;
        {
            struct Points<'a>(&'a [SweepPoint]);
            impl Serialize for Points<'_> {
                fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                    let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                    for point in self.0 {
                        seq.serialize_element(point)?;
                    }
                    seq.end()
                }
            }
            map.serialize_entry("points", &Points(&self.points))?;
        }
        map.end()
    }
}
