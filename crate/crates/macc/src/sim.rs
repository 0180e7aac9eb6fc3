//! End-to-end simulation of the cache network: split files into sub-files,
//! fill the caches cyclically, broadcast one XOR symbol per delivery slot,
//! and decode every user's demand byte-exactly from its reachable cache
//! content plus the broadcast.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::params::{ParamError, SchemeParams};
use crate::pda::{Pda, PdaEntry};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("library is empty")]
    EmptyLibrary,
    #[error("file {file} has {found} sub-files, expected {expected}")]
    UnevenSubfiles { file: usize, found: usize, expected: usize },
    #[error("sub-file ({file},{index}) has {found} bytes, expected {expected}")]
    UnevenPayload { file: usize, index: usize, found: usize, expected: usize },
    #[error("library splits files into {library} sub-files but the network needs {expected}")]
    SubfileCountMismatch { library: usize, expected: usize },
    #[error("demand vector has {found} entries, expected {expected}")]
    DemandLength { found: usize, expected: usize },
    #[error("demand {demand} for user {user} is outside the library of {files} files")]
    DemandOutOfRange { user: usize, demand: usize, files: usize },
    #[error("array fails validation with {defining} defining violations")]
    InvalidPda { defining: usize },
    #[error("array has {cols} columns but the demand vector addresses {users} users")]
    ColumnMismatch { cols: usize, users: usize },
    #[error("slot {symbol} is missing from the received transmissions")]
    MissingTransmission { symbol: usize },
    #[error("slot {symbol} does not serve user {user}")]
    TransmissionMismatch { symbol: usize, user: usize },
    #[error("user {user} cannot reach sub-file {subfile} needed to peel slot {symbol}")]
    MissingOperand { symbol: usize, user: usize, subfile: usize },
    #[error("user {user} cannot reach its cached sub-file {subfile}")]
    NotAccessible { user: usize, subfile: usize },
}

/// Minimal deterministic generator (splitmix64) for reproducible libraries
/// and demand vectors.
pub struct DetRng(u64);

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// The server's files, each split into equally sized sub-file payloads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Library {
    subfile_size: usize,
    payloads: Vec<Vec<Vec<u8>>>,
}

impl Library {
    pub fn new(payloads: Vec<Vec<Vec<u8>>>) -> Result<Self, SimError> {
        if payloads.is_empty() || payloads[0].is_empty() {
            return Err(SimError::EmptyLibrary);
        }
        let subfiles = payloads[0].len();
        let subfile_size = payloads[0][0].len();
        for (file, parts) in payloads.iter().enumerate() {
            if parts.len() != subfiles {
                return Err(SimError::UnevenSubfiles { file, found: parts.len(), expected: subfiles });
            }
            for (index, part) in parts.iter().enumerate() {
                if part.len() != subfile_size {
                    return Err(SimError::UnevenPayload {
                        file,
                        index,
                        found: part.len(),
                        expected: subfile_size,
                    });
                }
            }
        }
        Ok(Library { subfile_size, payloads })
    }

    pub fn random(files: usize, subfiles: usize, subfile_size: usize, rng: &mut DetRng) -> Self {
        let payloads = (0..files)
            .map(|_| {
                (0..subfiles)
                    .map(|_| (0..subfile_size).map(|_| rng.next_u64() as u8).collect())
                    .collect()
            })
            .collect();
        Library { subfile_size, payloads }
    }

    pub fn files(&self) -> usize {
        self.payloads.len()
    }

    pub fn subfiles(&self) -> usize {
        self.payloads[0].len()
    }

    pub fn subfile_size(&self) -> usize {
        self.subfile_size
    }

    pub fn subfile(&self, file: usize, index: usize) -> &[u8] {
        &self.payloads[file][index]
    }

    pub fn file(&self, file: usize) -> &[Vec<u8>] {
        &self.payloads[file]
    }
}

/// Index of the file each user demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandVector(Vec<usize>);

impl DemandVector {
    pub fn new(demands: Vec<usize>, users: usize, files: usize) -> Result<Self, SimError> {
        if demands.len() != users {
            return Err(SimError::DemandLength { found: demands.len(), expected: users });
        }
        for (user, &demand) in demands.iter().enumerate() {
            if demand >= files {
                return Err(SimError::DemandOutOfRange { user, demand, files });
            }
        }
        Ok(DemandVector(demands))
    }

    pub fn random(users: usize, files: usize, rng: &mut DetRng) -> Self {
        DemandVector((0..users).map(|_| rng.below(files)).collect())
    }

    pub fn get(&self, user: usize) -> usize {
        self.0[user]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// The filled caches: cache `c` stores sub-files `(k*c + j) mod K` of every
/// file, `j` below `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheNetwork {
    users: usize,
    subfiles_per_cache: usize,
    caches_per_user: usize,
    contents: Vec<Vec<usize>>,
}

impl CacheNetwork {
    fn fill(users: usize, subfiles_per_cache: usize, caches_per_user: usize) -> Self {
        let contents = (0..users)
            .map(|cache| {
                (0..subfiles_per_cache).map(|j| (subfiles_per_cache * cache + j) % users).collect()
            })
            .collect();
        CacheNetwork { users, subfiles_per_cache, caches_per_user, contents }
    }

    pub fn users(&self) -> usize {
        self.users
    }

    /// Sub-file indices cache `cache` stores, in placement order.
    pub fn contents(&self, cache: usize) -> &[usize] {
        &self.contents[cache]
    }

    /// Sub-file indices user `user` reaches through its window of caches, in
    /// cyclic enumeration order. Covers everything once the window spans the
    /// whole ring.
    pub fn accessible(&self, user: usize) -> Vec<usize> {
        let k = self.subfiles_per_cache;
        let span = (k * self.caches_per_user).min(self.users);
        (0..span).map(|i| (k * user + i) % self.users).collect()
    }
}

/// Fills every cache for the given configuration. The library is consulted
/// only for its shape: it must split files into exactly one sub-file per
/// cache slot on the ring.
pub fn place(params: &SchemeParams, library: &Library) -> Result<CacheNetwork, SimError> {
    if library.subfiles() != params.users() {
        return Err(SimError::SubfileCountMismatch {
            library: library.subfiles(),
            expected: params.users(),
        });
    }
    Ok(CacheNetwork::fill(params.users(), params.subfiles_per_cache(), params.caches_per_user()))
}

/// Sub-file indices user `user` reaches under `params`, without building the
/// network.
pub fn accessible(params: &SchemeParams, user: usize) -> Vec<usize> {
    CacheNetwork::fill(params.users(), params.subfiles_per_cache(), params.caches_per_user())
        .accessible(user)
}

/// One broadcast symbol: the XOR of the demanded sub-files of every user the
/// slot serves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission {
    pub symbol: usize,
    pub payload: Vec<u8>,
    /// `(user, subfile)` pairs XORed into the payload, in row-major grid order.
    pub operands: Vec<(usize, usize)>,
}

fn xor_into(acc: &mut [u8], src: &[u8]) {
    debug_assert_eq!(acc.len(), src.len());
    for (a, b) in acc.iter_mut().zip(src) {
        *a ^= b;
    }
}

/// Runs the delivery schedule: for each symbol `s` in increasing order, sends
/// the XOR of `W_{d_j, i}` over all cells `(i, j)` holding `s`. An all-star
/// array needs no transmissions and yields an empty schedule; anything else
/// must validate as a proper array.
pub fn deliver(
    pda: &Pda,
    library: &Library,
    demands: &DemandVector,
) -> Result<Vec<Transmission>, SimError> {
    if pda.cols() != demands.len() {
        return Err(SimError::ColumnMismatch { cols: pda.cols(), users: demands.len() });
    }
    if library.subfiles() != pda.rows() {
        return Err(SimError::SubfileCountMismatch {
            library: library.subfiles(),
            expected: pda.rows(),
        });
    }
    if pda.iter_entries().all(|(_, _, e)| e.is_star()) {
        return Ok(Vec::new());
    }
    let report = pda.validate();
    if !report.is_pda {
        return Err(SimError::InvalidPda { defining: report.defining_violations().count() });
    }

    let mut operands: Vec<Vec<(usize, usize)>> = vec![Vec::new(); report.symbol_count];
    for (i, j, entry) in pda.iter_entries() {
        if let Some(s) = entry.symbol() {
            operands[s].push((j, i));
        }
    }
    Ok(operands
        .into_iter()
        .enumerate()
        .map(|(symbol, operands)| {
            let mut payload = vec![0u8; library.subfile_size()];
            for &(user, subfile) in &operands {
                xor_into(&mut payload, library.subfile(demands.get(user), subfile));
            }
            Transmission { symbol, payload, operands }
        })
        .collect())
}

/// Reconstructs every sub-file of user `user`'s demanded file. Cached rows
/// are read straight from the reachable cache content; each remaining row is
/// peeled from its broadcast slot by XORing back the other operands, all of
/// which the defining conditions place in this user's caches. Only sub-file
/// indices in `net.accessible(user)` are ever read from the library.
pub fn decode(
    user: usize,
    transmissions: &[Transmission],
    pda: &Pda,
    net: &CacheNetwork,
    library: &Library,
    demands: &DemandVector,
) -> Result<Vec<Vec<u8>>, SimError> {
    let reachable: BTreeSet<usize> = net.accessible(user).into_iter().collect();
    let read = |file: usize, subfile: usize| -> Option<&[u8]> {
        reachable.contains(&subfile).then(|| library.subfile(file, subfile))
    };

    let demanded = demands.get(user);
    let mut out = Vec::with_capacity(pda.rows());
    for i in 0..pda.rows() {
        match pda.get(i, user) {
            PdaEntry::Star => {
                let payload =
                    read(demanded, i).ok_or(SimError::NotAccessible { user, subfile: i })?;
                out.push(payload.to_vec());
            }
            PdaEntry::Symbol(symbol) => {
                let tx = transmissions
                    .get(symbol)
                    .filter(|tx| tx.symbol == symbol)
                    .ok_or(SimError::MissingTransmission { symbol })?;
                if !tx.operands.contains(&(user, i)) {
                    return Err(SimError::TransmissionMismatch { symbol, user });
                }
                let mut payload = tx.payload.clone();
                for &(other_user, subfile) in &tx.operands {
                    if (other_user, subfile) == (user, i) {
                        continue;
                    }
                    let cached = read(demands.get(other_user), subfile)
                        .ok_or(SimError::MissingOperand { symbol, user, subfile })?;
                    xor_into(&mut payload, cached);
                }
                out.push(payload);
            }
        }
    }
    Ok(out)
}

/// Outcome of one full placement / delivery / decode run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimReport {
    /// Broadcast volume in file units: slots sent over sub-files per file.
    pub rate: Ratio<u64>,
    /// Users served per slot, histogrammed over the schedule.
    pub gain_histogram: BTreeMap<usize, usize>,
    pub decode_ok: Vec<bool>,
    pub bytes_sent: u64,
    pub transmissions: usize,
}

impl SimReport {
    pub fn all_decoded(&self) -> bool {
        self.decode_ok.iter().all(|&ok| ok)
    }
}

impl Serialize for SimReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry(
            "rate",
            &RationalRepr { exact: self.rate.to_string(), float: self.rate.to_f64().unwrap_or(f64::NAN) },
        )?;
        map.serialize_entry("gain_histogram", &self.gain_histogram)?;
        map.serialize_entry("decode_ok", &self.decode_ok)?;
        map.serialize_entry("bytes_sent", &self.bytes_sent)?;
        map.serialize_entry("transmissions", &self.transmissions)?;
        map.end()
    }
}

#[derive(Serialize)]
struct RationalRepr {
    exact: String,
    float: f64,
}

/// Builds the delivery array for the configuration (an all-star array in the
/// trivial full-coverage regime), draws a seeded random library and demand
/// vector, and runs placement, delivery, and decoding for every user,
/// checking each decoded file byte-for-byte against the library.
pub fn simulate(
    users: usize,
    subfiles_per_cache: usize,
    caches_per_user: usize,
    files: usize,
    subfile_size: usize,
    seed: u64,
) -> Result<SimReport, SimError> {
    simulate_impl(users, subfiles_per_cache, caches_per_user, files, subfile_size, seed, None)
}

/// As [`simulate`], with a caller-supplied demand vector.
pub fn simulate_with_demands(
    users: usize,
    subfiles_per_cache: usize,
    caches_per_user: usize,
    files: usize,
    subfile_size: usize,
    seed: u64,
    demands: Vec<usize>,
) -> Result<SimReport, SimError> {
    simulate_impl(
        users,
        subfiles_per_cache,
        caches_per_user,
        files,
        subfile_size,
        seed,
        Some(demands),
    )
}

fn simulate_impl(
    users: usize,
    subfiles_per_cache: usize,
    caches_per_user: usize,
    files: usize,
    subfile_size: usize,
    seed: u64,
    demands: Option<Vec<usize>>,
) -> Result<SimReport, SimError> {
    let (pda, net) = match SchemeParams::new(users, subfiles_per_cache, caches_per_user, files) {
        Ok(params) => {
            let pda = crate::construct::construct_from(&params);
            let net = CacheNetwork::fill(users, subfiles_per_cache, caches_per_user);
            (pda, net)
        }
        // Full coverage: every user reaches everything, nothing to broadcast.
        Err(ParamError::TrivialRegime { .. }) => (
            Pda::all_stars(users, users),
            CacheNetwork::fill(users, subfiles_per_cache, caches_per_user),
        ),
        Err(err) => return Err(err.into()),
    };

    let mut rng = DetRng::new(seed);
    let library = Library::random(files, users, subfile_size, &mut rng);
    let demands = match demands {
        Some(d) => DemandVector::new(d, users, files)?,
        None => DemandVector::random(users, files, &mut rng),
    };

    let transmissions = deliver(&pda, &library, &demands)?;
    let mut gain_histogram = BTreeMap::new();
    for tx in &transmissions {
        *gain_histogram.entry(tx.operands.len()).or_insert(0) += 1;
    }

    let decode_ok = (0..users)
        .map(|user| {
            decode(user, &transmissions, &pda, &net, &library, &demands)
                .map(|subfiles| subfiles == library.file(demands.get(user)))
                .unwrap_or(false)
        })
        .collect();

    Ok(SimReport {
        rate: Ratio::new(transmissions.len() as u64, users as u64),
        gain_histogram,
        decode_ok,
        bytes_sent: (transmissions.len() * subfile_size) as u64,
        transmissions: transmissions.len(),
    })
}
