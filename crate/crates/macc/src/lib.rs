//! Placement delivery arrays for multi-access coded caching.
//!
//! A ring of `K` caches serves `K` users, each user reading `L` neighboring
//! caches that together hold `kL` consecutive sub-files of every file. This
//! crate builds the k-cyclic 2K/(K-kL+k)-regular broadcast schedule for that
//! network as a `K x K` placement delivery array, validates arbitrary arrays
//! against the defining conditions, simulates the full placement / XOR
//! delivery / per-user decoding pipeline byte-exactly, and compares the
//! resulting rate, coding gain, and sub-packetization against the NT, RK,
//! SPE, and NK schemes plus the known lower bound.

pub mod construct;
pub mod params;
pub mod pda;
pub mod schemes;
pub mod sim;

pub use construct::{construct, PdaDescriptor};
pub use params::{enumerate_valid, ParamError, SchemeParams};
pub use pda::{validate_oracle, Pda, PdaEntry, ValidationReport, Violation};
pub use sim::{simulate, SimReport};
