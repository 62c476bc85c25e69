//! Exact q-series arithmetic and congruence verification for the partition
//! functions a_r(n) (even parts in one color, odd parts in r colors).
//!
//! The crate provides:
//! - [`series`]: truncated power-series arithmetic over Z and Z/mZ with
//!   sparse pentagonal-factor fast paths and Frobenius powering mod primes;
//! - [`partitions`]: generating-function expansions of a_r(n) and the
//!   auxiliary series c(n) (f1 f2^2), plus brute-force enumeration oracles;
//! - [`arith`]: Legendre/Kronecker symbols and deterministic primality;
//! - [`modform`]: eta-quotient descriptors, the Gordon-Hughes-Newman-Ligozat
//!   modularity conditions, Sturm bounds and the Hecke operator T_p on
//!   q-expansions;
//! - [`newman`]: the xi(p)/omega(p) machinery around Newman's recurrence
//!   for c(n) and the induced congruence families for a_3(n) mod 5;
//! - [`verify`]: runnable checks (family scans, the section-4 modular-form
//!   arguments, the 7-dissection identity) and the full verification suite
//!   with JSON reports.

pub mod arith;
pub mod modform;
pub mod newman;
pub mod partitions;
pub mod series;
pub mod verify;

pub use series::{euler_factor, pentagonal, SeriesError, TruncatedSeries};

/// Serialize any Display value (big integers, rationals) as a string, so
/// JSON reports stay human-readable.
pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Serialize an optional Display value as a string or null.
pub(crate) fn serialize_display_opt<T: std::fmt::Display, S: serde::Serializer>(
    v: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}
