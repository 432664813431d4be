//! Exact computation and verification of refined partition statistics.
//!
//! Every statistic is available by two independent routes: truncated
//! q-series arithmetic over unbounded integers ([`series`], [`stats`]) and
//! brute-force enumeration straight from the combinatorial definitions
//! ([`enumerate`]). The [`verify`] module restates each identity linking the
//! statistics as a sweep that collects counterexamples rather than stopping
//! at the first one.

pub mod enumerate;
pub mod error;
pub mod report;
pub mod series;
pub mod stats;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use series::{Factors, ProductSpec, Sign, TruncatedSeries};
pub use table::{Params, StatId, StatTable};
pub use verify::{IdentityCase, IdentityId, SweepConfig, VerificationReport};
