//! Decide which graded polynomial algebras with even-degree generators arise
//! as cohomology of spaces, one prime at a time, and assemble the answer over
//! any set of primes.
//!
//! The pieces:
//!
//! * [`residue`]: sets of integers given as unions of residue classes.
//! * [`catalog`]: the table of groups, their degree multisets and the primes
//!   at which each one occurs.
//! * [`decompose`]: every way to split a degree multiset into table entries.
//! * [`realize`]: prime sets, per-prime witnesses and verdicts.
//! * [`molien`]: an exact Molien-series check of the imprimitive family rows.
//! * [`verify`]: self-contained consistency suites.

pub mod catalog;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod molien;
pub mod primes;
pub mod realize;
pub mod residue;
pub mod verify;

pub use catalog::{Catalog, DegreeMultiset, EntryInstance};
pub use decompose::{decompose, decompose_at_prime, Decomposition};
pub use error::{Error, Result};
pub use realize::{
    corollary_output, prime_set_of_type, realizable_at_prime, realizable_over, PrimeSpec, RealizabilityReport,
};
pub use residue::ResidueSet;
