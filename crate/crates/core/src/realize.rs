//! Realizability verdicts.
//!
//! A type is realizable over a coefficient ring exactly when, for every prime
//! that is not a unit in the ring, the type splits into catalog entries that
//! all occur at that prime. The set of primes admitting such a split is a
//! union of congruence classes ([`prime_set_of_type`]), so every verdict
//! reduces to residue-set algebra. Verdicts assume the ring is Noetherian of
//! finite Krull dimension; that cannot be checked from its primes alone.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{Catalog, DegreeMultiset};
use crate::decompose::{decompose, decompose_at_prime, Decomposition};
use crate::error::Result;
use crate::primes::{ensure_prime, gcd};
use crate::residue::{class_contains_prime, primes_in_class, ResidueSet};

/// Search bound for concrete failing primes and witness primes.
pub const PRIME_SEARCH_LIMIT: u64 = 1_000_000;

/// The set of primes that are not units in the coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSpec {
    /// No prime is invertible, e.g. the integers.
    All,
    Finite(Vec<u64>),
    /// Every prime except the listed ones, e.g. `Z[1/2]`.
    CoFinite(Vec<u64>),
    Listable(ResidueSet),
}

fn checked_primes(mut primes: Vec<u64>) -> Result<Vec<u64>> {
    for &p in &primes {
        ensure_prime(p)?;
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

impl PrimeSpec {
    pub fn finite(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        Ok(PrimeSpec::Finite(checked_primes(primes.into_iter().collect())?))
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Result<Self> {
        Ok(PrimeSpec::CoFinite(checked_primes(excluded.into_iter().collect())?))
    }

    pub fn listable(set: ResidueSet) -> Self {
        PrimeSpec::Listable(set.normalize())
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSpec::All => true,
            PrimeSpec::Finite(ps) => ps.binary_search(&p).is_ok(),
            PrimeSpec::CoFinite(ex) => ex.binary_search(&p).is_err(),
            PrimeSpec::Listable(s) => s.contains(p as i64),
        }
    }

    /// Re-validates lists built directly through the enum variants.
    fn validated(&self) -> Result<Self> {
        Ok(match self {
            PrimeSpec::Finite(ps) => PrimeSpec::Finite(checked_primes(ps.clone())?),
            PrimeSpec::CoFinite(ps) => PrimeSpec::CoFinite(checked_primes(ps.clone())?),
            PrimeSpec::Listable(s) => PrimeSpec::Listable(s.normalize()),
            PrimeSpec::All => PrimeSpec::All,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RealizabilityReport {
    #[serde(rename = "degrees")]
    pub target: DegreeMultiset,
    pub verdict: bool,
    pub prime_set: ResidueSet,
    /// Witness decompositions keyed by prime: every listed prime for a finite
    /// spec, otherwise the smallest spec prime in each class of the prime set.
    pub witnesses: BTreeMap<u64, Decomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_prime: Option<u64>,
    /// For listable specs whose offending classes hold no prime below
    /// [`PRIME_SEARCH_LIMIT`]: one such class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_class: Option<ResidueSet>,
}

impl RealizabilityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Primes at which `target` splits into entries occurring there: the union
/// over all decompositions of the intersection of their parts' prime sets.
pub fn prime_set_of_type(cat: &Catalog, target: &DegreeMultiset) -> Result<ResidueSet> {
    decompose(cat, target).iter().try_fold(ResidueSet::empty(), |acc, d| acc.union(&d.primes()?))
}

/// The canonical first decomposition occurring at `p`, if any.
pub fn realizable_at_prime(cat: &Catalog, target: &DegreeMultiset, p: u64) -> Result<Option<Decomposition>> {
    Ok(decompose_at_prime(cat, target, p)?.into_iter().next())
}

/// The pair `(N, [a_1, ..., a_m])`: a non-unit prime set is allowed iff
/// every prime in it is congruent to some `a_i` mod `N`.
pub fn corollary_output(cat: &Catalog, target: &DegreeMultiset) -> Result<(u64, Vec<u64>)> {
    let set = prime_set_of_type(cat, target)?;
    Ok((set.modulus(), set.residues().to_vec()))
}

/// Smallest prime outside `set` that `allowed` admits, searched up to
/// [`PRIME_SEARCH_LIMIT`].
fn smallest_missing_prime(set: &ResidueSet, allowed: impl Fn(u64) -> bool) -> Option<u64> {
    let n = set.modulus();
    (0..n)
        .filter(|&a| !set.contains(a as i64) && class_contains_prime(a, n))
        .filter_map(|a| primes_in_class(a, n, PRIME_SEARCH_LIMIT).find(|&p| allowed(p)))
        .min()
}

pub fn realizable_over(cat: &Catalog, target: &DegreeMultiset, spec: &PrimeSpec) -> Result<RealizabilityReport> {
    let spec = spec.validated()?;
    let decompositions = decompose(cat, target);
    let prime_set = decompositions.iter().try_fold(ResidueSet::empty(), |acc, d| acc.union(&d.primes()?))?;

    let mut failing_prime = None;
    let mut failing_class = None;
    let verdict = match &spec {
        PrimeSpec::All => {
            let ok = prime_set.covers_all_primes();
            if !ok {
                failing_prime = smallest_missing_prime(&prime_set, |_| true);
            }
            ok
        }
        PrimeSpec::Finite(ps) => {
            failing_prime = ps.iter().copied().find(|&p| !prime_set.contains(p as i64));
            failing_prime.is_none()
        }
        PrimeSpec::CoFinite(excluded) => {
            let n = prime_set.modulus();
            // A missing class fails unless its only prime is excluded.
            let ok = (0..n)
                .filter(|&a| !prime_set.contains(a as i64) && class_contains_prime(a, n))
                .all(|a| gcd(a, n) != 1 && primes_in_class(a, n, n).all(|q| excluded.binary_search(&q).is_ok()));
            if !ok {
                failing_prime = smallest_missing_prime(&prime_set, |p| excluded.binary_search(&p).is_err());
            }
            ok
        }
        PrimeSpec::Listable(allowed) => {
            let uncovered = allowed.uncovered_prime_classes(&prime_set)?;
            if let Some(&(a, n)) = uncovered.first() {
                failing_prime =
                    uncovered.iter().filter_map(|&(a, n)| primes_in_class(a, n, PRIME_SEARCH_LIMIT).next()).min();
                if failing_prime.is_none() {
                    failing_class = Some(ResidueSet::new(n, [a as i64])?);
                }
            }
            uncovered.is_empty()
        }
    };

    let witness_primes: Vec<u64> = match &spec {
        PrimeSpec::Finite(ps) => ps.clone(),
        _ => {
            let n = prime_set.modulus();
            prime_set
                .residues()
                .iter()
                .filter_map(|&a| primes_in_class(a, n, PRIME_SEARCH_LIMIT).find(|&p| spec.contains(p)))
                .collect()
        }
    };
    let mut witnesses = BTreeMap::new();
    for p in witness_primes {
        if let Some(d) = decompositions.iter().find(|d| d.parts().iter().all(|part| part.primes().contains(p as i64))) {
            witnesses.insert(p, d.clone());
        }
    }

    Ok(RealizabilityReport { target: target.clone(), verdict, prime_set, witnesses, failing_prime, failing_class })
}
