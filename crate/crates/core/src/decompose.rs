//! Enumeration of the ways a degree multiset splits into catalog entries.
//!
//! The search always covers the smallest remaining degree next. Parts are
//! therefore chosen in non-decreasing order of their smallest degree, and
//! among parts with the same smallest degree the instance key may not
//! decrease. Every decomposition has exactly one such ordering, so the
//! search yields each one once without a dedup pass.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::catalog::{Catalog, DegreeMultiset, EntryInstance};
use crate::error::Result;
use crate::primes::ensure_prime;
use crate::residue::ResidueSet;

/// A multiset of entries whose degrees union to a target, parts sorted by key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    parts: Vec<EntryInstance>,
}

impl Decomposition {
    pub fn new(mut parts: Vec<EntryInstance>) -> Self {
        parts.sort();
        Self { parts }
    }

    pub fn parts(&self) -> &[EntryInstance] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.parts.iter().map(EntryInstance::name).collect()
    }

    pub fn degrees(&self) -> DegreeMultiset {
        self.parts.iter().fold(DegreeMultiset::empty(), |acc, p| acc.union(p.degrees()))
    }

    /// Primes at which every part occurs.
    pub fn primes(&self) -> Result<ResidueSet> {
        self.parts.iter().try_fold(ResidueSet::all(), |acc, p| acc.intersect(p.primes()))
    }

    pub fn occurs_at(&self, p: u64) -> Result<bool> {
        ensure_prime(p)?;
        Ok(self.parts.iter().all(|part| part.primes().contains(p as i64)))
    }
}

/// Fewer parts first, then lexicographic on part keys.
impl Ord for Decomposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.len().cmp(&other.parts.len()).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Decomposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("(point)");
        }
        f.write_str(&self.names().join(" + "))
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.names().serialize(s)
    }
}

/// All decompositions of `target` in canonical order. The empty target has
/// exactly one decomposition, the empty one.
pub fn decompose(cat: &Catalog, target: &DegreeMultiset) -> Vec<Decomposition> {
    decompose_from(cat.candidates(target), target)
}

/// Decompositions all of whose parts occur at the prime `p`.
pub fn decompose_at_prime(cat: &Catalog, target: &DegreeMultiset, p: u64) -> Result<Vec<Decomposition>> {
    ensure_prime(p)?;
    let candidates = cat.candidates(target).into_iter().filter(|c| c.primes().contains(p as i64)).collect();
    Ok(decompose_from(candidates, target))
}

/// Runs the search over a pre-filtered, key-sorted candidate list.
pub(crate) fn decompose_from(candidates: Vec<EntryInstance>, target: &DegreeMultiset) -> Vec<Decomposition> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    search(&candidates, target, None, &mut chosen, &mut out);
    let mut out: Vec<Decomposition> = out.into_iter().map(Decomposition::new).collect();
    out.sort();
    out
}

fn search(
    candidates: &[EntryInstance],
    remaining: &DegreeMultiset,
    previous: Option<usize>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<EntryInstance>>,
) {
    let Some(smallest) = remaining.min() else {
        out.push(chosen.iter().map(|&i| candidates[i].clone()).collect());
        return;
    };
    for (i, cand) in candidates.iter().enumerate() {
        if cand.degrees().min() != Some(smallest) {
            continue;
        }
        // candidates are key-sorted: index order is key order
        if let Some(prev) = previous {
            if candidates[prev].degrees().min() == Some(smallest) && i < prev {
                continue;
            }
        }
        let Some(rest) = cand.degrees().difference_from(remaining) else {
            continue;
        };
        chosen.push(i);
        search(candidates, &rest, Some(i), chosen, out);
        chosen.pop();
    }
}
