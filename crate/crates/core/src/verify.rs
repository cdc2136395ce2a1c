//! Desk-scale consistency suites.
//!
//! Each suite enumerates small degree multisets, asks the engine for a
//! verdict and compares it with membership in a monoid built here by brute
//! force from a hard-coded list of generators. Nothing is read from disk.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::catalog::{Catalog, DegreeMultiset};
use crate::error::Result;
use crate::realize::{realizable_at_prime, realizable_over, PrimeSpec};

/// Failures kept verbatim in a report; the count is always exact.
const FAILURE_SAMPLE: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self { name: name.to_string(), checked: 0, passed: 0, failed: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < FAILURE_SAMPLE {
                self.failures.push(what());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_degree: u32,
    pub max_count: usize,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteReport::ok)
    }
}

/// Every multiset of even degrees in `2..=max_degree` with at most
/// `max_count` elements, the empty one included, in lexicographic order.
pub fn small_types(max_degree: u32, max_count: usize) -> Vec<DegreeMultiset> {
    fn go(next: u32, max_degree: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<DegreeMultiset>) {
        out.push(DegreeMultiset::new(cur.iter().copied()).expect("even degrees"));
        if left == 0 {
            return;
        }
        for d in (next..=max_degree).step_by(2) {
            cur.push(d);
            go(d, max_degree, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(2, max_degree, max_count, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn progression(start: u32, step: u32, count: u32) -> Vec<u32> {
    (0..count).map(|k| start + k * step).collect()
}

/// `{2}`, `SU(n)` and `Sp(n)` types with every degree at most `max_degree`.
pub fn integral_generators(max_degree: u32) -> Vec<Vec<u32>> {
    let mut gens = vec![vec![2]];
    gens.extend((2..).map(|n| progression(4, 2, n - 1)).take_while(|g| g.iter().all(|&d| d <= max_degree)));
    gens.extend((1..).map(|n| progression(4, 4, n)).take_while(|g| g.iter().all(|&d| d <= max_degree)));
    gens
}

/// The integral generators plus `Spin(2n)` types for `n >= 3`, `{4, 12}` and
/// `{12, 16}`.
pub fn mod_three_generators(max_degree: u32) -> Vec<Vec<u32>> {
    let mut gens = integral_generators(max_degree);
    for n in 3.. {
        let mut g = progression(4, 4, n - 1);
        g.push(2 * n);
        if g.iter().any(|&d| d > max_degree) {
            break;
        }
        gens.push(g);
    }
    gens.extend([vec![4, 12], vec![12, 16]].into_iter().filter(|g| g.iter().all(|&d| d <= max_degree)));
    gens
}

/// Sorted degree lists reachable as unions of generators within the bounds.
pub fn monoid_closure(generators: &[Vec<u32>], max_degree: u32, max_count: usize) -> HashSet<Vec<u32>> {
    let gens: Vec<&Vec<u32>> =
        generators.iter().filter(|g| g.iter().all(|&d| d <= max_degree) && g.len() <= max_count).collect();
    let mut seen = HashSet::from([Vec::new()]);
    let mut frontier = vec![Vec::new()];
    while let Some(cur) = frontier.pop() {
        for g in &gens {
            if cur.len() + g.len() > max_count {
                continue;
            }
            let mut next: Vec<u32> = cur.iter().chain(g.iter()).copied().collect();
            next.sort_unstable();
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// Verdict over all primes against the monoid of integral generators.
pub fn integral_suite(cat: &Catalog, max_degree: u32, max_count: usize) -> Result<SuiteReport> {
    let monoid = monoid_closure(&integral_generators(max_degree), max_degree, max_count);
    let mut report = SuiteReport::new("integral");
    for t in small_types(max_degree, max_count) {
        let verdict = realizable_over(cat, &t, &PrimeSpec::All)?.verdict;
        let expected = monoid.contains(t.degrees());
        report.record(verdict == expected, || format!("{t}: engine {verdict}, generators {expected}"));
    }
    Ok(report)
}

/// Every generator type is realizable at 3.
pub fn mod_three_generator_suite(cat: &Catalog, max_degree: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("p=3 generators");
    let gens: BTreeSet<Vec<u32>> = mod_three_generators(max_degree).into_iter().collect();
    for g in gens {
        let t = DegreeMultiset::new(g)?;
        let ok = realizable_at_prime(cat, &t, 3)?.is_some();
        report.record(ok, || format!("{t}: not realizable at 3"));
    }
    Ok(report)
}

/// Realizability at 3 agrees with the monoid of mod-three generators.
pub fn mod_three_converse_suite(cat: &Catalog, max_degree: u32, max_count: usize) -> Result<SuiteReport> {
    let monoid = monoid_closure(&mod_three_generators(max_degree), max_degree, max_count);
    let mut report = SuiteReport::new("p=3 converse");
    for t in small_types(max_degree, max_count) {
        let verdict = realizable_at_prime(cat, &t, 3)?.is_some();
        let expected = monoid.contains(t.degrees());
        report.record(verdict == expected, || format!("{t}: engine {verdict}, generators {expected}"));
    }
    Ok(report)
}

/// The three suites; the converse at 3 stops at three elements.
pub fn run_all(cat: &Catalog, max_degree: u32, max_count: usize) -> Result<VerifyReport> {
    Ok(VerifyReport {
        max_degree,
        max_count,
        suites: vec![
            integral_suite(cat, max_degree, max_count)?,
            mod_three_generator_suite(cat, max_degree)?,
            mod_three_converse_suite(cat, max_degree, max_count.min(3))?,
        ],
    })
}
