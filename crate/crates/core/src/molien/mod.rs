//! Independent check of the imprimitive-family degree formulas.
//!
//! For `G(m, r, n)` the invariant ring is polynomial, so the Molien series
//! equals `∏ 1/(1 - t^{d_i})` over the classical degrees. Computing the series
//! by averaging over the group with exact cyclotomic arithmetic and comparing
//! against the claimed degrees confirms the table rows for `G(m, r, n)`,
//! `D_{2m} = G(m, m, 2)` and `C_m = G(m, 1, 1)` without trusting them.
//! Everything here uses classical degrees; the tables use twice those.

pub mod cyclotomic;
pub mod group;
pub mod series;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use cyclotomic::CyclotomicElement;
pub use group::{cycle_factors, group_elements, group_order, PhasedPermutation, DEFAULT_BUDGET};
pub use series::{classical_degrees, molien_series, verify_degrees, verify_degrees_with_budget, TruncatedSeries};

use crate::catalog::DegreeMultiset;
use crate::error::Result;

/// Table degrees (doubled) claimed for `G(m, r, n)`.
pub fn claimed_degrees(m: u32, r: u32, n: u32) -> DegreeMultiset {
    DegreeMultiset::new(classical_degrees(m, r, n).into_iter().map(|d| 2 * d)).expect("doubled degrees are even")
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub m: u32,
    pub r: u32,
    pub n: u32,
    pub claimed: DegreeMultiset,
    pub verdict: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Parameter triples of the standard sweep: every `(m, r, n)` with
/// `m <= max_m`, `r | m`, `n <= max_n`; plus `(m, 1, 2)`, `(m, m, 2)` and
/// `(m, 1, 1)` for `m <= max_m_rank_two`. Sorted, without repeats.
pub fn sweep_parameters(max_m: u32, max_n: u32, max_m_rank_two: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for r in (1..=m).filter(|r| m % r == 0) {
            for n in 1..=max_n {
                out.push((m, r, n));
            }
        }
    }
    for m in 1..=max_m_rank_two {
        out.extend([(m, 1, 2), (m, m, 2), (m, 1, 1)]);
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn run_sweep(params: &[(u32, u32, u32)], budget: u64) -> Result<Vec<SweepRow>> {
    params
        .iter()
        .map(|&(m, r, n)| {
            let start = Instant::now();
            let verdict = verify_degrees_with_budget(m, r, n, budget)?;
            Ok(SweepRow { m, r, n, claimed: claimed_degrees(m, r, n), verdict, elapsed: start.elapsed() })
        })
        .collect()
}
