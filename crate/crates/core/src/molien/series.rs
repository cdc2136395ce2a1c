use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicElement;
use super::group::group_elements;
use crate::error::{Error, Result};

/// Power series in `t` known through `t^{T-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn from_integers(coeffs: impl IntoIterator<Item = i64>) -> Self {
        Self { coeffs: coeffs.into_iter().map(|c| BigRational::from_integer(BigInt::from(c))).collect() }
    }

    /// The truncation order `T`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Product with a polynomial (integer coefficients, constant first),
    /// truncated to the same order.
    pub fn mul_polynomial(&self, poly: &[i64]) -> Self {
        let t = self.coeffs.len();
        let mut out = vec![BigRational::zero(); t];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in poly.iter().enumerate().take(t - i) {
                if b != 0 {
                    out[i + j] += a * BigRational::from_integer(BigInt::from(b));
                }
            }
        }
        Self { coeffs: out }
    }

    /// Whether the series is `1 + O(t^T)`.
    pub fn is_one(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(k, c)| if k == 0 { c.is_one() } else { c.is_zero() })
    }
}

/// `1 / (1 - ζ^e t^ℓ)` applied in place to a series with coefficients in the
/// group ring `Z[x]/(x^m - 1)`: `S'[k] = S[k] + x^e · S'[k - ℓ]`.
fn divide_by_factor(series: &mut [Vec<i128>], len: usize, phase: usize, m: usize) {
    for k in len..series.len() {
        let (lo, hi) = series.split_at_mut(k);
        let src = &lo[k - len];
        let dst = &mut hi[0];
        for (j, &c) in src.iter().enumerate() {
            if c != 0 {
                dst[(j + phase) % m] += c;
            }
        }
    }
}

/// Molien series `(1/|G|) Σ_g 1/det(1 - t·g)` of `G(m, r, n)` through
/// `t^{order-1}`, in the classical grading (linear forms in degree 1).
///
/// Elements are tallied by their cycle factors; each distinct factor list is
/// expanded once as a product of geometric series over the group ring
/// `Z[x]/(x^m - 1)`, the weighted sum is mapped into `Q(ζ_m)` and divided by
/// `|G|`. Every resulting coefficient must be a non-negative integer.
pub fn molien_series(m: u32, r: u32, n: u32, order: usize, budget: u64) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::InvalidParameters("truncation order must be at least 1".into()));
    }
    let mut tally: BTreeMap<Vec<(u32, u32)>, u64> = BTreeMap::new();
    let mut group_size: u64 = 0;
    for g in group_elements(m, r, n, budget)? {
        let mut factors = g.cycle_factors();
        factors.sort_unstable();
        *tally.entry(factors).or_default() += 1;
        group_size += 1;
    }

    let width = m as usize;
    let mut total = vec![vec![0i128; width]; order];
    for (factors, count) in &tally {
        let mut series = vec![vec![0i128; width]; order];
        series[0][0] = 1;
        for &(len, phase) in factors {
            divide_by_factor(&mut series, len as usize, phase as usize, width);
        }
        for (acc, term) in total.iter_mut().zip(&series) {
            for (a, &t) in acc.iter_mut().zip(term) {
                *a += t * *count as i128;
            }
        }
    }

    let inverse_order = BigRational::new(BigInt::one(), BigInt::from(group_size));
    let coeffs = total
        .iter()
        .enumerate()
        .map(|(k, acc)| {
            let value = CyclotomicElement::from_group_ring(m, acc).scale(&inverse_order);
            match value.as_natural() {
                Some(c) => Ok(BigRational::from_integer(BigInt::from(c))),
                None => Err(Error::Arithmetic(format!(
                    "Molien coefficient of t^{k} for G({m},{r},{n}) is not a non-negative integer: {:?}",
                    value.coefficients()
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::new(coeffs))
}

/// Classical degrees `m, 2m, …, (n-1)m, mn/r` of `G(m, r, n)`.
pub fn classical_degrees(m: u32, r: u32, n: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (1..n).map(|k| k * m).collect();
    d.push(m * n / r);
    d
}

/// Checks `Molien · ∏ (1 - t^{d_i}) ≡ 1 (mod t^T)` with `T = 1 + Σ d_i`.
///
/// The invariant ring of a reflection group is polynomial on `n` generators,
/// so its Molien series is `∏ 1/(1 - t^{e_i})`. If the multisets `{d_i}` and
/// `{e_i}` (both of size `n`) differ, the smallest degree where their
/// multiplicities differ is at most `max d_i < T`, and the product has a
/// non-zero coefficient there.
pub fn verify_degrees_with_budget(m: u32, r: u32, n: u32, budget: u64) -> Result<bool> {
    if m == 0 || r == 0 || n == 0 || !m.is_multiple_of(r) {
        return Err(Error::InvalidParameters(format!("G({m},{r},{n}) needs m, r, n >= 1 and r | m")));
    }
    let degrees = classical_degrees(m, r, n);
    let order = 1 + degrees.iter().map(|&d| d as usize).sum::<usize>();
    let series = molien_series(m, r, n, order, budget)?;
    let mut product = series;
    for d in degrees {
        let mut factor = vec![0i64; d as usize + 1];
        factor[0] = 1;
        factor[d as usize] = -1;
        product = product.mul_polynomial(&factor);
    }
    Ok(product.is_one())
}

pub fn verify_degrees(m: u32, r: u32, n: u32) -> Result<bool> {
    verify_degrees_with_budget(m, r, n, super::group::DEFAULT_BUDGET)
}
