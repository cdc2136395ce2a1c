//! The imprimitive reflection group `G(m, r, n)` as monomial matrices.

use crate::error::{Error, Result};

/// Default cap on group order for enumeration.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Monomial matrix sending basis vector `i` to `ζ_m^{phases[i]} · e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhasedPermutation {
    m: u32,
    perm: Vec<usize>,
    phases: Vec<u32>,
}

impl PhasedPermutation {
    pub fn new(m: u32, perm: Vec<usize>, phases: Vec<u32>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &j in &perm {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParameters(format!("{perm:?} is not a permutation")));
            }
        }
        if phases.len() != n || m == 0 {
            return Err(Error::InvalidParameters("phase vector length must match the permutation".into()));
        }
        let phases = phases.into_iter().map(|e| e % m).collect();
        Ok(Self { m, perm, phases })
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[u32] {
        &self.phases
    }

    /// Sum of phases mod `m`; the element lies in `G(m, r, n)` iff `r` divides it.
    pub fn phase_sum(&self) -> u32 {
        (self.phases.iter().map(|&e| e as u64).sum::<u64>() % self.m as u64) as u32
    }

    /// One `(length, phase)` pair per cycle of the permutation, in order of
    /// each cycle's smallest index. On a cycle of length `ℓ` whose phases sum
    /// to `e`, `det(1 - t·g)` contributes the factor `1 - ζ^e t^ℓ`.
    pub fn cycle_factors(&self) -> Vec<(u32, u32)> {
        let n = self.perm.len();
        let mut visited = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let (mut len, mut phase, mut i) = (0u32, 0u64, start);
            while !visited[i] {
                visited[i] = true;
                len += 1;
                phase += self.phases[i] as u64;
                i = self.perm[i];
            }
            out.push((len, (phase % self.m as u64) as u32));
        }
        out
    }
}

pub fn cycle_factors(g: &PhasedPermutation) -> Vec<(u32, u32)> {
    g.cycle_factors()
}

/// `m^n · n! / r`, or `None` on overflow.
pub fn group_order(m: u32, r: u32, n: u32) -> Option<u128> {
    let mut order: u128 = 1;
    for k in 1..=n {
        order = order.checked_mul(m as u128)?.checked_mul(k as u128)?;
    }
    Some(order / r as u128)
}

fn check_parameters(m: u32, r: u32, n: u32, budget: u64) -> Result<u128> {
    if m == 0 || n == 0 || r == 0 {
        return Err(Error::InvalidParameters(format!("G({m},{r},{n}) needs m, r, n >= 1")));
    }
    if !m.is_multiple_of(r) {
        return Err(Error::InvalidParameters(format!("r = {r} does not divide m = {m}")));
    }
    match group_order(m, r, n) {
        Some(order) if order <= budget as u128 => Ok(order),
        order => Err(Error::SizeLimit { order: order.unwrap_or(u128::MAX), budget }),
    }
}

/// Streams every element of `G(m, r, n)` exactly once.
pub fn group_elements(m: u32, r: u32, n: u32, budget: u64) -> Result<GroupElements> {
    let order = check_parameters(m, r, n, budget)?;
    Ok(GroupElements {
        m,
        r,
        perm: Some((0..n as usize).collect()),
        free: vec![0; n as usize - 1],
        last_step: 0,
        remaining: order,
    })
}

/// Iterator over permutations (lexicographic) times phase vectors. The first
/// `n - 1` phases range freely; the last is fixed up to a multiple of `r` so
/// that the phase sum is divisible by `r`.
pub struct GroupElements {
    m: u32,
    r: u32,
    perm: Option<Vec<usize>>,
    free: Vec<u32>,
    last_step: u32,
    remaining: u128,
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

impl GroupElements {
    fn advance(&mut self) {
        self.last_step += 1;
        if self.last_step < self.m / self.r {
            return;
        }
        self.last_step = 0;
        for digit in self.free.iter_mut() {
            *digit += 1;
            if *digit < self.m {
                return;
            }
            *digit = 0;
        }
        let exhausted = match self.perm.as_mut() {
            Some(p) => !next_permutation(p),
            None => true,
        };
        if exhausted {
            self.perm = None;
        }
    }
}

impl Iterator for GroupElements {
    type Item = PhasedPermutation;

    fn next(&mut self) -> Option<PhasedPermutation> {
        let perm = self.perm.clone()?;
        let m = self.m as u64;
        let partial: u64 = self.free.iter().map(|&e| e as u64).sum();
        let last = ((m - partial % m) % m + (self.last_step * self.r) as u64) % m;
        let mut phases = self.free.clone();
        phases.push(last as u32);
        self.advance();
        self.remaining = self.remaining.saturating_sub(1);
        Some(PhasedPermutation { m: self.m, perm, phases })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}
