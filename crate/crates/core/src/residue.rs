//! Sets of integers given as unions of congruence classes modulo `N`.
//!
//! A [`ResidueSet`] describes which primes satisfy a congruence condition.
//! Binary operations lift both operands to the lcm of their moduli, combine
//! residues there and return the canonical form: the smallest modulus `d`
//! dividing the original one such that the set is a union of full classes
//! mod `d`. The empty set canonicalizes to `(∅ mod 1)` and the set of all
//! integers to `({0} mod 1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{checked_lcm, ensure_prime, gcd, is_prime, prime_divisors};

/// Largest modulus a set is ever expanded to. Lifting materializes one flag
/// per residue, so this bounds memory as well as arithmetic width.
pub const LIFT_LIMIT: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawResidueSet")]
pub struct ResidueSet {
    modulus: u64,
    residues: Vec<u64>,
}

#[derive(Deserialize)]
struct RawResidueSet {
    modulus: u64,
    residues: Vec<i64>,
}

impl TryFrom<RawResidueSet> for ResidueSet {
    type Error = Error;

    fn try_from(raw: RawResidueSet) -> Result<Self> {
        ResidueSet::new(raw.modulus, raw.residues)
    }
}

impl ResidueSet {
    /// Reduces every residue mod `modulus` and deduplicates. The result is
    /// not canonicalized; see [`ResidueSet::normalize`].
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = i64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(0));
        }
        if modulus > i64::MAX as u64 {
            return Err(Error::ModulusOverflow(format!("modulus {modulus} exceeds i64::MAX")));
        }
        let m = modulus as i64;
        let mut residues: Vec<u64> = residues.into_iter().map(|r| r.rem_euclid(m) as u64).collect();
        residues.sort_unstable();
        residues.dedup();
        Ok(Self { modulus, residues })
    }

    pub fn all() -> Self {
        Self { modulus: 1, residues: vec![0] }
    }

    pub fn empty() -> Self {
        Self { modulus: 1, residues: Vec::new() }
    }

    /// `{a} mod n`, canonicalized.
    pub fn class(a: i64, modulus: u64) -> Result<Self> {
        Ok(Self::new(modulus, [a])?.normalize())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Residues in ascending order.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Integer membership.
    pub fn contains(&self, x: i64) -> bool {
        let r = x.rem_euclid(self.modulus as i64) as u64;
        self.residues.binary_search(&r).is_ok()
    }

    fn contains_u64(&self, x: u64) -> bool {
        self.residues.binary_search(&(x % self.modulus)).is_ok()
    }

    /// Membership flags for every residue mod `target`, which must be a
    /// multiple of this set's modulus.
    fn lift(&self, target: u64) -> Vec<bool> {
        debug_assert!(target.is_multiple_of(self.modulus) && target <= LIFT_LIMIT);
        let mut flags = vec![false; target as usize];
        for &r in &self.residues {
            let mut x = r;
            while x < target {
                flags[x as usize] = true;
                x += self.modulus;
            }
        }
        flags
    }

    fn from_flags(flags: &[bool]) -> Self {
        let residues = flags.iter().enumerate().filter_map(|(i, &f)| f.then_some(i as u64)).collect();
        Self { modulus: flags.len() as u64, residues }
    }

    /// [`from_flags`](Self::from_flags) followed by [`normalize`](Self::normalize),
    /// testing periods on the flags directly.
    fn from_flags_normalized(flags: &[bool]) -> Self {
        let n = flags.len() as u64;
        let mut period = n;
        for q in prime_divisors(n) {
            while period.is_multiple_of(q) {
                let d = (period / q) as usize;
                if flags[d..period as usize].iter().zip(flags).all(|(a, b)| a == b) {
                    period /= q;
                } else {
                    break;
                }
            }
        }
        Self::from_flags(&flags[..period as usize])
    }

    /// Canonical form: the minimal modulus representation of the same set.
    pub fn normalize(&self) -> Self {
        if self.residues.is_empty() {
            return Self::empty();
        }
        if self.residues.len() as u64 == self.modulus {
            return Self::all();
        }
        let n = self.modulus;
        // Periods dividing n are closed under gcd, so stripping prime factors
        // greedily reaches the minimal one.
        let mut period = n;
        for q in prime_divisors(n) {
            while period.is_multiple_of(q) && self.has_period(period / q) {
                period /= q;
            }
        }
        if period == n {
            return self.clone();
        }
        let residues = self.residues.iter().copied().take_while(|&r| r < period).collect();
        Self { modulus: period, residues }
    }

    /// Whether membership is invariant under `x -> x + d`, for `d | modulus`.
    fn has_period(&self, d: u64) -> bool {
        if !(self.residues.len() as u64).is_multiple_of(self.modulus / d) {
            return false;
        }
        self.residues.iter().all(|&r| self.contains_u64(r + d))
    }

    fn common_modulus(&self, other: &Self) -> Result<u64> {
        let l = checked_lcm(self.modulus, other.modulus).ok_or_else(|| {
            Error::ModulusOverflow(format!("lcm({}, {}) does not fit in 64 bits", self.modulus, other.modulus))
        })?;
        if l > LIFT_LIMIT {
            return Err(Error::ModulusOverflow(format!(
                "lcm({}, {}) = {l} exceeds the lift limit {LIFT_LIMIT}",
                self.modulus, other.modulus
            )));
        }
        Ok(l)
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        let l = self.common_modulus(other)?;
        let a = self.lift(l);
        let b = other.lift(l);
        let flags: Vec<bool> = a.iter().zip(&b).map(|(&x, &y)| op(x, y)).collect();
        Ok(Self::from_flags_normalized(&flags))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x && y)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x || y)
    }

    pub fn contains_prime(&self, p: u64) -> Result<bool> {
        ensure_prime(p)?;
        Ok(self.contains_u64(p))
    }

    /// The primes `p >= k`, as the units modulo the product of primes below `k`.
    pub fn from_min_prime(k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidBound(k));
        }
        let small: Vec<u64> = (2..k).filter(|&q| is_prime(q)).collect();
        let mut modulus: u64 = 1;
        for &q in &small {
            modulus = modulus.checked_mul(q).filter(|&m| m <= LIFT_LIMIT).ok_or_else(|| {
                Error::ModulusOverflow(format!("primorial below {k} exceeds the lift limit {LIFT_LIMIT}"))
            })?;
        }
        if modulus == 1 {
            return Ok(Self::all());
        }
        let mut flags = vec![true; modulus as usize];
        for &q in &small {
            for x in (0..modulus as usize).step_by(q as usize) {
                flags[x] = false;
            }
        }
        // The units modulo a squarefree number have no smaller period.
        Ok(Self::from_flags(&flags))
    }

    /// Removes the prime `q` and nothing else.
    pub fn exclude_prime(&self, q: u64) -> Result<Self> {
        ensure_prime(q)?;
        let l = self.common_modulus(&Self { modulus: q, residues: Vec::new() })?;
        let mut flags = self.lift(l);
        for x in (0..l).step_by(q as usize) {
            flags[x as usize] = false;
        }
        Ok(Self::from_flags_normalized(&flags))
    }

    /// Every prime-bearing class of the modulus lies in the set.
    pub fn covers_all_primes(&self) -> bool {
        let n = self.modulus;
        (0..n).all(|a| self.contains_u64(a) || !class_contains_prime(a, n))
    }

    /// Every prime of `self` also lies in `other`.
    pub fn prime_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.uncovered_prime_classes(other)?.is_empty())
    }

    /// Prime-bearing residue classes (mod the common modulus) that belong to
    /// `self` but not to `other`, as `(residue, modulus)` pairs.
    pub(crate) fn uncovered_prime_classes(&self, other: &Self) -> Result<Vec<(u64, u64)>> {
        let l = self.common_modulus(other)?;
        let a = self.lift(l);
        let b = other.lift(l);
        Ok((0..l).filter(|&x| a[x as usize] && !b[x as usize] && class_contains_prime(x, l)).map(|x| (x, l)).collect())
    }
}

/// Whether the class `a mod n` contains a prime (`0 <= a < n`).
///
/// Coprime classes contain infinitely many primes by Dirichlet's theorem.
/// Otherwise every member is divisible by `g = gcd(a, n) > 1`, so the only
/// candidate is a prime divisor of `g` congruent to `a`.
pub fn class_contains_prime(a: u64, n: u64) -> bool {
    debug_assert!(a < n);
    let g = gcd(a, n);
    if g == 1 {
        return true;
    }
    prime_divisors(g).into_iter().any(|q| q % n == a)
}

/// Primes in the class `a mod n` up to `limit`, ascending. A class with
/// `gcd(a, n) > 1` holds at most one prime.
pub(crate) fn primes_in_class(a: u64, n: u64, limit: u64) -> impl Iterator<Item = u64> {
    let a = a % n;
    let cap = if gcd(a, n) == 1 { limit } else { limit.min(a.max(n)) };
    (0..)
        .map_while(move |k: u64| k.checked_mul(n).and_then(|x| x.checked_add(a)))
        .take_while(move |&x| x <= cap)
        .filter(|&x| is_prime(x))
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "{{{}}} mod {}", rs.join(","), self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::primes_up_to;
    use proptest::prelude::*;

    fn rs(m: u64, r: &[i64]) -> ResidueSet {
        ResidueSet::new(m, r.iter().copied()).unwrap()
    }

    /// Brute-force membership over one period of the lcm.
    fn members(s: &ResidueSet, period: u64) -> Vec<u64> {
        (0..period).filter(|&x| s.contains(x as i64)).collect()
    }

    #[test]
    fn make() {
        assert_eq!(rs(6, &[1, 5]).residues(), &[1, 5]);
        assert_eq!(rs(6, &[7]).residues(), &[1]);
        assert_eq!(rs(6, &[-1, 11, 5]).residues(), &[5]);
        assert_eq!(ResidueSet::new(0, [1]), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(rs(8, &[1, 3, 5, 7]).normalize(), rs(2, &[1]));
        assert_eq!(rs(6, &[1]).normalize(), rs(6, &[1]));
        assert_eq!(rs(6, &[2, 5]).normalize(), rs(3, &[2]));
        assert_eq!(rs(12, &[]).normalize(), ResidueSet::empty());
        assert_eq!(rs(4, &[0, 1, 2, 3]).normalize(), ResidueSet::all());
        // {0, 2, 3} mod 4 has no smaller period
        assert_eq!(rs(4, &[0, 2, 3]).normalize(), rs(4, &[0, 2, 3]));
    }

    #[test]
    fn intersect_union_examples() {
        assert_eq!(rs(3, &[1]).intersect(&rs(4, &[1])).unwrap(), rs(12, &[1]));
        let got = rs(8, &[1, 3]).intersect(&rs(3, &[1])).unwrap();
        // oracle: enumerate all 24 residues
        let expected: Vec<u64> = (0..24).filter(|x| (x % 8 == 1 || x % 8 == 3) && x % 3 == 1).collect();
        assert_eq!(expected, vec![1, 19]);
        assert_eq!(got, rs(24, &[1, 19]));
        assert_eq!(rs(24, &[1]).union(&rs(8, &[1, 3])).unwrap(), rs(8, &[1, 3]));
    }

    #[test]
    fn lift_limit_is_reported() {
        let a = rs(1 << 20, &[1]);
        let b = rs(3 * 5 * 7 * 11, &[1]);
        assert!(matches!(a.intersect(&b), Err(Error::ModulusOverflow(_))));
        let big = rs(u64::MAX / 2, &[1]);
        assert!(matches!(big.union(&rs(u64::MAX / 2 - 1, &[1])), Err(Error::ModulusOverflow(_))));
    }

    #[test]
    fn contains_prime_examples() {
        assert!(rs(6, &[1, 5]).contains_prime(7).unwrap());
        assert!(!rs(2, &[1]).contains_prime(2).unwrap());
        assert!(rs(24, &[1, 19]).contains_prime(19).unwrap());
        assert_eq!(rs(6, &[1]).contains_prime(9), Err(Error::NotAPrime(9)));
    }

    #[test]
    fn from_min_prime_examples() {
        assert_eq!(ResidueSet::from_min_prime(5).unwrap(), rs(6, &[1, 5]));
        assert_eq!(ResidueSet::from_min_prime(3).unwrap(), rs(2, &[1]));
        assert_eq!(ResidueSet::from_min_prime(2).unwrap(), ResidueSet::all());
        let units30: Vec<i64> = (0..30).filter(|&a| gcd(a as u64, 30) == 1).collect();
        assert_eq!(units30, vec![1, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(ResidueSet::from_min_prime(7).unwrap(), rs(30, &units30));
        assert_eq!(ResidueSet::from_min_prime(1), Err(Error::InvalidBound(1)));
        assert!(matches!(ResidueSet::from_min_prime(100), Err(Error::ModulusOverflow(_))));
    }

    #[test]
    fn exclude_prime_examples() {
        assert_eq!(rs(7, &[1, 2, 4]).exclude_prime(2).unwrap(), rs(14, &[1, 9, 11]));
        assert_eq!(rs(4, &[1]).exclude_prime(2).unwrap(), rs(4, &[1]));
        assert_eq!(rs(2, &[0, 1]).exclude_prime(2).unwrap(), rs(2, &[1]));
        assert_eq!(rs(2, &[1]).exclude_prime(4), Err(Error::NotAPrime(4)));
    }

    #[test]
    fn class_contains_prime_examples() {
        assert!(class_contains_prime(1, 4));
        assert!(!class_contains_prime(6, 10));
        assert!(class_contains_prime(3, 9));
        assert!(class_contains_prime(0, 1));
        assert!(class_contains_prime(0, 7));
        assert!(!class_contains_prime(0, 6));
    }

    #[test]
    fn class_contains_prime_vs_search() {
        let primes = primes_up_to(1_000_000);
        for n in 1..=60u64 {
            for a in 0..n {
                let found = primes.iter().any(|&p| p % n == a);
                assert_eq!(class_contains_prime(a, n), found, "class {a} mod {n}");
            }
        }
    }

    #[test]
    fn covers_all_primes_examples() {
        assert!(rs(6, &[0, 1, 2, 3, 4, 5]).covers_all_primes());
        assert!(!rs(6, &[1, 5]).covers_all_primes());
        assert!(rs(6, &[1, 5, 2, 3]).covers_all_primes());
        assert!(ResidueSet::all().covers_all_primes());
        assert!(!ResidueSet::empty().covers_all_primes());
    }

    #[test]
    fn prime_subset_examples() {
        assert!(rs(24, &[1]).prime_subset(&rs(8, &[1, 3])).unwrap());
        assert!(!rs(8, &[1, 3]).prime_subset(&rs(3, &[1])).unwrap());
        let a = rs(30, &[1, 7, 11]);
        assert!(a.prime_subset(&a).unwrap());
        // the classes of 2 and 3 are single primes
        assert!(rs(6, &[2, 3]).prime_subset(&rs(1, &[0])).unwrap());
        assert!(!rs(6, &[2, 3]).prime_subset(&rs(2, &[1])).unwrap());
        assert!(rs(6, &[0, 4]).prime_subset(&ResidueSet::empty()).unwrap());
    }

    #[test]
    fn prime_search_in_class() {
        assert_eq!(primes_in_class(1, 8, 100).collect::<Vec<_>>(), vec![17, 41, 73, 89, 97]);
        assert_eq!(primes_in_class(2, 6, 1000).collect::<Vec<_>>(), vec![2]);
        assert_eq!(primes_in_class(0, 7, 1000).collect::<Vec<_>>(), vec![7]);
        assert_eq!(primes_in_class(4, 6, 1000).next(), None);
        assert_eq!(primes_in_class(0, 1, 1000).next(), Some(2));
    }

    #[test]
    fn serde_shape() {
        let s = rs(24, &[19, 1]);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"modulus":24,"residues":[1,19]}"#);
        let back: ResidueSet = serde_json::from_str(r#"{"modulus":6,"residues":[7,-1]}"#).unwrap();
        assert_eq!(back, rs(6, &[1, 5]));
        assert!(serde_json::from_str::<ResidueSet>(r#"{"modulus":0,"residues":[]}"#).is_err());
    }

    fn arb_set() -> impl Strategy<Value = ResidueSet> {
        (1u64..=96)
            .prop_flat_map(|m| proptest::collection::vec(0..m as i64, 0..=m as usize).prop_map(move |r| rs(m, &r)))
    }

    proptest! {
        #[test]
        fn normalize_preserves_membership(s in arb_set()) {
            let n = s.normalize();
            prop_assert_eq!(members(&s, s.modulus()), members(&n, s.modulus()));
            prop_assert_eq!(n.normalize(), n.clone());
            prop_assert_eq!(s.modulus() % n.modulus(), 0);
        }

        #[test]
        fn operations_are_pointwise(a in arb_set(), b in arb_set()) {
            let l = checked_lcm(a.modulus(), b.modulus()).unwrap();
            let i = a.intersect(&b).unwrap();
            let u = a.union(&b).unwrap();
            for x in 0..l as i64 {
                prop_assert_eq!(i.contains(x), a.contains(x) && b.contains(x));
                prop_assert_eq!(u.contains(x), a.contains(x) || b.contains(x));
            }
        }

        #[test]
        fn prime_subset_vs_enumeration(a in arb_set(), b in arb_set()) {
            let enumerated = primes_up_to(10_000)
                .into_iter()
                .all(|p| !a.contains(p as i64) || b.contains(p as i64));
            prop_assert_eq!(a.prime_subset(&b).unwrap(), enumerated);
        }

        #[test]
        fn covers_all_vs_enumeration(a in arb_set()) {
            let enumerated = primes_up_to(10_000).into_iter().all(|p| a.contains(p as i64));
            prop_assert_eq!(a.covers_all_primes(), enumerated);
        }

        #[test]
        fn exclude_prime_drops_exactly_q(a in arb_set(), qi in 0usize..8) {
            let q = [2u64, 3, 5, 7, 11, 13, 17, 19][qi];
            let e = a.exclude_prime(q).unwrap();
            for p in primes_up_to(2_000) {
                prop_assert_eq!(e.contains_prime(p).unwrap(), a.contains(p as i64) && p != q);
            }
        }
    }
}
