//! Exit criteria. Each check prints one PASS/FAIL line; the process fails if
//! any check fails.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use polycoh::catalog::Catalog;
use polycoh::molien::{claimed_degrees, verify_degrees};
use polycoh::primes::primes_up_to;
use polycoh::{
    corollary_output, decompose, decompose_at_prime, realizable_at_prime, realizable_over, DegreeMultiset, PrimeSpec,
    ResidueSet,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ds(v: &[u32]) -> DegreeMultiset {
    DegreeMultiset::new(v.iter().copied()).unwrap()
}

/// Sorted multisets of even degrees `<= max_degree` with at most `max_len`
/// entries, built by counting multiplicities.
fn multisets(max_degree: u32, max_len: usize) -> Vec<Vec<u32>> {
    let values: Vec<u32> = (1..=max_degree / 2).map(|k| 2 * k).collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; values.len()];
    loop {
        let total: usize = counts.iter().sum();
        if total <= max_len {
            out.push(values.iter().zip(&counts).flat_map(|(&v, &c)| std::iter::repeat_n(v, c)).collect());
        }
        // odometer over multiplicities 0..=max_len
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            counts[i] += 1;
            if counts[i] <= max_len && counts.iter().sum::<usize>() <= max_len {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

fn remove_sub(target: &[u32], part: &[u32]) -> Option<Vec<u32>> {
    let mut rest = target.to_vec();
    for d in part {
        let i = rest.iter().position(|x| x == d)?;
        rest.remove(i);
    }
    Some(rest)
}

/// Membership in the monoid generated by `gens`, by peeling generators off.
fn in_monoid(target: &[u32], gens: &[Vec<u32>], memo: &mut HashMap<Vec<u32>, bool>) -> bool {
    if target.is_empty() {
        return true;
    }
    if let Some(&v) = memo.get(target) {
        return v;
    }
    let v = gens.iter().any(|g| remove_sub(target, g).is_some_and(|rest| in_monoid(&rest, gens, memo)));
    memo.insert(target.to_vec(), v);
    v
}

fn su(n: u32) -> Vec<u32> {
    (2..=n).map(|k| 2 * k).collect()
}

fn sp(n: u32) -> Vec<u32> {
    (1..=n).map(|k| 4 * k).collect()
}

fn spin(n: u32) -> Vec<u32> {
    let mut v: Vec<u32> = (1..n).map(|k| 4 * k).collect();
    v.push(2 * n);
    v.sort_unstable();
    v
}

fn integral_monoid_equivalence() -> Outcome {
    let start = Instant::now();
    let cat = Catalog::builtin();
    let mut gens = vec![vec![2]];
    gens.extend((2..=12).map(su));
    gens.extend((1..=6).map(sp));
    let mut memo = HashMap::new();
    let targets = multisets(24, 4);
    let mut mismatches = Vec::new();
    for t in &targets {
        let engine = realizable_over(&cat, &ds(t), &PrimeSpec::All).map_err(|e| e.to_string())?.verdict;
        if engine != in_monoid(t, &gens, &mut memo) {
            mismatches.push(format!("{t:?}"));
        }
    }
    let elapsed = start.elapsed();
    let detail = format!("{} multisets, {} mismatches, {:.2?}", targets.len(), mismatches.len(), elapsed);
    if !mismatches.is_empty() {
        return Err(format!("{detail}; first: {}", mismatches[..mismatches.len().min(5)].join(" ")));
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("{detail}; over the 60 s limit"));
    }
    Ok(detail)
}

fn mod_three_generators() -> Outcome {
    let cat = Catalog::builtin();
    let fits = |g: &Vec<u32>| g.iter().all(|&d| d <= 24);
    let mut gens: Vec<Vec<u32>> = vec![vec![2]];
    gens.extend((2..).map(su).take_while(fits));
    gens.extend((1..).map(sp).take_while(fits));
    gens.extend((3..).map(spin).take_while(fits));
    gens.extend([vec![4, 12], vec![12, 16]]);
    gens.sort();
    gens.dedup();

    let mut problems = Vec::new();
    for g in &gens {
        if realizable_at_prime(&cat, &ds(g), 3).map_err(|e| e.to_string())?.is_none() {
            problems.push(format!("generator {g:?} not realizable at 3"));
        }
    }
    let mut memo = HashMap::new();
    let targets = multisets(24, 3);
    for t in &targets {
        let found = decompose_at_prime(&cat, &ds(t), 3).map_err(|e| e.to_string())?;
        let expected = in_monoid(t, &gens, &mut memo);
        if found.is_empty() == expected {
            problems.push(format!("{t:?}: engine {}, generators {expected}", !found.is_empty()));
        }
        for d in &found {
            if let Some(p) = d.parts().iter().find(|p| !gens.contains(&p.degrees().degrees().to_vec())) {
                problems.push(format!("{t:?}: part {} is outside the generator families", p.name()));
            }
        }
    }
    let detail = format!("{} generators, {} multisets, {} problems", gens.len(), targets.len(), problems.len());
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; first: {}", problems[..problems.len().min(5)].join("; ")))
    }
}

fn corollary_pairs() -> Outcome {
    let cat = Catalog::builtin();
    let primes = primes_up_to(10_000);
    let cases: [(&[u32], u64, &[u64]); 3] = [(&[4, 12], 2, &[1]), (&[12, 16], 8, &[1, 3]), (&[2], 1, &[0])];
    let mut lines = Vec::new();
    for (t, n, residues) in cases {
        let target = ds(t);
        let got = corollary_output(&cat, &target).map_err(|e| e.to_string())?;
        if got != (n, residues.to_vec()) {
            return Err(format!("{target}: got {got:?}, want ({n}, {residues:?})"));
        }
        for &p in &primes {
            let scan = !decompose_at_prime(&cat, &target, p).map_err(|e| e.to_string())?.is_empty();
            if scan != residues.contains(&(p % n)) {
                return Err(format!("{target}: per-prime scan disagrees at p={p}"));
            }
        }
        lines.push(format!("{target} -> (N={n}, {residues:?})"));
    }
    Ok(format!("{}; {} primes scanned each", lines.join(", "), primes.len()))
}

fn molien_sweep() -> Outcome {
    let start = Instant::now();
    let mut params = Vec::new();
    for m in 1..=10u32 {
        for r in (1..=m).filter(|r| m % r == 0) {
            params.extend((1..=3).map(|n| (m, r, n)));
        }
    }
    for m in 1..=30u32 {
        params.extend([(m, 1, 2), (m, m, 2)]);
    }
    params.sort_unstable();
    params.dedup();
    let mut failures = Vec::new();
    for &(m, r, n) in &params {
        match verify_degrees(m, r, n) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("G({m},{r},{n})")),
            Err(e) => failures.push(format!("G({m},{r},{n}): {e}")),
        }
    }

    let cat = Catalog::builtin();
    let mut cross = 0;
    for m in 5..=30u32 {
        if verify_degrees(m, m, 2) != Ok(true) {
            failures.push(format!("dihedral m={m}"));
        }
        if m != 6 {
            let row = cat.lookup(&format!("D_{}", 2 * m)).ok_or(format!("D_{} missing", 2 * m))?;
            if row.degrees() != &ds(&[4, 2 * m]) || row.degrees() != &claimed_degrees(m, m, 2) {
                failures.push(format!("D_{} row degrees {}", 2 * m, row.degrees()));
            }
        }
        cross += 1;
    }
    for m in 3..=30u32 {
        if verify_degrees(m, 1, 1) != Ok(true) {
            failures.push(format!("cyclic m={m}"));
        }
        let row = cat.lookup(&format!("C_{m}")).ok_or(format!("C_{m} missing"))?;
        if row.degrees() != &ds(&[2 * m]) || row.degrees() != &claimed_degrees(m, 1, 1) {
            failures.push(format!("C_{m} row degrees {}", row.degrees()));
        }
        cross += 1;
    }
    let elapsed = start.elapsed();
    let detail = format!("{} triples, {cross} row cross-checks, {:.2?}", params.len(), elapsed);
    if !failures.is_empty() {
        return Err(format!("{detail}; failures: {}", failures.join(", ")));
    }
    if elapsed > Duration::from_secs(120) {
        return Err(format!("{detail}; over the 120 s limit"));
    }
    Ok(detail)
}

fn random_set(rng: &mut StdRng) -> ResidueSet {
    let n = rng.gen_range(1..=720u64);
    let density: f64 = rng.gen();
    let residues: Vec<i64> = (0..n as i64).filter(|_| rng.gen_bool(density)).collect();
    ResidueSet::new(n, residues).unwrap()
}

fn residue_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let primes = primes_up_to(10_000);
    let mut failures = Vec::new();
    let mut by_bound = HashMap::new();
    for i in 0..1000 {
        let a = random_set(&mut rng);
        let b = random_set(&mut rng);
        let meet = a.intersect(&b).map_err(|e| e.to_string())?;
        let join = a.union(&b).map_err(|e| e.to_string())?;
        let na = a.normalize();
        if na.normalize() != na || a.intersect(&a).map_err(|e| e.to_string())? != na {
            failures.push(format!("pair {i}: normalize not idempotent"));
        }
        let k = rng.gen_range(2..=23u64);
        if let std::collections::hash_map::Entry::Vacant(e) = by_bound.entry(k) {
            e.insert(ResidueSet::from_min_prime(k).map_err(|e| e.to_string())?);
        }
        let above = &by_bound[&k];
        for &p in &primes {
            let (x, y) = (a.contains(p as i64), b.contains(p as i64));
            if meet.contains(p as i64) != (x && y) || join.contains(p as i64) != (x || y) {
                failures.push(format!("pair {i}: membership differs at {p}"));
                break;
            }
            if na.contains(p as i64) != x {
                failures.push(format!("pair {i}: normalize changed membership at {p}"));
                break;
            }
            if above.contains(p as i64) != (p >= k) {
                failures.push(format!("pair {i}: from_min_prime({k}) wrong at {p}"));
                break;
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("1000 pairs, {} primes each, 0 failures", primes.len()))
    } else {
        Err(format!("{} failures; first: {}", failures.len(), failures[..failures.len().min(5)].join("; ")))
    }
}

fn covering_spot_checks() -> Outcome {
    let cat = Catalog::builtin();
    let cases: [(&[u32], &[&str]); 6] = [
        (&[8, 12], &["G(6,3,2)"]),
        (&[12, 24], &["G(6,1,2)"]),
        (&[8, 24], &["C_4", "C_12"]),
        (&[24, 24], &["C_12", "C_12"]),
        (&[16, 24], &["G_8"]),
        (&[4, 60], &["G(30,1,2)"]),
    ];
    let mut missing = Vec::new();
    for (t, named) in cases {
        let target = ds(t);
        let found = decompose(&cat, &target).iter().any(|d| {
            let mut names = d.names();
            names.sort_unstable();
            let mut want = named.to_vec();
            want.sort_unstable();
            names == want
        });
        if !found {
            let have: Vec<String> = decompose(&cat, &target).iter().map(|d| d.to_string()).collect();
            missing.push(format!("{target} lacks {} (has: {})", named.join(" + "), have.join(", ")));
        }
    }
    if missing.is_empty() {
        Ok("6 targets, all named decompositions present".into())
    } else {
        Err(missing.join("; "))
    }
}

fn spin_eight() -> Outcome {
    let cat = Catalog::builtin();
    let target = ds(&[4, 8, 8, 12]);
    let half = realizable_over(&cat, &target, &PrimeSpec::cofinite([2]).unwrap()).map_err(|e| e.to_string())?;
    let whole = realizable_over(&cat, &target, &PrimeSpec::All).map_err(|e| e.to_string())?;
    if !half.verdict {
        return Err("not realizable away from 2".into());
    }
    if whole.verdict || whole.failing_prime != Some(2) {
        return Err(format!("over all primes: verdict {}, failing prime {:?}", whole.verdict, whole.failing_prime));
    }
    let witness: BTreeMap<_, _> = half.witnesses.iter().map(|(p, d)| (*p, d.to_string())).collect();
    Ok(format!("away from 2: true {witness:?}; all primes: false at p=2"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 integral monoid equivalence", integral_monoid_equivalence),
        ("2 generators at p=3", mod_three_generators),
        ("3 modulus and residue pairs", corollary_pairs),
        ("4 Molien sweep", molien_sweep),
        ("5 residue algebra properties", residue_properties),
        ("6 covering spot checks", covering_spot_checks),
        ("7 Spin(8) away from 2", spin_eight),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail}) [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail}) [{elapsed:.2?}]");
            }
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
