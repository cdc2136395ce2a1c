use std::collections::BTreeSet;
use std::sync::OnceLock;

use polycoh::catalog::{Catalog, EntryInstance, FamilyKind, Params, Template};
use polycoh::primes::primes_up_to;
use polycoh::{decompose, decompose_at_prime, prime_set_of_type, realizable_at_prime, DegreeMultiset};
use proptest::prelude::*;

fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(Catalog::builtin)
}

/// Every instance with parameters far beyond what degrees up to 40 allow.
fn brute_instances() -> &'static Vec<EntryInstance> {
    static ALL: OnceLock<Vec<EntryInstance>> = OnceLock::new();
    ALL.get_or_init(|| {
        let cat = catalog();
        let mut out = Vec::new();
        for (i, t) in cat.templates().iter().enumerate() {
            let params: Vec<Params> = match t {
                Template::Fixed(_) => vec![Params::None],
                Template::Family(f) => match f.kind {
                    FamilyKind::SpecialUnitary | FamilyKind::Symplectic | FamilyKind::SpinEven => {
                        (0..=45).map(Params::Rank).collect()
                    }
                    FamilyKind::Dihedral | FamilyKind::Cyclic => (0..=45).map(Params::Order).collect(),
                    FamilyKind::Imprimitive => {
                        let mut v = Vec::new();
                        for m in 0..=45 {
                            for r in 0..=45 {
                                for n in 0..=12 {
                                    v.push(Params::Imprimitive { m, r, n });
                                }
                            }
                        }
                        v
                    }
                },
            };
            out.extend(params.into_iter().filter_map(|p| cat.instantiate(i, p).ok()));
        }
        out
    })
}

fn target_strategy(max_degree: u32, max_len: usize) -> impl Strategy<Value = DegreeMultiset> {
    prop::collection::vec(1..=max_degree / 2, 0..=max_len)
        .prop_map(|v| DegreeMultiset::new(v.into_iter().map(|k| 2 * k)).unwrap())
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_up_to(100))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn candidates_are_complete(target in target_strategy(40, 5)) {
        let got: BTreeSet<String> = catalog().candidates(&target).iter().map(|c| c.name().to_string()).collect();
        let want: BTreeSet<String> = brute_instances()
            .iter()
            .filter(|i| i.degrees().is_submultiset_of(&target))
            .map(|i| i.name().to_string())
            .collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn decompositions_are_sound_and_distinct(target in target_strategy(36, 4)) {
        let all = decompose(catalog(), &target);
        for d in &all {
            prop_assert_eq!(&d.degrees(), &target);
        }
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn union_of_realizable_types_is_realizable(
        a in target_strategy(24, 3),
        b in target_strategy(24, 3),
        p in small_prime(),
    ) {
        let cat = catalog();
        if realizable_at_prime(cat, &a, p).unwrap().is_some() && realizable_at_prime(cat, &b, p).unwrap().is_some() {
            prop_assert!(realizable_at_prime(cat, &a.union(&b), p).unwrap().is_some());
        }
    }

    #[test]
    fn prime_set_matches_per_prime_decompositions(target in target_strategy(30, 3)) {
        let cat = catalog();
        let set = prime_set_of_type(cat, &target).unwrap();
        for p in primes_up_to(300) {
            let here = !decompose_at_prime(cat, &target, p).unwrap().is_empty();
            prop_assert_eq!(set.contains(p as i64), here, "p = {}", p);
        }
    }

    #[test]
    fn at_prime_is_a_filter(target in target_strategy(30, 3), p in small_prime()) {
        let cat = catalog();
        let all = decompose(cat, &target);
        let at: Vec<_> = all.iter().filter(|d| d.occurs_at(p).unwrap()).cloned().collect();
        prop_assert_eq!(decompose_at_prime(cat, &target, p).unwrap(), at);
    }
}
