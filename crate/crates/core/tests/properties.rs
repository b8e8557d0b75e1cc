mod common;

use common::{
    binom, combos, from_family, i_value, phi as brute_phi, q, random_sets, random_valid_instance, to_family, Set,
};
use localekr::bounds::sharpness_bound;
use localekr::constructions::{h1, h2, h2_size, j_family, j_family_size, star};
use localekr::hilton::{verify_hilton, HiltonInstance};
use localekr::phi::{phi_direct, phi_telescoped, reduce_core};
use localekr::search::{max_phi_canonical, max_phi_naive};
use localekr::GroundParams;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn sharpness_bound_is_below_phi_of_j_on_the_grid() {
    for k in 2..=6u32 {
        for t in 1..k {
            for n in k + 1..=40 {
                let phi = phi_direct(&j_family(n, k, t).unwrap());
                let bound = sharpness_bound(n, k, t).unwrap();
                assert!(phi >= bound, "n={n} k={k} t={t}");
            }
        }
    }
}

#[test]
fn j_phi_matches_brute_force() {
    for (n, k, t) in [(5, 3, 1), (3, 2, 1), (7, 4, 2), (9, 4, 1), (10, 5, 3)] {
        let sets: Vec<Set> = combos(n, k)
            .into_iter()
            .filter(|s| s.iter().filter(|e| **e <= t + 2).count() as u32 > t)
            .collect();
        assert_eq!(phi_direct(&j_family(n, k, t).unwrap()), brute_phi(n, k, &sets));
    }
}

fn count(n: u32, k: u32, pred: impl Fn(&Set) -> bool) -> u128 {
    combos(n, k).iter().filter(|s| pred(s)).count() as u128
}

#[test]
fn size_identities_up_to_thirty() {
    for k in 2..=5u32 {
        for t in 1..k {
            for n in k + 2..=(if k >= 5 { 22 } else { 30 }) {
                let j = count(n, k, |s| s.iter().filter(|e| **e <= t + 2).count() as u32 > t);
                assert_eq!(BigInt::from(j), j_family_size(n, k, t));
                assert_eq!(j_family(n, k, t).unwrap().len() as u128, j);
                assert_eq!(h1(n, k, t).unwrap().len() as u128, j);
                let h = count(n, k, |s| {
                    let head = (1..=t).all(|e| s.contains(&e));
                    let tail = s.iter().any(|e| *e > t && *e <= k + 1);
                    (head && tail) || (s.iter().all(|e| *e <= k + 1) && !head)
                });
                assert_eq!(BigInt::from(h), h2_size(n, k, t));
                assert_eq!(h2(n, k, t).unwrap().len() as u128, h);
                let deficit = BigRational::from_integer(BigInt::from(j as i128 - binom((n - t) as i64, (k - t) as i64) as i128));
                let closed = q(((t + 1) * (k - t + 1)) as i128 - n as i128, (k - t) as i128)
                    * q(binom((n - t - 2) as i64, (k - t - 1) as i64) as i128, 1);
                assert_eq!(deficit, closed, "n={n} k={k} t={t}");
            }
        }
    }
}

#[test]
fn pruning_bound_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let n = rng.gen_range(3..=7u32);
        let k = rng.gen_range(1..n);
        let mut level = combos(n, k);
        level.shuffle(&mut rng);
        let split = rng.gen_range(1..=level.len());
        let take = rng.gen_range(split..=level.len());
        let base: Vec<Set> = level[..split].to_vec();
        let all: Vec<Set> = level[..take].to_vec();
        let added = (take - split) as i128;
        let lhs = brute_phi(n, k, &all);
        let rhs = brute_phi(n, k, &base) + q(added, (n - k + 1) as i128);
        assert!(lhs <= rhs, "n={n} k={k}");
        assert_eq!(phi_direct(&to_family(n, k, &all)), lhs);
    }
}

#[test]
fn adding_a_member_never_raises_existing_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..2000 {
        let n = rng.gen_range(2..=9u32);
        let k = rng.gen_range(1..n);
        let density = rng.gen_range(0.05..0.6);
        let fam = random_sets(&mut rng, n, k, density);
        let outside: Vec<Set> = combos(n, k).into_iter().filter(|s| !fam.contains(s)).collect();
        let Some(b) = outside.choose(&mut rng).cloned() else { continue };
        let mut bigger = fam.clone();
        bigger.push(b);
        for a in &fam {
            assert!(i_value(&bigger, a) <= i_value(&fam, a));
        }
    }
}

#[test]
fn canonical_search_agrees_with_naive_on_small_levels() {
    for (n, k) in [(3, 1), (4, 1), (4, 2), (4, 3), (5, 2), (5, 3), (6, 2), (6, 3), (6, 4), (6, 5)] {
        let a = max_phi_naive(n, k).unwrap();
        let b = max_phi_canonical(n, k, u64::MAX, 1).unwrap();
        assert_eq!(a.max_phi, b.max_phi, "({n},{k})");
        assert_eq!(a.witnesses, b.witnesses, "({n},{k})");
        for w in &b.witnesses {
            assert_eq!(brute_phi(n, k, &from_family(w)), b.max_phi);
        }
    }
}

#[test]
fn hilton_multiplicity_lemma_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let inst = random_valid_instance(&mut rng);
        let v = verify_hilton(&inst);
        assert!(v.condition_ok);
        assert!(v.multiplicities_ok);
        let n = inst.params().n;
        let k = inst.params().k;
        let union: Vec<Set> = v.multiplicities.iter().map(|m| m.set.elements()).collect();
        let big_m = inst.cumulative();
        for m in &v.multiplicities {
            let a = m.set.elements();
            let r = inst.families().iter().filter(|f| from_family(&f.family).contains(&a)).count() as u64;
            let i = i_value(&union, &a);
            assert_eq!((m.r, m.i_union), (r, i));
            assert!(r <= big_m[i as usize]);
        }
        let bound = (0..=k)
            .map(|s| big_m[s as usize] as u128 * binom((n - s) as i64, (k - s) as i64))
            .max()
            .unwrap();
        assert_eq!(v.bound, BigInt::from(bound));
    }
}

#[test]
fn hilton_restricted_to_one_threshold() {
    for (n, k, t, m) in [(10, 2, 1, 3), (10, 2, 1, 10), (12, 3, 2, 5), (12, 3, 2, 30)] {
        let s = star(n, k, t).unwrap();
        let inst = HiltonInstance::new(GroundParams::new(n, k).unwrap(), (0..m).map(|_| (t, s.clone()))).unwrap();
        let expected = binom(n as i64, k as i64).max(m as u128 * binom((n - t) as i64, (k - t) as i64));
        assert_eq!(verify_hilton(&inst).bound, BigInt::from(expected));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn phi_matches_brute_force(n in 2u32..=8, kf in 0.0f64..1.0, seed in any::<u64>(), density in 0.02f64..0.9) {
        let k = 1 + ((n - 1) as f64 * kf) as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sets = random_sets(&mut rng, n, k, density);
        let f = to_family(n, k, &sets);
        prop_assert_eq!(phi_direct(&f), brute_phi(n, k, &sets));
        if !sets.is_empty() {
            let red = reduce_core(&f).unwrap();
            prop_assert_eq!(phi_telescoped(&red.family).unwrap(), brute_phi(n, k, &sets));
        }
    }

    #[test]
    fn subfamilies_of_stars_keep_their_core(n in 4u32..=9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(2..n);
        let c = rng.gen_range(1..=k);
        let pool = from_family(&star(n, k, c).unwrap());
        let sets: Vec<Set> = pool.into_iter().filter(|_| rng.gen_bool(0.6)).collect();
        prop_assume!(!sets.is_empty());
        let f = to_family(n, k, &sets);
        let red = reduce_core(&f).unwrap();
        prop_assert!(red.core.len() >= c);
        prop_assert_eq!(phi_direct(&red.family), phi_direct(&f));
    }
}
