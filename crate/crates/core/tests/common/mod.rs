//! Brute-force oracles that share no code with the library: sets are
//! sorted element lists, binomials are computed from scratch, and Φ is
//! summed pair by pair.
#![allow(dead_code)]

use localekr::hilton::HiltonInstance;
use localekr::{Family, GroundParams, Subset};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use num_bigint::BigInt;
use num_rational::BigRational;

pub type Set = Vec<u32>;

pub fn binom(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let mut acc = 1u128;
    for j in 0..k {
        acc = acc * (n as u128 - j) / (j + 1);
    }
    acc
}

pub fn q(p: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

/// All k-subsets of `[n]` in lexicographic order.
pub fn combos(n: u32, k: u32) -> Vec<Set> {
    fn go(start: u32, n: u32, k: u32, cur: &mut Set, out: &mut Vec<Set>) {
        if cur.len() == k as usize {
            out.push(cur.clone());
            return;
        }
        for e in start..=n {
            cur.push(e);
            go(e + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn meet(a: &[u32], b: &[u32]) -> u32 {
    a.iter().filter(|x| b.contains(x)).count() as u32
}

pub fn i_value(family: &[Set], a: &[u32]) -> u32 {
    family.iter().map(|b| meet(a, b)).min().unwrap_or(a.len() as u32).min(meet(a, a))
}

pub fn phi(n: u32, k: u32, family: &[Set]) -> BigRational {
    let mut total = q(0, 1);
    for a in family {
        let i = i_value(family, a) as i64;
        total += q(1, binom(n as i64 - i, k as i64 - i) as i128);
    }
    total
}

pub fn to_family(n: u32, k: u32, sets: &[Set]) -> Family {
    let p = GroundParams::new(n, k).unwrap();
    Family::new(p, sets.iter().map(|s| Subset::from_elements(s).unwrap())).unwrap()
}

pub fn from_family(f: &Family) -> Vec<Set> {
    f.members().iter().map(|m| m.elements()).collect()
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for e in 1..=n {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, e);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Smallest relabeled sorted member list over all of `S_n`; equal keys
/// mean isomorphic families.
pub fn iso_key(n: u32, family: &[Set]) -> Vec<Set> {
    permutations(n)
        .iter()
        .map(|p| {
            let mut sets: Vec<Set> = family
                .iter()
                .map(|s| {
                    let mut t: Set = s.iter().map(|e| p[*e as usize - 1]).collect();
                    t.sort();
                    t
                })
                .collect();
            sets.sort();
            sets
        })
        .min()
        .unwrap()
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Maximum of Φ over all subfamilies of `C([n], k)` with the isomorphism
/// classes of the maximizers.
pub fn brute_max(n: u32, k: u32) -> (BigRational, Vec<Vec<Set>>) {
    let level = combos(n, k);
    let size = level.len();
    assert!(size <= 24);
    let denoms: Vec<u128> = (0..=k).map(|i| binom((n - i) as i64, (k - i) as i64)).collect();
    let l = denoms.iter().fold(1u128, |acc, d| acc / gcd(acc, *d) * d);
    let meets: Vec<Vec<u32>> = level.iter().map(|a| level.iter().map(|b| meet(a, b)).collect()).collect();
    let mut best = 0u128;
    let mut arg: Vec<u32> = vec![0];
    for mask in 1u32..(1 << size) {
        let mut total = 0u128;
        for (a, row) in meets.iter().enumerate() {
            if mask >> a & 1 == 0 {
                continue;
            }
            let mut i = k;
            for (b, m) in row.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    i = i.min(*m);
                }
            }
            total += l / denoms[i as usize];
        }
        if total > best {
            best = total;
            arg.clear();
        }
        if total == best {
            arg.push(mask);
        }
    }
    let mut keys: Vec<Vec<Set>> = arg
        .iter()
        .map(|mask| {
            let fam: Vec<Set> = (0..size).filter(|j| mask >> j & 1 == 1).map(|j| level[j].clone()).collect();
            iso_key(n, &fam)
        })
        .collect();
    keys.sort();
    keys.dedup();
    (q(best as i128, l as i128), keys)
}

pub fn random_sets(rng: &mut ChaCha8Rng, n: u32, k: u32, density: f64) -> Vec<Set> {
    combos(n, k).into_iter().filter(|_| rng.gen_bool(density)).collect()
}

/// Families that pairwise share the fixed set `[s]`, so every pair is
/// cross-s-intersecting, with thresholds at most `s`; sometimes a single
/// unrestricted family.
pub fn random_valid_instance(rng: &mut ChaCha8Rng) -> HiltonInstance {
    let n = rng.gen_range(3..=8u32);
    let k = rng.gen_range(1..n.min(5));
    let p = GroundParams::new(n, k).unwrap();
    if rng.gen_bool(0.1) {
        let sets = random_sets(rng, n, k, 0.5);
        return HiltonInstance::new(p, [(rng.gen_range(1..=k), to_family(n, k, &sets))]).unwrap();
    }
    let s = rng.gen_range(1..=k);
    let pool: Vec<Set> = combos(n, k).into_iter().filter(|a| (1..=s).all(|e| a.contains(&e))).collect();
    let count = rng.gen_range(1..=6);
    let families: Vec<(u32, Family)> = (0..count)
        .map(|_| {
            let density = rng.gen_range(0.0..1.0);
            let sets: Vec<Set> = pool.iter().filter(|_| rng.gen_bool(density)).cloned().collect();
            (rng.gen_range(1..=s), to_family(n, k, &sets))
        })
        .collect();
    HiltonInstance::new(p, families).unwrap()
}

/// k-subsets of `[n]` as bitmasks, element `e` at bit `e - 1`.
pub fn masks(n: u32, k: u32) -> Vec<u64> {
    fn go(next: u32, n: u32, left: u32, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for e in next..=n - left + 1 {
            go(e + 1, n, left - 1, acc | 1 << (e - 1), out);
        }
    }
    let mut out = Vec::new();
    go(1, n, k, 0, &mut out);
    out
}

pub fn phi_masks(n: u32, k: u32, family: &[u64]) -> BigRational {
    let mut hist = vec![0i128; k as usize + 1];
    for a in family {
        let i = family.iter().map(|b| (a & b).count_ones()).min().unwrap_or(k);
        hist[i as usize] += 1;
    }
    hist.iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(i, c)| q(*c, binom(n as i64 - i as i64, k as i64 - i as i64) as i128))
        .fold(q(0, 1), |acc, x| acc + x)
}
