use rustc_hash::FxHashSet;

use super::{level_size, sort_witnesses, Incumbent, ScaledWeights, SearchMode, SearchResult};
use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::setfamily::{canonical_form, ksets, Family, GroundParams, KSet};

/// Largest level the naive search will enumerate (`2^24` families).
pub const NAIVE_MAX_SETS: u64 = 24;

pub fn max_phi_naive(n: u32, k: u32) -> Result<SearchResult> {
    max_phi_naive_logged(n, k, &mut |_| {})
}

/// Tries every subfamily of `C([n], k)`, the empty one included.
pub fn max_phi_naive_logged(n: u32, k: u32, log: &mut dyn FnMut(&Incumbent)) -> Result<SearchResult> {
    let params = GroundParams::new(n, k)?;
    let size = level_size(params).filter(|s| *s <= NAIVE_MAX_SETS).ok_or_else(|| {
        Error::Budget { members: binomial(n as u64, k as i64).to_string(), limit: NAIVE_MAX_SETS }
    })?;
    let level: Vec<KSet> = ksets(n, k).collect();
    let weights = ScaledWeights::new(params)?;

    // below[a][t]: members b with |a ∩ b| < t, so i(a) is the largest t
    // whose mask misses the family
    let below: Vec<Vec<u32>> = level
        .iter()
        .map(|a| {
            (0..=k)
                .map(|t| {
                    level
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| a.meet(**b) < t)
                        .fold(0u32, |acc, (j, _)| acc | 1 << j)
                })
                .collect()
        })
        .collect();

    let family_of = |mask: u32| {
        let members: Vec<KSet> = (0..size as u32).filter(|j| mask >> j & 1 == 1).map(|j| level[j as usize]).collect();
        Family::new(params, members).expect("subsets of the level are valid families")
    };

    let mut best = 0u128;
    let mut maximizers: Vec<u32> = vec![0];
    let total = 1u64 << size;
    for mask in 1..total as u32 {
        let mut phi = 0u128;
        let mut rest = mask;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let row = &below[a];
            let mut t = k as usize;
            while mask & row[t] != 0 {
                t -= 1;
            }
            phi += weights.w[t];
        }
        if phi > best {
            best = phi;
            maximizers.clear();
            maximizers.push(mask);
            let value = weights.to_rational(phi);
            log(&Incumbent { nodes: mask as u64 + 1, phi: &value, family: &family_of(mask) });
        } else if phi == best {
            maximizers.push(mask);
        }
    }

    let mut seen = FxHashSet::default();
    let mut witnesses = Vec::new();
    for mask in maximizers {
        let canon = canonical_form(&family_of(mask));
        if seen.insert(canon.members().to_vec()) {
            witnesses.push(canon);
        }
    }
    let witnesses_overflow = sort_witnesses(&mut witnesses);
    Ok(SearchResult {
        params,
        mode: SearchMode::Naive,
        max_phi: weights.to_rational(best),
        witnesses,
        witnesses_overflow,
        nodes_explored: total,
        complete: true,
    })
}
