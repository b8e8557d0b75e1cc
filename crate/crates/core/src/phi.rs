//! The localized sum `Φ_{n,k}(F) = Σ_{A∈F} 1 / C(n - i_F(A), k - i_F(A))`,
//! where `i_F(A)` is the least `|A ∩ B|` over all `B ∈ F` (including `A`).
//!
//! Everything downstream (layers, Borg's two-part sum, the telescoped form)
//! is derived from one vector of `i_F` values per call.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exact::{binomial_int, fraction, from_int, ratio, render, weight, ExactRational};
use crate::setfamily::{bits, common_core, low_bits, Family, GroundParams, KSet, Subset};

/// Above this many members per `2^k` subsets, superset counting beats the
/// pairwise scan.
const COUNTING_CROSSOVER: usize = 32;

/// `i_F(A)` for every member, in the family's colex order.
pub fn min_intersections(family: &Family) -> Vec<u32> {
    let k = family.k();
    if k <= 16 && family.len() > COUNTING_CROSSOVER << k {
        min_intersections_by_counting(family)
    } else {
        min_intersections_pairwise(family)
    }
}

/// Quadratic scan over all pairs.
pub fn min_intersections_pairwise(family: &Family) -> Vec<u32> {
    let m = family.members();
    let mut out = vec![family.k(); m.len()];
    for a in 0..m.len() {
        for b in a + 1..m.len() {
            let meet = m[a].meet(m[b]);
            out[a] = out[a].min(meet);
            out[b] = out[b].min(meet);
        }
    }
    out
}

/// Counts, for every set `T` lying inside some member, how many members
/// contain `T`; Möbius inversion over the subsets of `A` then gives the
/// number of members meeting `A` in exactly each subset. Costs about
/// `|F| k 2^k` instead of `|F|^2`.
pub fn min_intersections_by_counting(family: &Family) -> Vec<u32> {
    let k = family.k() as usize;
    assert!(k <= 16, "superset counting needs k <= 16");
    let size = 1usize << k;
    let mut supersets: FxHashMap<u64, i64> = FxHashMap::default();
    let mut elems = Vec::with_capacity(k);
    for m in family.members() {
        elems.clear();
        elems.extend(bits(m.0));
        for idx in 0..size {
            *supersets.entry(submask(&elems, idx)).or_insert(0) += 1;
        }
    }
    let mut exact = vec![0i64; size];
    family
        .members()
        .iter()
        .map(|m| {
            elems.clear();
            elems.extend(bits(m.0));
            for (idx, slot) in exact.iter_mut().enumerate() {
                *slot = supersets[&submask(&elems, idx)];
            }
            for b in 0..k {
                let bit = 1 << b;
                for idx in 0..size {
                    if idx & bit == 0 {
                        exact[idx] -= exact[idx | bit];
                    }
                }
            }
            (0..size)
                .filter(|&idx| exact[idx] > 0)
                .map(|idx| idx.count_ones())
                .min()
                .expect("A meets itself")
        })
        .collect()
}

fn submask(elems: &[u32], idx: usize) -> u64 {
    elems
        .iter()
        .enumerate()
        .filter(|(j, _)| idx >> j & 1 == 1)
        .fold(0u64, |acc, (_, e)| acc | 1 << e)
}

/// `i_F(A)`; defined only for members of `F`.
pub fn min_intersection(family: &Family, set: KSet) -> Result<u32> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !family.contains(set) {
        return Err(Error::NotAMember);
    }
    Ok(family.members().iter().map(|b| set.meet(*b)).min().expect("nonempty"))
}

/// `|G_t|` for `t = 0..=k`, where `G_t = {A ∈ F : i_F(A) >= t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerProfile {
    pub sizes: Vec<u64>,
}

impl LayerProfile {
    fn from_mins(k: u32, mins: &[u32]) -> Self {
        let mut sizes = vec![0u64; k as usize + 1];
        for &i in mins {
            for slot in &mut sizes[..=i as usize] {
                *slot += 1;
            }
        }
        LayerProfile { sizes }
    }

    /// `|G_t|`, zero past `k`.
    pub fn size(&self, t: u32) -> u64 {
        self.sizes.get(t as usize).copied().unwrap_or(0)
    }
}

/// Layer sizes; all zero for the empty family.
pub fn layer_profile(family: &Family) -> LayerProfile {
    LayerProfile::from_mins(family.k(), &min_intersections(family))
}

/// Number of members with each value of `i_F`, indexed `0..=k`.
fn histogram(k: u32, mins: &[u32]) -> Vec<u64> {
    let mut counts = vec![0u64; k as usize + 1];
    for &i in mins {
        counts[i as usize] += 1;
    }
    counts
}

fn phi_from_histogram(params: GroundParams, counts: &[u64]) -> ExactRational {
    let (n, k) = (params.n as i64, params.k as i64);
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(i, c)| weight(n, k, i as i64).expect("0 <= i <= k <= n") * from_int(*c))
        .fold(ExactRational::zero(), |acc, x| acc + x)
}

/// `Φ_{n,k}(F)` summed member by member. The empty family gives 0.
pub fn phi_direct(family: &Family) -> ExactRational {
    let mins = min_intersections(family);
    phi_from_histogram(family.params(), &histogram(family.k(), &mins))
}

/// `|F|/C(n,k) + Σ_{t=1}^{k-1} (n-k)/(n-t+1) · |G_t|/C(n-t,k-t)`, valid for
/// families with empty common core.
///
/// With `k = 0` the only such family is `{∅}` and the expression reduces to
/// `|F| = 1`.
pub fn phi_telescoped(family: &Family) -> Result<ExactRational> {
    let core = common_core(family)?;
    if !core.is_empty() {
        return Err(Error::NonemptyCore(core.len() as usize));
    }
    Ok(telescoped_from_layers(family.params(), &layer_profile(family)))
}

pub(crate) fn telescoped_from_layers(params: GroundParams, layers: &LayerProfile) -> ExactRational {
    let (n, k) = (params.n as i64, params.k as i64);
    let mut acc = ratio(BigInt::from(layers.size(0)), binomial_int(n, k));
    for t in 1..k {
        let g = layers.size(t as u32);
        if g == 0 {
            continue;
        }
        let factor = ratio(n - k, n - t + 1);
        acc += factor * ratio(BigInt::from(g), binomial_int(n - t, k - t));
    }
    acc
}

/// A family with its common core stripped and the rest relabeled onto
/// `[n - c]`, order preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreReduction {
    pub core: Subset,
    pub family: Family,
}

impl CoreReduction {
    pub fn params(&self) -> GroundParams {
        self.family.params()
    }
}

pub fn reduce_core(family: &Family) -> Result<CoreReduction> {
    let core = common_core(family)?;
    let params = family.params();
    let c = core.len();
    let reduced = GroundParams::new(params.n - c, params.k - c)?;
    let keep: Vec<u32> = bits(params.ground_mask() & !core.0).collect();
    let members: Vec<KSet> = family
        .members()
        .iter()
        .map(|m| {
            let packed = keep
                .iter()
                .enumerate()
                .filter(|(_, e)| m.0 >> **e & 1 == 1)
                .fold(0u64, |acc, (j, _)| acc | 1 << j);
            Subset(packed)
        })
        .collect();
    debug_assert!(members.iter().all(|m| m.0 & !low_bits(reduced.n) == 0));
    Ok(CoreReduction { core, family: Family::from_members(reduced, members)? })
}

/// Borg's two-part sum `|A^{t,+}|/C(n-t,k-t) + |A^{t,-}|/C(n,k)`.
///
/// `A^{t,+}` only quantifies over `B ≠ A`, but `|A ∩ A| = k >= t`, so it is
/// the layer `G_t`.
pub fn borg_sum(family: &Family, t: u32) -> Result<ExactRational> {
    let k = family.k();
    if t < 1 || t > k {
        return Err(Error::Range(format!("Borg sum needs 1 <= t <= k, got t={t} k={k}")));
    }
    let (n, k) = (family.n() as i64, k as i64);
    let plus = layer_profile(family).size(t);
    let minus = family.len() as u64 - plus;
    Ok(ratio(BigInt::from(plus), binomial_int(n - t as i64, k - t as i64))
        + ratio(BigInt::from(minus), binomial_int(n, k)))
}

/// True when the family is a c-star for some `c`: after removing the core it
/// is the full level.
pub fn is_star(family: &Family) -> bool {
    match reduce_core(family) {
        Ok(red) => {
            let p = red.params();
            BigInt::from(red.family.len()) == binomial_int(p.n as i64, p.k as i64)
        }
        Err(_) => false,
    }
}

/// Everything `phi` reports about a family.
#[derive(Debug, Clone)]
pub struct PhiReport {
    pub params: GroundParams,
    pub phi: ExactRational,
    /// `(A, i_F(A))` in colex order.
    pub members: Vec<(KSet, u32)>,
    pub layers: LayerProfile,
    /// `None` for the empty family.
    pub reduction: Option<CoreReduction>,
}

impl PhiReport {
    pub fn new(family: &Family) -> Self {
        let mins = min_intersections(family);
        let params = family.params();
        PhiReport {
            params,
            phi: phi_from_histogram(params, &histogram(params.k, &mins)),
            members: family.members().iter().copied().zip(mins.iter().copied()).collect(),
            layers: LayerProfile::from_mins(params.k, &mins),
            reduction: reduce_core(family).ok(),
        }
    }
}

impl fmt::Display for PhiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let _ = writeln!(out, "phi report {} members={}", self.params, self.members.len());
        let _ = writeln!(out, "phi = {}", render(&self.phi));
        match &self.reduction {
            Some(red) => {
                let _ = writeln!(out, "core = {} (c={})", red.core, red.core.len());
                let p = red.params();
                let _ = writeln!(out, "reduced n'={} k'={}", p.n, p.k);
            }
            None => {
                let _ = writeln!(out, "core = undefined (empty family)");
                let _ = writeln!(out, "reduced -");
            }
        }
        let _ = writeln!(out, "layers");
        let _ = writeln!(out, "t\t|G_t|");
        for (t, g) in self.layers.sizes.iter().enumerate() {
            let _ = writeln!(out, "{t}\t{g}");
        }
        let _ = writeln!(out, "members");
        for (m, i) in &self.members {
            let elems: Vec<String> = m.elements().iter().map(u32::to_string).collect();
            let body = if elems.is_empty() { "-".to_string() } else { elems.join(" ") };
            let w = weight(self.params.n as i64, self.params.k as i64, *i as i64).expect("valid member");
            let _ = writeln!(out, "{body}\ti={i}\tw={}", fraction(&w));
        }
        f.write_str(&out)
    }
}
