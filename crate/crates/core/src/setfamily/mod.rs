//! k-sets over `[n]` as single-word bitsets, and families of them.
//!
//! Element `e` of the ground set `[n] = {1, ..., n}` is bit `e - 1`. With
//! this encoding the numeric order of masks is exactly colexicographic order
//! on sets, so sorting masks sorts a family colexicographically.

mod canon;
pub(crate) mod codec;

pub use canon::{canonical_form, canonical_form_exhaustive, canonical_form_refined, is_canonical};
pub use codec::{parse_family, serialize_family, write_members};

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set; every set fits one `u64`.
pub const MAX_N: u32 = 64;

/// Ground-set size and uniformity of a family.
///
/// `k = 0` is allowed so that core reduction can produce the family `{∅}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundParams {
    pub n: u32,
    pub k: u32,
}

impl GroundParams {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::Range(format!("n = {n} exceeds the cap {MAX_N}")));
        }
        if k > n {
            return Err(Error::Range(format!("k = {k} exceeds n = {n}")));
        }
        Ok(Self { n, k })
    }

    /// Mask with bits `0..n` set.
    pub fn ground_mask(&self) -> u64 {
        low_bits(self.n)
    }
}

impl fmt::Display for GroundParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={}", self.n, self.k)
    }
}

pub(crate) fn low_bits(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the ground set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

/// A member of a family. The family enforces `|A| = k`.
pub type KSet = Subset;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// Builds a set from 1-based elements. Elements must lie in `1..=64`.
    pub fn from_elements(elements: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > MAX_N {
                return Err(Error::Range(format!("element {e} outside 1..={MAX_N}")));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset(mask))
    }

    /// `[c] = {1, ..., c}`.
    pub fn prefix(c: u32) -> Self {
        Subset(low_bits(c))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=MAX_N).contains(&element) && self.0 >> (element - 1) & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn meet(self, other: Subset) -> u32 {
        (self.0 & other.0).count_ones()
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> Vec<u32> {
        bits(self.0).map(|b| b + 1).collect()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Iterator over the set bit positions (0-based) of a mask, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros();
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// All k-subsets of `[n]` in colexicographic order.
pub fn ksets(n: u32, k: u32) -> impl Iterator<Item = KSet> {
    assert!(n <= MAX_N && k <= n, "ksets needs k <= n <= 64");
    let limit: u128 = 1u128 << n;
    let mut next: Option<u128> = Some((1u128 << k) - 1);
    std::iter::from_fn(move || {
        let v = next?;
        if v >= limit {
            next = None;
            return None;
        }
        next = if v == 0 {
            None
        } else {
            // Gosper's hack
            let c = v & v.wrapping_neg();
            let r = v + c;
            Some((((r ^ v) >> 2) / c) | r)
        };
        Some(Subset(v as u64))
    })
}

/// A set of distinct k-subsets of `[n]`, kept in colexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    params: GroundParams,
    members: Vec<KSet>,
}

impl Family {
    /// Validates every member and rejects duplicates.
    pub fn new(params: GroundParams, members: impl IntoIterator<Item = KSet>) -> Result<Self> {
        let mut members: Vec<KSet> = members.into_iter().collect();
        for m in &members {
            check_member(params, *m)?;
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Range(format!("duplicate member {}", w[0])));
        }
        Ok(Self { params, members })
    }

    /// Like [`Family::new`] but silently merges duplicates.
    pub fn from_members(params: GroundParams, members: impl IntoIterator<Item = KSet>) -> Result<Self> {
        let mut members: Vec<KSet> = members.into_iter().collect();
        for m in &members {
            check_member(params, *m)?;
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { params, members })
    }

    pub(crate) fn from_sorted_unchecked(params: GroundParams, members: Vec<KSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| check_member(params, *m).is_ok()));
        Self { params, members }
    }

    pub fn empty(params: GroundParams) -> Self {
        Self { params, members: Vec::new() }
    }

    /// `C([n], k)`.
    pub fn full_level(params: GroundParams) -> Self {
        Self { params, members: ksets(params.n, params.k).collect() }
    }

    /// Keeps the k-subsets of `[n]` satisfying `pred`, in colex order.
    pub fn filtered(params: GroundParams, pred: impl Fn(KSet) -> bool) -> Self {
        Self { params, members: ksets(params.n, params.k).filter(|s| pred(*s)).collect() }
    }

    pub fn params(&self) -> GroundParams {
        self.params
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn k(&self) -> u32 {
        self.params.k
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: KSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    pub fn index_of(&self, set: KSet) -> Option<usize> {
        self.members.binary_search(&set).ok()
    }

    pub fn with_member(&self, set: KSet) -> Result<Family> {
        check_member(self.params, set)?;
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search(&set) {
            members.insert(pos, set);
        }
        Ok(Family { params: self.params, members })
    }

    /// Union of two families over the same ground set.
    pub fn union(&self, other: &Family) -> Result<Family> {
        same_params(self, other)?;
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        Ok(Family { params: self.params, members })
    }

    /// Applies the ground-set permutation `perm`, where `perm[x]` is the new
    /// 0-based position of element `x + 1`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Family> {
        let n = self.params.n as usize;
        if perm.len() != n {
            return Err(Error::Range(format!("permutation has length {}, expected {n}", perm.len())));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p as usize >= n || seen >> p & 1 == 1 {
                return Err(Error::Range("not a permutation of the ground set".into()));
            }
            seen |= 1 << p;
        }
        let mut members: Vec<KSet> = self.members.iter().map(|m| Subset(map_mask(m.0, perm))).collect();
        members.sort_unstable();
        Ok(Family { params: self.params, members })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_family(self))
    }
}

pub(crate) fn map_mask(mask: u64, perm: &[u32]) -> u64 {
    bits(mask).fold(0u64, |acc, b| acc | 1 << perm[b as usize])
}

fn check_member(params: GroundParams, set: KSet) -> Result<()> {
    if set.0 & !params.ground_mask() != 0 {
        return Err(Error::Range(format!("member {set} leaves the ground set [{}]", params.n)));
    }
    if set.len() != params.k {
        return Err(Error::Range(format!("member {set} has size {}, expected {}", set.len(), params.k)));
    }
    Ok(())
}

pub(crate) fn same_params(a: &Family, b: &Family) -> Result<()> {
    if a.params != b.params {
        return Err(Error::ParamsMismatch(format!("{} vs {}", a.params, b.params)));
    }
    Ok(())
}

/// Intersection of all members.
pub fn common_core(family: &Family) -> Result<Subset> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(Subset(family.members.iter().fold(u64::MAX, |acc, m| acc & m.0)))
}

/// Every ordered pair of members, the diagonal included, meets in at least
/// `t` points.
pub fn is_t_intersecting(family: &Family, t: u32) -> bool {
    if t > family.k() {
        return family.is_empty();
    }
    let m = &family.members;
    (0..m.len()).all(|a| m[a + 1..].iter().all(|b| m[a].meet(*b) >= t))
}

pub fn is_cross_t_intersecting(a: &Family, b: &Family, t: u32) -> Result<bool> {
    same_params(a, b)?;
    Ok(a.members.iter().all(|x| b.members.iter().all(|y| x.meet(*y) >= t)))
}

/// All members contain one fixed t-set, i.e. the common core has `>= t`
/// points. The empty family is trivially so.
pub fn is_trivial_t_intersecting(family: &Family, t: u32) -> bool {
    match common_core(family) {
        Ok(core) => core.len() >= t,
        Err(_) => true,
    }
}
