//! Canonical forms under relabeling of the ground set.
//!
//! Families of equal size are ordered by comparing their colex-sorted member
//! lists lexicographically (members compared colexicographically). The
//! canonical form is the least relabeling in that order. Equivalently it is
//! the relabeling whose indicator vector over `C([n], k)`, read in colex
//! order, is lexicographically greatest; the backtracking route below works
//! with that second description because the indicator vector is fixed one
//! block at a time as labels `1, 2, ...` are handed out.

use std::cmp::Ordering;

use super::{map_mask, Family, Subset, MAX_N};

/// Exhaustive minimization over all `n!` relabelings is used up to this `n`.
pub const EXHAUSTIVE_MAX_N: u32 = 8;

/// Least relabeling of `family`.
pub fn canonical_form(family: &Family) -> Family {
    if family.n() <= EXHAUSTIVE_MAX_N {
        canonical_form_exhaustive(family)
    } else {
        canonical_form_refined(family)
    }
}

/// Minimizes over every permutation of `[n]` (Heap's algorithm). Only
/// sensible for small `n`.
pub fn canonical_form_exhaustive(family: &Family) -> Family {
    let n = family.n() as usize;
    let members = family.members();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut best: Vec<Subset> = members.to_vec();
    let mut scratch: Vec<Subset> = Vec::with_capacity(members.len());

    let mut consider = |perm: &[u32], best: &mut Vec<Subset>| {
        scratch.clear();
        scratch.extend(members.iter().map(|m| Subset(map_mask(m.0, perm))));
        scratch.sort_unstable();
        if scratch < *best {
            best.clone_from(&scratch);
        }
    };

    consider(&perm, &mut best);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm, &mut best);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Family::from_sorted_unchecked(family.params(), best)
}

/// Same contract as [`canonical_form_exhaustive`], computed by assigning
/// labels in increasing order and keeping only branches whose partial
/// indicator vector can still be maximal. Interchangeable elements (those
/// whose transposition fixes the family) are branched on once.
pub fn canonical_form_refined(family: &Family) -> Family {
    if family.is_empty() {
        return family.clone();
    }
    let mut search = Labeler::new(family);
    search.run_best();
    let perm = search.best_perm.expect("a nonempty family has a best labeling");
    let mut members: Vec<Subset> = family.members().iter().map(|m| Subset(map_mask(m.0, &perm))).collect();
    members.sort_unstable();
    Family::from_sorted_unchecked(family.params(), members)
}

/// `canonical_form(family) == family`, decided without building the form:
/// the search stops at the first relabeling that beats the identity.
pub fn is_canonical(family: &Family) -> bool {
    if family.is_empty() {
        return true;
    }
    let k = family.k();
    if k == 0 {
        return true;
    }
    if family.members()[0] != Subset::prefix(k) {
        return false;
    }
    let mut search = Labeler::new(family);
    search.identity_is_best()
}

const UNASSIGNED: u32 = u32::MAX;

struct Labeler<'a> {
    members: &'a [Subset],
    n: u32,
    k: u32,
    /// `class[x]` is the smallest element interchangeable with `x`.
    class: Vec<u32>,
    perm: Vec<u32>,
    assigned: u64,
    blocks: Vec<Vec<u64>>,
    best_blocks: Option<Vec<Vec<u64>>>,
    best_perm: Option<Vec<u32>>,
    /// Blocks of the identity labeling, for the canonicity test.
    reference: Vec<Vec<u64>>,
}

impl<'a> Labeler<'a> {
    fn new(family: &'a Family) -> Self {
        let n = family.n();
        debug_assert!(n <= MAX_N);
        Labeler {
            members: family.members(),
            n,
            k: family.k(),
            class: twin_classes(family),
            perm: vec![UNASSIGNED; n as usize],
            assigned: 0,
            blocks: Vec::with_capacity(n as usize),
            best_blocks: None,
            best_perm: None,
            reference: Vec::new(),
        }
    }

    /// Images of the members whose new maximum label would be `label` if `x`
    /// received it, as masks over the labels below `label`, sorted.
    fn block(&self, x: u32) -> Vec<u64> {
        let bit = 1u64 << x;
        let mut out: Vec<u64> = self
            .members
            .iter()
            .filter(|m| m.0 & bit != 0 && (m.0 & !bit) & !self.assigned == 0)
            .map(|m| map_mask(m.0 & !bit, &self.perm))
            .collect();
        out.sort_unstable();
        out
    }

    /// Unassigned elements worth branching on: one per class of
    /// interchangeable elements, and while the first k labels are being
    /// placed, only elements that keep the labeled set inside some member
    /// (the top relabeling always maps a member onto `[k]`).
    fn candidates(&self, depth: u32) -> Vec<u32> {
        let mut seen_class = 0u64;
        let mut out = Vec::new();
        for x in 0..self.n {
            if self.assigned >> x & 1 == 1 {
                continue;
            }
            let cls = self.class[x as usize];
            if seen_class >> cls & 1 == 1 {
                continue;
            }
            if depth < self.k {
                let grown = self.assigned | 1 << x;
                if !self.members.iter().any(|m| grown & !m.0 == 0) {
                    continue;
                }
            }
            seen_class |= 1 << cls;
            out.push(x);
        }
        out
    }

    fn assign(&mut self, x: u32, depth: u32, block: Vec<u64>) {
        self.perm[x as usize] = depth;
        self.assigned |= 1 << x;
        self.blocks.push(block);
    }

    fn unassign(&mut self, x: u32) {
        self.perm[x as usize] = UNASSIGNED;
        self.assigned &= !(1 << x);
        self.blocks.pop();
    }

    fn run_best(&mut self) {
        self.descend_best(0);
    }

    fn descend_best(&mut self, depth: u32) {
        if depth == self.n {
            let better = match &self.best_blocks {
                None => true,
                Some(best) => cmp_blocks(&self.blocks, best) == Ordering::Greater,
            };
            if better {
                self.best_blocks = Some(self.blocks.clone());
                self.best_perm = Some(self.perm.clone());
            }
            return;
        }
        let mut options: Vec<(u32, Vec<u64>)> = Vec::new();
        for x in self.candidates(depth) {
            let block = self.block(x);
            match options.first().map(|(_, top)| cmp_block(&block, top)) {
                None | Some(Ordering::Equal) => options.push((x, block)),
                Some(Ordering::Greater) => {
                    options.clear();
                    options.push((x, block));
                }
                Some(Ordering::Less) => {}
            }
        }
        for (x, block) in options {
            if let Some(best) = &self.best_blocks {
                let d = depth as usize;
                let rel = match cmp_blocks(&self.blocks, &best[..d]) {
                    Ordering::Equal => cmp_block(&block, &best[d]),
                    other => other,
                };
                if rel == Ordering::Less {
                    continue;
                }
            }
            self.assign(x, depth, block);
            self.descend_best(depth + 1);
            self.unassign(x);
        }
    }

    fn identity_is_best(&mut self) -> bool {
        self.reference = vec![Vec::new(); self.n as usize];
        for m in self.members {
            let top = 63 - m.0.leading_zeros();
            self.reference[top as usize].push(m.0 & !(1u64 << top));
        }
        for block in &mut self.reference {
            block.sort_unstable();
        }
        self.descend_check(0)
    }

    /// False as soon as some relabeling extending the current prefix beats
    /// the identity.
    fn descend_check(&mut self, depth: u32) -> bool {
        if depth == self.n {
            return true;
        }
        for x in self.candidates(depth) {
            let block = self.block(x);
            match cmp_block(&block, &self.reference[depth as usize]) {
                Ordering::Greater => return false,
                Ordering::Less => continue,
                Ordering::Equal => {
                    self.assign(x, depth, block);
                    let ok = self.descend_check(depth + 1);
                    self.unassign(x);
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Orders two blocks by the indicator vectors they encode: `Greater` means
/// `a` is the better (lexicographically larger) block.
fn cmp_block(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            // the smaller set is present earlier in colex order
            return y.cmp(x);
        }
    }
    a.len().cmp(&b.len())
}

fn cmp_blocks(a: &[Vec<u64>], b: &[Vec<u64>]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| cmp_block(x, y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Partition of the ground set into classes of elements whose pairwise
/// transpositions are automorphisms of the family. `class[x]` is the least
/// element of `x`'s class.
fn twin_classes(family: &Family) -> Vec<u32> {
    let n = family.n();
    let members = family.members();
    let mut class: Vec<u32> = (0..n).collect();
    for x in 0..n {
        if class[x as usize] != x {
            continue;
        }
        for y in x + 1..n {
            if class[y as usize] != y {
                continue;
            }
            if transposition_fixes(members, x, y) {
                class[y as usize] = x;
            }
        }
    }
    class
}

fn transposition_fixes(members: &[Subset], x: u32, y: u32) -> bool {
    let (bx, by) = (1u64 << x, 1u64 << y);
    members.iter().all(|m| {
        let hx = m.0 & bx != 0;
        let hy = m.0 & by != 0;
        if hx == hy {
            return true;
        }
        let swapped = m.0 ^ bx ^ by;
        members.binary_search(&Subset(swapped)).is_ok()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfamily::{ksets, GroundParams};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fam(n: u32, k: u32, sets: &[&[u32]]) -> Family {
        let p = GroundParams::new(n, k).unwrap();
        Family::new(p, sets.iter().map(|s| Subset::from_elements(s).unwrap())).unwrap()
    }

    fn random_family(rng: &mut ChaCha8Rng, n: u32, k: u32, density: f64) -> Family {
        let p = GroundParams::new(n, k).unwrap();
        Family::new(p, ksets(n, k).filter(|_| rng.gen_bool(density))).unwrap()
    }

    fn random_perm(rng: &mut ChaCha8Rng, n: u32) -> Vec<u32> {
        let mut p: Vec<u32> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn relabeling_examples() {
        let triangle_high = fam(4, 2, &[&[2, 3], &[2, 4], &[3, 4]]);
        let triangle_low = fam(4, 2, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(canonical_form(&triangle_high), triangle_low);
        assert_eq!(canonical_form_refined(&triangle_high), triangle_low);

        let p = GroundParams::new(5, 2).unwrap();
        let star5 = Family::filtered(p, |s| s.contains(5));
        let star1 = Family::filtered(p, |s| s.contains(1));
        assert_eq!(canonical_form(&star5), star1);
        assert!(is_canonical(&star1));
        assert!(!is_canonical(&star5));
    }

    #[test]
    fn empty_and_full_are_fixed() {
        let p = GroundParams::new(9, 3).unwrap();
        assert_eq!(canonical_form(&Family::empty(p)), Family::empty(p));
        assert_eq!(canonical_form(&Family::full_level(p)), Family::full_level(p));
        assert!(is_canonical(&Family::full_level(p)));
    }

    #[test]
    fn refined_matches_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let k = rng.gen_range(0..=n);
            let density = rng.gen_range(0.05..0.95);
            let f = random_family(&mut rng, n, k, density);
            let brute = canonical_form_exhaustive(&f);
            assert_eq!(canonical_form_refined(&f), brute, "family {f}");
            assert_eq!(is_canonical(&f), brute == f, "family {f}");
            assert!(is_canonical(&brute));
        }
    }

    #[test]
    fn invariant_under_random_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, k) in [(6, 3), (8, 3), (10, 4), (12, 3)] {
            let f = random_family(&mut rng, n, k, 0.3);
            let canon = canonical_form(&f);
            assert_eq!(canonical_form(&canon), canon);
            for _ in 0..100 {
                let g = f.relabel(&random_perm(&mut rng, n)).unwrap();
                assert_eq!(canonical_form(&g), canon);
            }
        }
    }

    #[test]
    fn distinguishes_non_isomorphic_families() {
        // a path and a star with three edges each
        let path = fam(5, 2, &[&[1, 2], &[2, 3], &[3, 4]]);
        let star = fam(5, 2, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert_ne!(canonical_form(&path), canonical_form(&star));
        assert_ne!(canonical_form_refined(&path), canonical_form_refined(&star));
    }

    #[test]
    fn cmp_block_orders_by_indicator() {
        assert_eq!(cmp_block(&[1, 2], &[1, 4]), Ordering::Greater);
        assert_eq!(cmp_block(&[1], &[1, 4]), Ordering::Less);
        assert_eq!(cmp_block(&[], &[]), Ordering::Equal);
    }
}
