use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{level_size, sort_witnesses, Incumbent, ScaledWeights, SearchMode, SearchResult, WITNESS_CAP};
use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::setfamily::{is_canonical, ksets, Family, GroundParams, KSet};

/// Largest level the canonical search will index.
const MAX_LEVEL: u64 = 1 << 20;

/// How often a worker re-reads the shared incumbent.
const REFRESH_EVERY: u64 = 256;

pub fn max_phi_canonical(n: u32, k: u32, budget: u64, threads: usize) -> Result<SearchResult> {
    max_phi_canonical_logged(n, k, budget, threads, &|_| {})
}

/// Orderly generation: a node is a canonical family listed in colex order,
/// its children add one set colex-after its last member and are kept only
/// if canonical. Every isomorphism class appears exactly once, because
/// dropping the colex-last member of a canonical family leaves a canonical
/// family.
///
/// A child with `R` sets still addable after it is skipped when
/// `Φ(child) + R/(n-k+1)` falls strictly below the incumbent, so tied
/// maximizers all survive. `budget` caps the number of visited families.
pub fn max_phi_canonical_logged(
    n: u32,
    k: u32,
    budget: u64,
    threads: usize,
    log: &(dyn Fn(&Incumbent) + Sync),
) -> Result<SearchResult> {
    let params = GroundParams::new(n, k)?;
    level_size(params).filter(|s| *s <= MAX_LEVEL).ok_or_else(|| Error::Budget {
        members: binomial(n as u64, k as i64).to_string(),
        limit: MAX_LEVEL,
    })?;
    let weights = ScaledWeights::new(params)?;
    let step = if k == 0 { 0 } else { weights.w[k as usize - 1] };
    let search = Search {
        params,
        level: ksets(n, k).collect(),
        weights,
        step,
        budget,
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        shared: Mutex::new(Shared { best: 0, witnesses: Vec::new(), overflow: false }),
        log,
    };

    let root = Node { idx: Vec::new(), sets: Vec::new(), ivals: Vec::new(), phi: 0 };
    let mut best = 0;
    let mut tasks = Vec::new();
    if search.enter(&root, &mut best) {
        for first in search.children(&root, &mut best) {
            if !search.enter(&first, &mut best) {
                break;
            }
            tasks.extend(search.children(&first, &mut best));
        }
    }

    let run = |task: &Node| {
        let mut best = search.shared.lock().expect("incumbent lock").best;
        search.visit(task, &mut best);
    };
    if threads == 1 {
        tasks.iter().for_each(run);
    } else {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if threads > 1 {
            builder = builder.num_threads(threads);
        }
        let pool = builder.build().map_err(|e| Error::Range(format!("thread pool: {e}")))?;
        pool.install(|| tasks.par_iter().for_each(run));
    }

    let complete = !search.exhausted.load(Ordering::SeqCst);
    let nodes = search.nodes.load(Ordering::SeqCst).min(budget);
    let shared = search.shared.into_inner().expect("incumbent lock");
    let mut witnesses = shared.witnesses;
    let overflow = sort_witnesses(&mut witnesses) || shared.overflow;
    Ok(SearchResult {
        params,
        mode: SearchMode::Canonical,
        max_phi: search.weights.to_rational(shared.best),
        witnesses,
        witnesses_overflow: overflow,
        nodes_explored: nodes,
        complete,
    })
}

struct Shared {
    best: u128,
    witnesses: Vec<Family>,
    overflow: bool,
}

struct Node {
    /// Positions in the colex-ordered level, increasing.
    idx: Vec<u32>,
    sets: Vec<KSet>,
    ivals: Vec<u32>,
    phi: u128,
}

struct Search<'a> {
    params: GroundParams,
    level: Vec<KSet>,
    weights: ScaledWeights,
    /// Largest weight a newly added member can carry.
    step: u128,
    budget: u64,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    shared: Mutex<Shared>,
    log: &'a (dyn Fn(&Incumbent) + Sync),
}

impl Search<'_> {
    /// Counts the node and offers it as a maximizer. False once the budget
    /// is gone.
    fn enter(&self, node: &Node, best: &mut u128) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if count > self.budget {
            self.exhausted.store(true, Ordering::SeqCst);
            return false;
        }
        if node.phi >= *best {
            self.record(node, count, best);
        } else if count.is_multiple_of(REFRESH_EVERY) {
            *best = (*best).max(self.shared.lock().expect("incumbent lock").best);
        }
        true
    }

    fn record(&self, node: &Node, count: u64, best: &mut u128) {
        let mut shared = self.shared.lock().expect("incumbent lock");
        let family = || Family::from_sorted_unchecked(self.params, node.sets.clone());
        if node.phi > shared.best || (shared.best == 0 && shared.witnesses.is_empty()) {
            shared.best = node.phi;
            shared.witnesses.clear();
            shared.overflow = false;
            let f = family();
            (self.log)(&Incumbent { nodes: count, phi: &self.weights.to_rational(node.phi), family: &f });
            shared.witnesses.push(f);
        } else if node.phi == shared.best {
            if shared.witnesses.len() < WITNESS_CAP {
                shared.witnesses.push(family());
            } else {
                shared.overflow = true;
            }
        }
        *best = shared.best;
    }

    fn visit(&self, node: &Node, best: &mut u128) -> bool {
        if !self.enter(node, best) {
            return false;
        }
        let start = node.idx.last().map_or(0, |i| i + 1);
        for j in start..self.level.len() as u32 {
            if let Some(child) = self.child(node, j, *best) {
                if !self.visit(&child, best) {
                    return false;
                }
            }
        }
        true
    }

    fn children(&self, node: &Node, best: &mut u128) -> Vec<Node> {
        let start = node.idx.last().map_or(0, |i| i + 1);
        (start..self.level.len() as u32).filter_map(|j| self.child(node, j, *best)).collect()
    }

    /// The node extended by level set `j`, unless pruned or not canonical.
    fn child(&self, node: &Node, j: u32, best: u128) -> Option<Node> {
        let b = self.level[j as usize];
        let k = self.params.k;
        let w = &self.weights.w;
        let mut ib = k;
        let mut phi = 0u128;
        for (a, ia) in node.sets.iter().zip(&node.ivals) {
            let m = a.meet(b);
            ib = ib.min(m);
            phi += w[(*ia).min(m) as usize];
        }
        phi += w[ib as usize];
        let remaining = (self.level.len() as u32 - 1 - j) as u128;
        if phi + remaining * self.step < best {
            return None;
        }
        let mut sets = node.sets.clone();
        sets.push(b);
        let family = Family::from_sorted_unchecked(self.params, sets);
        if !is_canonical(&family) {
            return None;
        }
        let mut ivals: Vec<u32> = node.sets.iter().zip(&node.ivals).map(|(a, ia)| (*ia).min(a.meet(b))).collect();
        ivals.push(ib);
        let mut idx = node.idx.clone();
        idx.push(j);
        let sets = family.members().to_vec();
        Some(Node { idx, sets, ivals, phi })
    }
}
