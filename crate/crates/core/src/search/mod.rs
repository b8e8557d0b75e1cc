//! Exhaustive maximization of Φ over all families `F ⊆ C([n], k)`.
//!
//! [`max_phi_naive`] walks every subset of the level and is the oracle.
//! [`max_phi_canonical`] is an orderly generator (each isomorphism class is
//! visited once, as its canonical form) with branch-and-bound pruning.

mod canonical;
mod naive;
mod scan;

pub use canonical::{max_phi_canonical, max_phi_canonical_logged};
pub use naive::{max_phi_naive, max_phi_naive_logged, NAIVE_MAX_SETS};
pub use scan::{scan_counterexamples, ScanRow, ScanTable};

use std::fmt;

use num_traits::One;

use crate::bounds::thresholds;
use crate::error::{Error, Result};
use crate::exact::{binomial, render, weight_lcm, ExactRational};
use crate::phi::phi_direct;
use crate::setfamily::{serialize_family, Family, GroundParams};

/// Most maximizers a [`SearchResult`] keeps.
pub const WITNESS_CAP: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Naive,
    Canonical,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Naive => "naive",
            SearchMode::Canonical => "canonical",
        })
    }
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(SearchMode::Naive),
            "canonical" => Ok(SearchMode::Canonical),
            _ => Err(Error::Spec(format!("unknown search mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub params: GroundParams,
    pub mode: SearchMode,
    /// Best value found; the true maximum only when `complete`.
    pub max_phi: ExactRational,
    /// Canonical forms attaining `max_phi`, sorted, at most [`WITNESS_CAP`].
    pub witnesses: Vec<Family>,
    pub witnesses_overflow: bool,
    pub nodes_explored: u64,
    pub complete: bool,
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "search result {} mode={}", self.params, self.mode)?;
        writeln!(f, "status {}", if self.complete { "complete" } else { "budget exhausted" })?;
        writeln!(f, "nodes {}", self.nodes_explored)?;
        writeln!(f, "max phi = {}", render(&self.max_phi))?;
        let more = if self.witnesses_overflow { " (capped, more exist)" } else { "" };
        writeln!(f, "witnesses {}{more}", self.witnesses.len())?;
        for (i, w) in self.witnesses.iter().enumerate() {
            writeln!(f, "witness {}", i + 1)?;
            f.write_str(&serialize_family(w))?;
        }
        Ok(())
    }
}

/// An improved best-so-far, as passed to search loggers.
pub struct Incumbent<'a> {
    pub nodes: u64,
    pub phi: &'a ExactRational,
    pub family: &'a Family,
}

impl fmt::Display for Incumbent<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "incumbent nodes={} phi = {}", self.nodes, render(self.phi))?;
        f.write_str(&serialize_family(self.family))
    }
}

/// Weights `1/C(n-i, k-i)` as integers over the common denominator `lcm`.
#[derive(Debug, Clone)]
pub(crate) struct ScaledWeights {
    pub lcm: u128,
    pub w: Vec<u128>,
}

impl ScaledWeights {
    pub fn new(params: GroundParams) -> Result<Self> {
        let (n, k) = (params.n as u64, params.k as u64);
        let lcm = weight_lcm(n, k).ok_or_else(|| Error::Overflow(format!("weight denominators for {params}")))?;
        let w = (0..=k)
            .map(|i| {
                let c: u128 = binomial(n - i, (k - i) as i64).try_into().expect("binomial divides the lcm");
                lcm / c
            })
            .collect();
        Ok(ScaledWeights { lcm, w })
    }

    pub fn to_rational(&self, v: u128) -> ExactRational {
        ExactRational::new(v.into(), self.lcm.into())
    }
}

/// Level size `C(n, k)` as a machine integer, when it is one.
pub(crate) fn level_size(params: GroundParams) -> Option<u64> {
    binomial(params.n as u64, params.k as i64).try_into().ok()
}

pub(crate) fn sort_witnesses(witnesses: &mut Vec<Family>) -> bool {
    witnesses.sort_by(|a, b| a.members().cmp(b.members()));
    witnesses.dedup();
    let overflow = witnesses.len() > WITNESS_CAP;
    witnesses.truncate(WITNESS_CAP);
    overflow
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjectureVerdict {
    /// The complete search found no family with Φ > 1.
    Confirmed,
    /// A family with Φ > 1, re-verified with the direct formula.
    Refuted(Family),
    /// Budget ran out before any family with Φ > 1 turned up.
    Inconclusive,
}

impl fmt::Display for ConjectureVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjectureVerdict::Confirmed => "CONFIRMED",
            ConjectureVerdict::Refuted(_) => "REFUTED",
            ConjectureVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub params: GroundParams,
    pub threshold: u64,
    pub in_range: bool,
    pub verdict: ConjectureVerdict,
    pub search: SearchResult,
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conjecture {} threshold={}", self.params, self.threshold)?;
        if !self.in_range {
            writeln!(f, "outside conjecture range (n < {})", self.threshold)?;
        }
        writeln!(f, "verdict {}", self.verdict)?;
        if let ConjectureVerdict::Refuted(w) = &self.verdict {
            writeln!(f, "witness phi = {}", render(&phi_direct(w)))?;
            f.write_str(&serialize_family(w))?;
        }
        write!(f, "{}", self.search)
    }
}

/// Runs the canonical search and classifies the maximum against 1. Below
/// the conjectured threshold the search still runs; the report says so.
pub fn verify_conjecture(n: u32, k: u32, budget: u64, threads: usize) -> Result<ConjectureReport> {
    verify_conjecture_logged(n, k, budget, threads, &|_| {})
}

pub fn verify_conjecture_logged(
    n: u32,
    k: u32,
    budget: u64,
    threads: usize,
    log: &(dyn Fn(&Incumbent) + Sync),
) -> Result<ConjectureReport> {
    let params = GroundParams::new(n, k)?;
    if k < 1 {
        return Err(Error::Range("the conjecture concerns k >= 1".into()));
    }
    let threshold = thresholds(k as u64, 0)?.conjectured;
    let search = max_phi_canonical_logged(n, k, budget, threads, log)?;
    let one = ExactRational::one();
    let refuting = search.witnesses.iter().find(|w| phi_direct(w) > one).cloned();
    let verdict = match refuting {
        Some(w) => ConjectureVerdict::Refuted(w),
        None if search.complete => ConjectureVerdict::Confirmed,
        None => ConjectureVerdict::Inconclusive,
    };
    Ok(ConjectureReport { params, threshold, in_range: n as u64 >= threshold, verdict, search })
}
