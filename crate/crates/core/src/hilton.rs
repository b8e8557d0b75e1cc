//! Checker for the multi-threshold Hilton-type bound: families `F_{i,j}`
//! (`1 <= i <= k`, `1 <= j <= m_i`) such that any two distinct ones are
//! cross-`max(i, i')`-intersecting satisfy
//! `Σ |F_{i,j}| <= max_s M_s·C(n-s, k-s)` with `M_s = max(1, m_1 + ... + m_s)`.

use std::fmt;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::bounds::thresholds;
use crate::error::{Error, Result};
use crate::exact::binomial_int;
use crate::phi::min_intersections;
use crate::setfamily::codec::{is_skippable, parse_header, parse_member};
use crate::setfamily::{is_cross_t_intersecting, is_t_intersecting, Family, GroundParams, KSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedFamily {
    /// Threshold index, `1..=k`.
    pub i: u32,
    /// Copy index within threshold `i`, from 1.
    pub j: u32,
    pub family: Family,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiltonInstance {
    params: GroundParams,
    families: Vec<IndexedFamily>,
}

impl HiltonInstance {
    /// Copy indices are assigned in order of appearance per threshold.
    pub fn new(params: GroundParams, families: impl IntoIterator<Item = (u32, Family)>) -> Result<Self> {
        let mut next = vec![1u32; params.k as usize + 1];
        let mut out = Vec::new();
        for (i, family) in families {
            if i < 1 || i > params.k {
                return Err(Error::Range(format!("threshold i={i} outside 1..={}", params.k)));
            }
            if family.params() != params {
                return Err(Error::ParamsMismatch(format!("family has {}, instance has {params}", family.params())));
            }
            let j = next[i as usize];
            next[i as usize] += 1;
            out.push(IndexedFamily { i, j, family });
        }
        Ok(HiltonInstance { params, families: out })
    }

    pub fn params(&self) -> GroundParams {
        self.params
    }

    pub fn families(&self) -> &[IndexedFamily] {
        &self.families
    }

    /// `m_i`, empty families included.
    pub fn multiplicity(&self, i: u32) -> u64 {
        self.families.iter().filter(|f| f.i == i).count() as u64
    }

    /// `M_0, ..., M_k`.
    pub fn cumulative(&self) -> Vec<u64> {
        let mut acc = 0;
        let mut out = vec![1];
        for s in 1..=self.params.k {
            acc += self.multiplicity(s);
            out.push(acc.max(1));
        }
        out
    }
}

/// Reads the instance file format: a header line, then blocks opened by
/// `family i=<t>` and followed by member lines. A block may be empty.
pub fn parse_instance(text: &str) -> Result<HiltonInstance> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut params = None;
    let mut blocks: Vec<(u32, usize, Vec<KSet>)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if is_skippable(line) {
            continue;
        }
        let Some(p) = params else {
            params = Some(parse_header(line_no, line)?);
            continue;
        };
        if let Some(rest) = line.trim().strip_prefix("family") {
            let t = rest
                .trim()
                .strip_prefix("i=")
                .and_then(|v| v.parse::<u32>().ok())
                .ok_or_else(|| err(line_no, format!("malformed block header `{}`", line.trim())))?;
            blocks.push((t, line_no, Vec::new()));
            continue;
        }
        let member = parse_member(line_no, line, p)?;
        match blocks.last_mut() {
            Some((_, _, members)) => members.push(member),
            None => return Err(err(line_no, "member line before any `family i=<t>` block".into())),
        }
    }
    let params = params.ok_or_else(|| err(1, "malformed header: expected `n=<int> k=<int>`".into()))?;
    let mut families = Vec::new();
    for (t, line_no, members) in blocks {
        if t < 1 || t > params.k {
            return Err(err(line_no, format!("threshold i={t} outside 1..={}", params.k)));
        }
        let family = Family::new(params, members).map_err(|e| err(line_no, e.to_string()))?;
        families.push((t, family));
    }
    HiltonInstance::new(params, families)
}

/// The first distinct pair (by position) that is not cross-`max(i, i')`-intersecting.
pub fn first_cross_violation(inst: &HiltonInstance) -> Option<(usize, usize)> {
    let fs = &inst.families;
    for a in 0..fs.len() {
        for b in a + 1..fs.len() {
            let t = fs[a].i.max(fs[b].i);
            if !is_cross_t_intersecting(&fs[a].family, &fs[b].family, t).expect("shared params") {
                return Some((a, b));
            }
        }
    }
    None
}

/// Distinct pairs only: a family is never tested against itself.
pub fn check_cross_conditions(inst: &HiltonInstance) -> bool {
    first_cross_violation(inst).is_none()
}

/// `max_{0<=s<=k} M_s·C(n-s, k-s)`.
pub fn hilton_bound(inst: &HiltonInstance) -> BigInt {
    let (n, k) = (inst.params.n as i64, inst.params.k as i64);
    inst.cumulative()
        .iter()
        .enumerate()
        .map(|(s, m)| BigInt::from(*m) * binomial_int(n - s as i64, k - s as i64))
        .max()
        .expect("M_0 always exists")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicity {
    pub set: KSet,
    /// Number of families containing `set`.
    pub r: u64,
    /// `i_U(set)` in the union `U` of all families.
    pub i_union: u32,
    /// `M_{i_U(set)}`
    pub cap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiltonVerdict {
    pub params: GroundParams,
    pub m: Vec<u64>,
    pub big_m: Vec<u64>,
    pub condition_ok: bool,
    /// `((i, j), (i', j'))` of the first failing pair.
    pub violating_pair: Option<((u32, u32), (u32, u32))>,
    pub total: u64,
    pub bound: BigInt,
    pub holds: bool,
    /// `n` at least the cubic threshold for `k`, where the bound is a theorem.
    pub in_theorem_range: bool,
    /// One entry per member of the union, colex order.
    pub multiplicities: Vec<Multiplicity>,
    pub multiplicities_ok: bool,
    /// Whether each family is i-intersecting with itself; informational.
    pub intra: Vec<(u32, u32, bool)>,
}

impl HiltonVerdict {
    pub fn is_tight(&self) -> bool {
        BigInt::from(self.total) == self.bound
    }

    /// A claimed inequality failed on an instance it covers.
    pub fn failed(&self) -> bool {
        self.condition_ok && (!self.multiplicities_ok || (self.in_theorem_range && !self.holds))
    }
}

pub fn verify_hilton(inst: &HiltonInstance) -> HiltonVerdict {
    let params = inst.params;
    let k = params.k;
    let violation = first_cross_violation(inst);
    let fs = &inst.families;
    let big_m = inst.cumulative();

    let mut r: FxHashMap<KSet, u64> = FxHashMap::default();
    for f in fs {
        for a in f.family.members() {
            *r.entry(*a).or_default() += 1;
        }
    }
    let union = Family::new(params, r.keys().copied()).expect("members share params");
    let ivals = min_intersections(&union);
    let multiplicities: Vec<Multiplicity> = union
        .members()
        .iter()
        .zip(&ivals)
        .map(|(set, &i)| Multiplicity { set: *set, r: r[set], i_union: i, cap: big_m[i as usize] })
        .collect();
    let multiplicities_ok = multiplicities.iter().all(|m| m.r <= m.cap);

    let total: u64 = fs.iter().map(|f| f.family.len() as u64).sum();
    let bound = hilton_bound(inst);
    let cubic = thresholds(k as u64, 0).map(|t| t.cubic).unwrap_or(u64::MAX);
    HiltonVerdict {
        params,
        m: (1..=k).map(|i| inst.multiplicity(i)).collect(),
        big_m,
        condition_ok: violation.is_none(),
        violating_pair: violation.map(|(a, b)| ((fs[a].i, fs[a].j), (fs[b].i, fs[b].j))),
        holds: BigInt::from(total) <= bound,
        total,
        bound,
        in_theorem_range: params.n as u64 >= cubic,
        multiplicities,
        multiplicities_ok,
        intra: fs.iter().map(|f| (f.i, f.j, is_t_intersecting(&f.family, f.i))).collect(),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for HiltonVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hilton {} families={}", self.params, self.intra.len())?;
        let m: Vec<String> = self.m.iter().enumerate().map(|(i, v)| format!("m_{}={v}", i + 1)).collect();
        writeln!(f, "{}", m.join(" "))?;
        let big: Vec<String> = self.big_m.iter().enumerate().map(|(s, v)| format!("M_{s}={v}")).collect();
        writeln!(f, "{}", big.join(" "))?;
        match self.violating_pair {
            None => writeln!(f, "cross conditions ok")?,
            Some(((i, j), (i2, j2))) => writeln!(
                f,
                "cross conditions FAIL: F_{{{i},{j}}} and F_{{{i2},{j2}}} are not cross-{}-intersecting; verdict inapplicable",
                i.max(i2)
            )?,
        }
        for (i, j, ok) in &self.intra {
            writeln!(f, "family i={i} j={j} self-{i}-intersecting {} (informational)", yes(*ok))?;
        }
        writeln!(f, "total {}", self.total)?;
        writeln!(f, "bound {}", self.bound)?;
        writeln!(f, "holds {} tight {}", yes(self.holds), yes(self.is_tight()))?;
        if !self.in_theorem_range {
            writeln!(f, "note: n is below the cubic threshold for k; the bound is not guaranteed here")?;
        }
        writeln!(f, "multiplicity check {}", if self.multiplicities_ok { "ok" } else { "FAIL" })?;
        writeln!(f, "set\tr\ti_U\tcap")?;
        for m in &self.multiplicities {
            writeln!(f, "{}\t{}\t{}\t{}", m.set, m.r, m.i_union, m.cap)?;
        }
        let verdict = match (self.condition_ok, self.failed()) {
            (false, _) => "inapplicable",
            (true, true) => "FAILED",
            (true, false) => "ok",
        };
        writeln!(f, "verdict {verdict}")
    }
}
