//! The named families: c-stars, full levels, `J_t`, the two nontrivial
//! t-intersecting candidates `H_1` and `H_2`, and the frontier families
//! `{A : |A ∩ [t+2r]| >= t+r}`.
//!
//! Each constructor filters `C([n], k)` by the defining predicate and then
//! checks the result against its closed-form size.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::binomial_int;
use crate::setfamily::{Family, GroundParams, Subset};

fn range(msg: String) -> Error {
    Error::Range(msg)
}

fn params(n: u32, k: u32) -> Result<GroundParams> {
    GroundParams::new(n, k)
}

fn checked(family: Family, expected: BigInt, what: &str) -> Family {
    assert_eq!(
        BigInt::from(family.len()),
        expected,
        "{what}: enumeration disagrees with the closed-form size"
    );
    family
}

/// All k-subsets of `[n]` containing `[c]`.
pub fn star(n: u32, k: u32, c: u32) -> Result<Family> {
    if c > k {
        return Err(range(format!("star needs c <= k, got c={c} k={k}")));
    }
    let p = params(n, k)?;
    let core = Subset::prefix(c);
    let f = Family::filtered(p, |s| core.is_subset_of(s));
    Ok(checked(f, binomial_int((n - c) as i64, (k - c) as i64), "star"))
}

pub fn full_level(n: u32, k: u32) -> Result<Family> {
    let p = params(n, k)?;
    Ok(checked(Family::full_level(p), binomial_int(n as i64, k as i64), "full level"))
}

/// `(t+2)·C(n-t-2, k-t-1) + C(n-t-2, k-t-2)`.
pub fn j_family_size(n: u32, k: u32, t: u32) -> BigInt {
    let (n, k, t) = (n as i64, k as i64, t as i64);
    BigInt::from(t + 2) * binomial_int(n - t - 2, k - t - 1) + binomial_int(n - t - 2, k - t - 2)
}

/// `C(n-t, k-t) - C(n-k-1, k-t) + t`.
pub fn h2_size(n: u32, k: u32, t: u32) -> BigInt {
    let (n, k, t) = (n as i64, k as i64, t as i64);
    binomial_int(n - t, k - t) - binomial_int(n - k - 1, k - t) + BigInt::from(t)
}

/// `|{A : |A ∩ [m]| >= q}| = Σ_{j>=q} C(m, j)·C(n-m, k-j)`.
fn threshold_family_size(n: u32, k: u32, m: u32, q: u32) -> BigInt {
    (q..=k.min(m))
        .map(|j| binomial_int(m as i64, j as i64) * binomial_int((n - m) as i64, (k - j) as i64))
        .sum()
}

/// `J_t(n,k) = {A : |A ∩ [t+2]| >= t+1}`.
pub fn j_family(n: u32, k: u32, t: u32) -> Result<Family> {
    if t < 1 || t + 1 > k {
        return Err(range(format!("J_t needs 1 <= t <= k-1, got t={t} k={k}")));
    }
    if t + 2 > n {
        return Err(range(format!("J_t needs t+2 <= n, got t={t} n={n}")));
    }
    let p = params(n, k)?;
    let window = Subset::prefix(t + 2);
    let f = Family::filtered(p, |s| s.meet(window) > t);
    Ok(checked(f, j_family_size(n, k, t), "J_t"))
}

fn check_h_range(n: u32, k: u32, t: u32) -> Result<()> {
    if t < 1 || t >= k {
        return Err(range(format!("H families need 1 <= t < k, got t={t} k={k}")));
    }
    if k + 1 > n {
        return Err(range(format!("H families need k+1 <= n, got k={k} n={n}")));
    }
    Ok(())
}

/// `H_1(n,k,t)`: the same family as `J_t(n,k)`.
pub fn h1(n: u32, k: u32, t: u32) -> Result<Family> {
    check_h_range(n, k, t)?;
    j_family(n, k, t)
}

/// `H_2(n,k,t) = {A : [t] ⊆ A, A ∩ [t+1, k+1] ≠ ∅} ∪ {[k+1] \ {i} : i ∈ [t]}`.
pub fn h2(n: u32, k: u32, t: u32) -> Result<Family> {
    check_h_range(n, k, t)?;
    let p = params(n, k)?;
    let head = Subset::prefix(t);
    let tail = Subset(Subset::prefix(k + 1).0 & !head.0);
    let top = Subset::prefix(k + 1);
    let f = Family::filtered(p, |s| {
        (head.is_subset_of(s) && s.meet(tail) > 0) || (s.is_subset_of(top) && !head.is_subset_of(s))
    });
    // the second branch is exactly the t sets [k+1] \ {i}, i in [t]
    Ok(checked(f, h2_size(n, k, t), "H_2"))
}

/// `{A : |A ∩ [t+2r]| >= t+r}`.
pub fn ak_frontier(n: u32, k: u32, t: u32, r: u32) -> Result<Family> {
    if t < 1 || t + 2 * r > n || t + r > k {
        return Err(range(format!(
            "frontier family needs t >= 1, t+2r <= n, t+r <= k; got n={n} k={k} t={t} r={r}"
        )));
    }
    let p = params(n, k)?;
    let window = Subset::prefix(t + 2 * r);
    let f = Family::filtered(p, |s| s.meet(window) >= t + r);
    Ok(checked(f, threshold_family_size(n, k, t + 2 * r, t + r), "frontier family"))
}

/// A named family with its parameters, as written on the command line:
/// `star:n,k,c`, `full:n,k`, `jt:n,k,t`, `h1:n,k,t`, `h2:n,k,t`, `ak:n,k,t,r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Star { n: u32, k: u32, c: u32 },
    FullLevel { n: u32, k: u32 },
    JFamily { n: u32, k: u32, t: u32 },
    H1 { n: u32, k: u32, t: u32 },
    H2 { n: u32, k: u32, t: u32 },
    AkFrontier { n: u32, k: u32, t: u32, r: u32 },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Family> {
        match *self {
            FamilySpec::Star { n, k, c } => star(n, k, c),
            FamilySpec::FullLevel { n, k } => full_level(n, k),
            FamilySpec::JFamily { n, k, t } => j_family(n, k, t),
            FamilySpec::H1 { n, k, t } => h1(n, k, t),
            FamilySpec::H2 { n, k, t } => h2(n, k, t),
            FamilySpec::AkFrontier { n, k, t, r } => ak_frontier(n, k, t, r),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Spec(s.to_string());
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<u32> = args
            .split(',')
            .map(|a| a.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let spec = match (kind, nums.as_slice()) {
            ("star", &[n, k, c]) => FamilySpec::Star { n, k, c },
            ("full", &[n, k]) => FamilySpec::FullLevel { n, k },
            ("jt", &[n, k, t]) => FamilySpec::JFamily { n, k, t },
            ("h1", &[n, k, t]) => FamilySpec::H1 { n, k, t },
            ("h2", &[n, k, t]) => FamilySpec::H2 { n, k, t },
            ("ak", &[n, k, t, r]) => FamilySpec::AkFrontier { n, k, t, r },
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Star { n, k, c } => write!(f, "star:{n},{k},{c}"),
            FamilySpec::FullLevel { n, k } => write!(f, "full:{n},{k}"),
            FamilySpec::JFamily { n, k, t } => write!(f, "jt:{n},{k},{t}"),
            FamilySpec::H1 { n, k, t } => write!(f, "h1:{n},{k},{t}"),
            FamilySpec::H2 { n, k, t } => write!(f, "h2:{n},{k},{t}"),
            FamilySpec::AkFrontier { n, k, t, r } => write!(f, "ak:{n},{k},{t},{r}"),
        }
    }
}
