use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::One;

use crate::bounds::sharpness_bound;
use crate::constructions::j_family;
use crate::error::{Error, Result};
use crate::exact::{binomial_int, decimal, fraction, ExactRational};
use crate::phi::phi_direct;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub size: usize,
    /// `C(n-t, k-t)`, the size of a t-star.
    pub star_size: BigInt,
    pub phi: ExactRational,
    pub bound: ExactRational,
    /// `Φ(J_t(n,k)) > 1`
    pub violation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
}

pub const SCAN_HEADER: &str = "n\tk\tt\t|J_t|\tC(n-t,k-t)\tphi\tphi_decimal\tbound\tviolation";

impl fmt::Display for ScanTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{SCAN_HEADER}")?;
        for r in &self.rows {
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.n,
                r.k,
                r.t,
                r.size,
                r.star_size,
                fraction(&r.phi),
                decimal(&r.phi),
                fraction(&r.bound),
                r.violation
            )?;
        }
        Ok(())
    }
}

/// `Φ(J_t(n,k))` against the sharpness bound for each `n` in `ns`.
pub fn scan_counterexamples(k: u32, t: u32, ns: RangeInclusive<u32>) -> Result<ScanTable> {
    if t < 1 || t + 2 > k {
        return Err(Error::Range(format!("scan needs 1 <= t <= k-2, got t={t} k={k}")));
    }
    if *ns.start() <= k {
        return Err(Error::Range(format!("scan needs n > k, range starts at {}", ns.start())));
    }
    let one = ExactRational::one();
    let rows = ns
        .map(|n| {
            let family = j_family(n, k, t)?;
            let phi = phi_direct(&family);
            Ok(ScanRow {
                n,
                k,
                t,
                size: family.len(),
                star_size: binomial_int((n - t) as i64, (k - t) as i64),
                violation: phi > one,
                bound: sharpness_bound(n, k, t)?,
                phi,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanTable { rows })
}
