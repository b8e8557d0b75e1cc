//! Closed-form thresholds and bounds, all evaluated exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{binomial_int, from_int, ratio, ExactRational};
use crate::setfamily::{is_cross_t_intersecting, same_params, Family};

/// Ground-set thresholds for a given `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdSet {
    pub k: u64,
    pub d: u64,
    /// `(k^3 + 2k^2 + k) / 2`
    pub cubic: u64,
    /// `⌈k^2/4⌉ + 5k + D`; integer `n` meets `n >= k^2/4 + 5k + D` iff it meets this.
    pub quadratic: u64,
    /// `k + ⌈k/2⌉(⌊k/2⌋ + 1)`
    pub conjectured: u64,
    /// `(t, (t+1)(k-t+1))` for `1 <= t < k`.
    pub ak_range: Vec<(u64, u64)>,
}

/// Printed alongside every quadratic threshold: `D` is only known to exist.
pub const D_CAVEAT: &str =
    "note: D is a user parameter; only the existence of a sufficient absolute constant is known, no value is";

pub fn thresholds(k: u64, d: u64) -> Result<ThresholdSet> {
    if k < 1 {
        return Err(Error::Range("thresholds need k >= 1".into()));
    }
    let half_up = k.div_ceil(2);
    Ok(ThresholdSet {
        k,
        d,
        cubic: k * (k + 1) * (k + 1) / 2,
        quadratic: (k * k).div_ceil(4) + 5 * k + d,
        conjectured: k + half_up * (k / 2 + 1),
        ak_range: (1..k).map(|t| (t, (t + 1) * (k - t + 1))).collect(),
    })
}

impl fmt::Display for ThresholdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "thresholds k={} D={}", self.k, self.d)?;
        writeln!(f, "cubic\t{}", self.cubic)?;
        writeln!(f, "quadratic\t{}", self.quadratic)?;
        writeln!(f, "conjectured\t{}", self.conjectured)?;
        for (t, v) in &self.ak_range {
            writeln!(f, "ak_range t={t}\t{v}")?;
        }
        writeln!(f, "{D_CAVEAT}")
    }
}

/// The two candidate bounds on `|G_t| / C(n-t, k-t)` and their maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerBoundValue {
    /// `1 - (n-k)((n-k) - t(k-t) - 1) / ((n-t)(n-t-1))`
    pub entry1: ExactRational,
    /// `1 - C(n-k-1, k-t)/C(n-t, k-t) + t/C(n-t, k-t)`
    pub entry2: ExactRational,
    pub max: ExactRational,
}

fn ak_hypothesis(n: u32, k: u32, t: u32) -> Result<()> {
    if t < 1 || t >= k {
        return Err(Error::Range(format!("needs 1 <= t <= k-1, got t={t} k={k}")));
    }
    let floor = (t as u64 + 1) * (k as u64 - t as u64 + 1);
    if (n as u64) <= floor {
        return Err(Error::Range(format!("needs n > (t+1)(k-t+1) = {floor}, got n={n}")));
    }
    Ok(())
}

/// The first entry on its own, defined whenever `n >= t + 2`. The boundary
/// `n - k = t(k-t) + 1`, where it equals 1, is exactly `n = (t+1)(k-t+1)` and
/// so lies just outside [`layer_bound`]'s hypothesis.
pub fn layer_bound_entry1(n: u32, k: u32, t: u32) -> Result<ExactRational> {
    if n < t + 2 {
        return Err(Error::Range(format!("needs n >= t+2, got n={n} t={t}")));
    }
    let (n, k, t) = (n as i64, k as i64, t as i64);
    Ok(ExactRational::one() - ratio((n - k) * ((n - k) - t * (k - t) - 1), (n - t) * (n - t - 1)))
}

pub fn layer_bound(n: u32, k: u32, t: u32) -> Result<LayerBoundValue> {
    ak_hypothesis(n, k, t)?;
    let entry1 = layer_bound_entry1(n, k, t)?;
    let (n, k, t) = (n as i64, k as i64, t as i64);
    let one = ExactRational::one();
    let top = binomial_int(n - t, k - t);
    let entry2 = &one - ratio(binomial_int(n - k - 1, k - t), top.clone()) + ratio(t, top);
    let max = entry1.clone().max(entry2.clone());
    Ok(LayerBoundValue { entry1, entry2, max })
}

/// `(k+1)·C(n-t-1, k-t-1)`.
pub fn coarse_layer_bound(n: u32, k: u32, t: u32) -> Result<BigInt> {
    if t < 1 || t >= k {
        return Err(Error::Range(format!("needs 1 <= t < k, got t={t} k={k}")));
    }
    let (n, k, t) = (n as i64, k as i64, t as i64);
    Ok(BigInt::from(k + 1) * binomial_int(n - t - 1, k - t - 1))
}

/// Whether the product theorem for cross-s-intersecting pairs covers `(n, k, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Applicability {
    Applicable,
    Inapplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundVerdict {
    Holds,
    Violated,
    Inapplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBoundCheck {
    pub s: u32,
    pub product: BigInt,
    /// `C(n-s, k-s)^2`
    pub bound: BigInt,
    pub cross_intersecting: bool,
    pub applicability: Applicability,
}

impl ProductBoundCheck {
    pub fn verdict(&self) -> BoundVerdict {
        if let Applicability::Inapplicable(why) = &self.applicability {
            return BoundVerdict::Inapplicable(why.clone());
        }
        if self.product <= self.bound {
            BoundVerdict::Holds
        } else {
            BoundVerdict::Violated
        }
    }

    pub fn is_tight(&self) -> bool {
        self.product == self.bound
    }
}

/// The range condition of the product theorem for a given `s`:
/// `n >= 2k` for `s = 1`, `n >= 3.38k` (as `50n >= 169k`) for `s = 2`, and
/// `n >= (s+1)(k-s+1)` for `s >= 3`.
pub fn product_range(n: u32, k: u32, s: u32) -> Applicability {
    let (n, k, s) = (n as u64, k as u64, s as u64);
    match s {
        1 if n >= 2 * k => Applicability::Applicable,
        1 => Applicability::Inapplicable(format!("s=1 needs n >= 2k = {}", 2 * k)),
        2 if 50 * n >= 169 * k => Applicability::Applicable,
        2 => Applicability::Inapplicable(format!(
            "s=2 needs n >= (169/50)k = {}/50, got n={n}",
            169 * k
        )),
        _ if n >= (s + 1) * (k - s + 1) => Applicability::Applicable,
        _ => Applicability::Inapplicable(format!("s>=3 needs n >= (s+1)(k-s+1) = {}", (s + 1) * (k - s + 1))),
    }
}

/// `|A|·|B|` against `C(n-s, k-s)^2` for a cross-s-intersecting pair.
pub fn product_bound_check(a: &Family, b: &Family, s: u32) -> Result<ProductBoundCheck> {
    same_params(a, b)?;
    let (n, k) = (a.n(), a.k());
    if s < 1 || s > k {
        return Err(Error::Range(format!("needs 1 <= s <= k, got s={s} k={k}")));
    }
    let cross = is_cross_t_intersecting(a, b, s)?;
    let applicability = if !cross {
        Applicability::Inapplicable(format!("families are not cross-{s}-intersecting"))
    } else {
        product_range(n, k, s)
    };
    let base = binomial_int(n as i64 - s as i64, k as i64 - s as i64);
    Ok(ProductBoundCheck {
        s,
        product: BigInt::from(a.len()) * BigInt::from(b.len()),
        bound: &base * &base,
        cross_intersecting: cross,
        applicability,
    })
}

/// `1 + (n-k)((k-t)(t+1) - (n-k)) / ((n-t)(n-t-1))`, a lower bound on
/// `Φ(J_t(n,k))`.
///
/// Accepted for `1 <= t <= k-1`; at `t = k-1` it equals `Φ(J_{k-1}(n,k))`.
pub fn sharpness_bound(n: u32, k: u32, t: u32) -> Result<ExactRational> {
    if t < 1 || t + 1 > k {
        return Err(Error::Range(format!("needs 1 <= t <= k-1, got t={t} k={k}")));
    }
    if n <= k {
        return Err(Error::Range(format!("needs n > k, got n={n} k={k}")));
    }
    let (n, k, t) = (n as i64, k as i64, t as i64);
    Ok(from_int(1) + ratio((n - k) * ((k - t) * (t + 1) - (n - k)), (n - t) * (n - t - 1)))
}

/// Open interval `low < n < high` on which the sharpness bound exceeds 1.
pub fn sharpness_window(k: u32, t: u32) -> (u64, u64) {
    let (k, t) = (k as u64, t as u64);
    (k, k + (k - t) * (t + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterexampleWindow {
    pub t_star: u32,
    /// exclusive
    pub n_low: u64,
    /// exclusive
    pub n_high: u64,
}

/// `t* = ⌊k/2⌋` and the window `k < n < k + ⌈k/2⌉(⌊k/2⌋ + 1)`.
pub fn counterexample_window(k: u32) -> Result<CounterexampleWindow> {
    if k < 3 {
        return Err(Error::Range(format!("needs k >= 3, got k={k}")));
    }
    let t_star = k / 2;
    let (n_low, n_high) = sharpness_window(k, t_star);
    Ok(CounterexampleWindow { t_star, n_low, n_high })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{h1, h2, j_family, star};
    use crate::phi::phi_direct;
    use crate::setfamily::{Family, GroundParams, Subset};

    #[test]
    fn threshold_values() {
        let th = thresholds(3, 0).unwrap();
        assert_eq!(th.cubic, 24);
        assert_eq!(th.conjectured, 7);
        assert_eq!(th.ak_range, vec![(1, 6), (2, 6)]);
        assert_eq!(thresholds(2, 0).unwrap().conjectured, 4);
        // ⌈9/4⌉ + 15 + 5
        assert_eq!(thresholds(3, 5).unwrap().quadratic, 23);
        assert!(thresholds(0, 0).is_err());
    }

    #[test]
    fn threshold_ordering_from_eight() {
        for k in 8..=64 {
            let th = thresholds(k, 0).unwrap();
            assert!(th.cubic >= th.quadratic && th.quadratic >= th.conjectured, "k={k}");
        }
    }

    #[test]
    fn layer_bound_examples() {
        let v = layer_bound(10, 3, 1).unwrap();
        assert_eq!(v.entry1, ratio(11, 18));
        assert_eq!(v.entry2, ratio(11, 18));
        assert_eq!(v.max, ratio(11, 18));
        // n - k = t(k-t) + 1 zeroes the subtracted fraction
        for (k, t) in [(4u32, 1u32), (5, 2), (6, 3), (7, 2)] {
            let n = k + t * (k - t) + 1;
            assert_eq!(n, (t + 1) * (k - t + 1));
            assert_eq!(layer_bound_entry1(n, k, t).unwrap(), ratio(1, 1), "k={k} t={t}");
            assert!(layer_bound(n, k, t).is_err());
        }
        assert!(layer_bound(6, 3, 1).is_err());
        assert!(layer_bound(20, 3, 3).is_err());
    }

    #[test]
    fn layer_bound_first_entry_below_one() {
        for k in 2..=8u32 {
            for t in 1..k {
                for n in (t + 1) * (k - t + 1) + 1..=60 {
                    if n - k > t * (k - t) + 1 {
                        assert!(layer_bound(n, k, t).unwrap().entry1 < ratio(1, 1), "n={n} k={k} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn coarse_bound_examples() {
        assert_eq!(coarse_layer_bound(10, 3, 1).unwrap(), BigInt::from(32));
        assert_eq!(coarse_layer_bound(9, 5, 4).unwrap(), BigInt::from(6));
        assert_eq!(coarse_layer_bound(20, 4, 2).unwrap(), BigInt::from(85));
        assert_eq!(BigInt::from(h1(10, 3, 1).unwrap().len()), BigInt::from(22));
        assert!(coarse_layer_bound(10, 3, 3).is_err());
    }

    #[test]
    fn coarse_bound_dominates_h_families() {
        for k in 2..=6u32 {
            for t in 1..k {
                for n in (t + 1) * (k - t + 1) + 1..=24 {
                    let cap = coarse_layer_bound(n, k, t).unwrap();
                    assert!(BigInt::from(h1(n, k, t).unwrap().len()) <= cap);
                    assert!(BigInt::from(h2(n, k, t).unwrap().len()) <= cap);
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let s1 = star(10, 3, 1).unwrap();
        let c = product_bound_check(&s1, &s1, 1).unwrap();
        assert_eq!(c.product, BigInt::from(36 * 36));
        assert_eq!(c.verdict(), BoundVerdict::Holds);
        assert!(c.is_tight());

        let s2 = star(12, 4, 2).unwrap();
        let c = product_bound_check(&s2, &s2, 2).unwrap();
        assert_eq!(c.product, BigInt::from(45 * 45));
        assert!(c.is_tight());
        assert!(matches!(c.verdict(), BoundVerdict::Inapplicable(_)));
        // 14 >= 13.52
        let s2 = star(14, 4, 2).unwrap();
        assert_eq!(product_bound_check(&s2, &s2, 2).unwrap().verdict(), BoundVerdict::Holds);

        let p = GroundParams::new(9, 4).unwrap();
        let single = Family::new(p, [Subset::prefix(4)]).unwrap();
        let c = product_bound_check(&single, &single, 4).unwrap();
        assert_eq!((c.product.clone(), c.bound.clone()), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(c.verdict(), BoundVerdict::Holds);

        let disjoint = Family::new(p, [Subset::from_elements(&[5, 6, 7, 8]).unwrap()]).unwrap();
        let c = product_bound_check(&single, &disjoint, 1).unwrap();
        assert!(!c.cross_intersecting);
        assert!(matches!(c.verdict(), BoundVerdict::Inapplicable(_)));
    }

    #[test]
    fn sharpness_examples() {
        assert_eq!(sharpness_bound(5, 3, 1).unwrap(), ratio(4, 3));
        assert_eq!(sharpness_bound(3, 2, 1).unwrap(), ratio(3, 2));
        assert_eq!(sharpness_bound(6, 3, 1).unwrap(), ratio(23, 20));
        for (k, t) in [(3u32, 1u32), (5, 2), (6, 3), (8, 1)] {
            let (_, hi) = sharpness_window(k, t);
            assert_eq!(sharpness_bound(hi as u32, k, t).unwrap(), ratio(1, 1));
        }
        assert!(sharpness_bound(3, 3, 1).is_err());
        assert!(sharpness_bound(6, 3, 3).is_err());
    }

    #[test]
    fn sharpness_bound_is_a_lower_bound_for_j() {
        // the full n <= 40 grid runs in the integration suite
        for k in 3..=5u32 {
            for t in 1..=k - 2 {
                for n in k + 1..=16 {
                    let phi = phi_direct(&j_family(n, k, t).unwrap());
                    let bound = sharpness_bound(n, k, t).unwrap();
                    assert!(phi >= bound, "n={n} k={k} t={t}");
                    let (lo, hi) = sharpness_window(k, t);
                    if (n as u64) > lo && (n as u64) < hi {
                        assert!(phi > ratio(1, 1));
                    }
                }
            }
        }
    }

    #[test]
    fn window_examples() {
        let w = counterexample_window(3).unwrap();
        assert_eq!((w.t_star, w.n_low, w.n_high), (1, 3, 7));
        let w = counterexample_window(4).unwrap();
        assert_eq!((w.t_star, w.n_low, w.n_high), (2, 4, 10));
        let w = counterexample_window(6).unwrap();
        assert_eq!((w.t_star, w.n_low, w.n_high), (3, 6, 18));
        assert!(counterexample_window(2).is_err());
    }
}
