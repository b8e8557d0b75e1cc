//! Exact integers and rationals, the cached binomial table, and the
//! per-member weight `1 / C(n - i, k - i)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
pub type ExactRational = BigRational;

/// Rows of Pascal's triangle past this are computed directly instead of cached.
const CACHE_ROWS: u64 = 1024;

/// Pascal's triangle grown on demand. Row `n` holds `C(n, 0..=n)`.
#[derive(Debug, Default)]
pub struct BinomialTable {
    rows: RwLock<Vec<Vec<BigUint>>>,
}

impl BinomialTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `C(n, k)`, zero outside `0 <= k <= n`.
    pub fn get(&self, n: u64, k: i64) -> BigUint {
        if k < 0 || k as u64 > n {
            return BigUint::zero();
        }
        let k = k as u64;
        if n > CACHE_ROWS {
            return binomial_product(n, k);
        }
        let (n_idx, k_idx) = (n as usize, k.min(n - k) as usize);
        {
            let rows = self.rows.read().expect("binomial cache poisoned");
            if let Some(row) = rows.get(n_idx) {
                return row[k_idx].clone();
            }
        }
        let mut rows = self.rows.write().expect("binomial cache poisoned");
        if rows.is_empty() {
            rows.push(vec![BigUint::one()]);
        }
        while rows.len() <= n_idx {
            let prev = rows.last().expect("nonempty");
            let m = prev.len();
            let mut row = Vec::with_capacity(m + 1);
            row.push(BigUint::one());
            for j in 1..m {
                row.push(&prev[j - 1] + &prev[j]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        rows[n_idx][k_idx].clone()
    }

    /// Number of rows currently materialized.
    pub fn cached_rows(&self) -> usize {
        self.rows.read().expect("binomial cache poisoned").len()
    }
}

fn binomial_product(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

fn table() -> &'static BinomialTable {
    static TABLE: OnceLock<BinomialTable> = OnceLock::new();
    TABLE.get_or_init(BinomialTable::new)
}

/// `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    table().get(n, k)
}

/// Binomial with a signed top argument: negative `n` yields zero, which is the
/// convention every counting formula here needs.
pub fn binomial_signed(n: i64, k: i64) -> BigUint {
    if n < 0 {
        BigUint::zero()
    } else {
        binomial(n as u64, k)
    }
}

/// `C(n, k)` as a signed big integer, for formulas that subtract binomials.
pub fn binomial_int(n: i64, k: i64) -> BigInt {
    BigInt::from_biguint(Sign::Plus, binomial_signed(n, k))
}

/// `1 / C(n - i, k - i)`, the contribution of a member with `i_F(A) = i`.
pub fn weight(n: i64, k: i64, i: i64) -> Result<ExactRational> {
    if i < 0 || i > k || k > n {
        return Err(Error::Range(format!(
            "weight needs 0 <= i <= k <= n, got n={n} k={k} i={i}"
        )));
    }
    Ok(ExactRational::new(
        BigInt::one(),
        binomial_int(n - i, k - i),
    ))
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}

pub fn from_uint(v: &BigUint) -> ExactRational {
    ExactRational::from_integer(BigInt::from_biguint(Sign::Plus, v.clone()))
}

pub fn from_int(v: impl Into<BigInt>) -> ExactRational {
    ExactRational::from_integer(v.into())
}

/// Least common multiple of `C(n - i, k - i)` over `i = 0..=k`, if it fits in
/// a `u128`. Every weight is then an integer multiple of `1 / lcm`.
pub fn weight_lcm(n: u64, k: u64) -> Option<u128> {
    let mut acc = BigUint::one();
    for i in 0..=k {
        acc = acc.lcm(&binomial(n - i, (k - i) as i64));
    }
    acc.to_u128()
}

/// Renders `p/q`, or just `p` for integers.
pub fn fraction(v: &ExactRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Significant digits used by [`decimal`].
pub const DECIMAL_DIGITS: u32 = 12;

/// Decimal rendering with [`DECIMAL_DIGITS`] significant digits, rounding
/// half to even. Trailing zeros are trimmed and scientific notation is used
/// outside `1e-4 <= |v| < 1e12`, in the manner of C's `%.12g`.
pub fn decimal(v: &ExactRational) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let neg = v.is_negative();
    let num = v.numer().abs();
    let den = v.denom().clone();
    let ten = BigInt::from(10u32);

    // exponent e with 10^e <= |v| < 10^(e+1)
    let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
    let pow = |p: i64| -> BigInt { num_traits::pow(ten.clone(), p as usize) };
    let ge_pow = |e: i64| -> bool {
        if e >= 0 {
            num >= &den * pow(e)
        } else {
            &num * pow(-e) >= den
        }
    };
    while !ge_pow(e) {
        e -= 1;
    }
    while ge_pow(e + 1) {
        e += 1;
    }

    let shift = DECIMAL_DIGITS as i64 - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (&num * pow(shift), den.clone())
    } else {
        (num.clone(), &den * pow(-shift))
    };
    let (mut q, r) = scaled_num.div_rem(&scaled_den);
    let twice = &r * 2;
    if twice > scaled_den || (twice == scaled_den && q.is_odd()) {
        q += 1;
    }
    if q == pow(DECIMAL_DIGITS as i64) {
        q /= 10;
        e += 1;
    }
    let digits = q.to_string();
    debug_assert_eq!(digits.len(), DECIMAL_DIGITS as usize);

    let body = if (-4..DECIMAL_DIGITS as i64).contains(&e) {
        if e >= 0 {
            let (int, frac) = digits.split_at(e as usize + 1);
            let frac = frac.trim_end_matches('0');
            if frac.is_empty() {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        } else {
            let lead = "0".repeat((-e - 1) as usize);
            format!("0.{lead}{}", digits.trim_end_matches('0'))
        }
    } else {
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        let mantissa = if tail.is_empty() {
            head.to_string()
        } else {
            format!("{head}.{tail}")
        };
        format!("{mantissa}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `p/q (decimal)`, the rendering used in every text report.
pub fn render(v: &ExactRational) -> String {
    format!("{} ({})", fraction(v), decimal(v))
}
