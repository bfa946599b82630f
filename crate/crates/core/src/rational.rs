use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n` or `p/q` (optional sign).
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn is_integer(q: &Q) -> bool {
    q.denom().is_one()
}

pub fn to_i64(q: &Q) -> Option<i64> {
    if !is_integer(q) {
        return None;
    }
    i64::try_from(q.numer()).ok()
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Floor of a rational, as an exact integer-valued rational.
pub fn floor_q(q: &Q) -> Q {
    q.floor()
}

pub fn abs_q(q: &Q) -> Q {
    q.abs()
}
