//! Arbitrary-precision rational scalars.

use alloc::string::String;
use alloc::string::ToString;

pub use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number, kept in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q. Panics if q = 0.
pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Renders `p/q`, or just `p` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Parses `p/q` or `p`, with an optional leading sign on p.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
    }
}

/// Exact integer value of `r`, if it is an integer.
pub fn as_integer(r: &Rat) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// Nonnegative greatest common divisor, gcd(0, 0) = 0.
pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b).abs()
}
