//! Arbitrary-precision rationals backed by GMP.
//!
//! `rug::Rational` keeps values reduced with a positive denominator, so
//! equality is component comparison.

use rug::Integer;

use crate::error::ParseRationalError;

pub type Rational = rug::Rational;

/// `n/d`; panics when `d = 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// Serializes as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let bad = || ParseRationalError(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Integer = n.parse().map_err(|_| bad())?;
    let d: Integer = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::from((n, d)))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    qs.into_iter()
        .fold(Integer::from(1), |acc, q| acc.lcm(q.denom()))
}

/// Largest absolute value of numerator or denominator, in bits.
pub fn height_bits(q: &Rational) -> u64 {
    u64::from(
        q.numer()
            .significant_bits()
            .max(q.denom().significant_bits()),
    )
}
