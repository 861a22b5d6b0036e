//! Exact rational scalars and the height enumeration of the rationals.
//!
//! Everything in this crate that touches the real line is a [`Rat`]: an
//! arbitrary-precision `BigRational`. There is deliberately no floating-point
//! fallback anywhere; strict inequalities such as `W(f,g)(0) < 0` are decided,
//! not approximated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p"` or `"p/q"` (optionally signed) into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| RatParseError::Invalid(s.to_owned()))?;
    let q: BigInt = match den {
        Some(d) => d.parse().map_err(|_| RatParseError::Invalid(s.to_owned()))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(RatParseError::ZeroDenominator(s.to_owned()));
    }
    Ok(Rat::new(p, q))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise (lowest terms).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of a rational as a `BigInt`.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Positive gcd of two rationals: the largest `d` with both arguments in `dZ`.
/// `rat_gcd(0, 0)` is `0`.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    // gcd(p1/q1, p2/q2) = gcd(p1*q2, p2*q1) / (q1*q2)
    let n = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rat::new(n, a.denom() * b.denom())
}

/// Enumerates the rationals ordered by height: `0, 1, -1, 1/2, -1/2, 2, -2,
/// 1/3, -1/3, 2/3, -2/3, 3/2, -3/2, 3, -3, ...`.
///
/// Height of `p/q` in lowest terms is `max(|p|, q)`; within one height the
/// denominators descend and each positive value precedes its negative. This is
/// the default reference-point sequence for dynamically realized orders: any
/// two distinct PL maps differ on an open interval and hence at some point of
/// the sequence.
pub fn rationals_by_height() -> impl Iterator<Item = Rat> {
    std::iter::once(Rat::zero()).chain((1u64..).flat_map(|h| {
        (1..=h).rev().flat_map(move |q| {
            let ps: Vec<u64> = if q == h {
                (1..=h).filter(|p| p.gcd(&h) == 1).collect()
            } else if h.gcd(&q) == 1 {
                vec![h]
            } else {
                vec![]
            };
            ps.into_iter().flat_map(move |p| {
                let r = Rat::new(BigInt::from(p), BigInt::from(q));
                [r.clone(), -r]
            })
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        // non-canonical inputs normalize
        assert_eq!(fmt_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(fmt_rat(&parse_rat("-4/2").unwrap()), "-2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rat_gcd(&rat_i(1), &rat(1, 3)), rat(1, 3));
        assert_eq!(rat_gcd(&rat(3, 4), &rat(1, 2)), rat(1, 4));
        assert_eq!(rat_gcd(&rat_i(0), &rat(-2, 5)), rat(2, 5));
    }

    #[test]
    fn height_enumeration_prefix() {
        let got: Vec<String> = rationals_by_height().take(15).map(|r| fmt_rat(&r)).collect();
        assert_eq!(
            got,
            vec![
                "0", "1", "-1", "1/2", "-1/2", "2", "-2", "1/3", "-1/3", "2/3", "-2/3", "3/2",
                "-3/2", "3", "-3"
            ]
        );
    }

    #[test]
    fn height_enumeration_has_no_duplicates() {
        let pts: Vec<Rat> = rationals_by_height().take(200).collect();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }
}
