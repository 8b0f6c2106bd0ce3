//! Exact rational scalars and small helpers shared by the whole crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Floor of a rational as a `BigInt` (largest integer `<= x`).
pub fn floor_int(x: &Rat) -> Int {
    x.floor().to_integer()
}

/// Euclidean "round up" indicator: 0 when `x` is an integer, 1 otherwise.
pub fn eps(x: &Rat) -> Int {
    if x.is_integer() {
        Int::zero()
    } else {
        Int::one()
    }
}

pub fn is_int(x: &Rat) -> bool {
    x.is_integer()
}

/// Renders `p/q` in lowest terms, omitting `/q` for integers.
pub fn format_rat(x: &Rat) -> String {
    x.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = |m: &str| Error::InvalidInput(format!("bad rational {s:?}: {m}"));
    match t.split_once('/') {
        None => Ok(Rat::from_integer(t.parse::<Int>().map_err(|e| bad(&e.to_string()))?)),
        Some((p, q)) => {
            let p = p.trim().parse::<Int>().map_err(|e| bad(&e.to_string()))?;
            let q = q.trim().parse::<Int>().map_err(|e| bad(&e.to_string()))?;
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rat::new(p, q))
        }
    }
}

pub fn parse_int(s: &str) -> Result<Int> {
    s.trim()
        .parse::<Int>()
        .map_err(|e| Error::InvalidInput(format!("bad integer {s:?}: {e}")))
}

/// Sign-normalized gcd of a slice, 0 for the empty/zero slice.
pub fn gcd_all(xs: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in xs {
        g = num_integer::gcd(g, x.abs());
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_eps_match_integral_part_convention() {
        assert_eq!(floor_int(&ratio(7, 2)), int(3));
        assert_eq!(floor_int(&ratio(-7, 2)), int(-4));
        assert_eq!(floor_int(&rat(4)), int(4));
        assert_eq!(eps(&ratio(7, 2)), int(1));
        assert_eq!(eps(&rat(4)), int(0));
        assert_eq!(eps(&ratio(-7, 2)), int(1));
    }

    #[test]
    fn rational_round_trip_is_lowest_terms() {
        let x = ratio(6, -4);
        assert_eq!(format_rat(&x), "-3/2");
        assert_eq!(parse_rat("-3/2").unwrap(), x);
        assert_eq!(parse_rat(" 5 ").unwrap(), rat(5));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/2").is_err());
    }
}
