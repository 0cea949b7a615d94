//! Exact rational scalars and small vector helpers used across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational; every exact computation runs over this type.
pub type Rat = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"7/2"`, `"-3"`, `"0"` etc. Floats are rejected; the exact path
/// never accepts lossy input.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not an exact rational (use e.g. 7/2, -3)"));
    if s.is_empty() || s.contains('.') || s.contains(['e', 'E']) {
        return Err(bad());
    }
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rat::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Formats a rational as `num/den`, omitting the denominator when it is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat_vec(s: &str) -> Result<Vec<Rat>, Error> {
    s.split(',').map(parse_rat).collect()
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite float.
pub fn rat_from_f64(x: f64) -> Result<Rat, Error> {
    Rat::from_float(x).ok_or_else(|| Error::Numerical(format!("non-finite value {x}")))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_i64(a: &[i64], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| y * Rat::from_integer(BigInt::from(*x)))
        .sum()
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn zeros(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn i64_to_rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat_int(x)).collect()
}

/// Scales a rational vector by the unique positive factor that makes it a
/// primitive integer vector (content 1). Zero vectors are returned unchanged.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    if v.iter().all(|x| x.is_zero()) {
        return v.to_vec();
    }
    let lcm_den = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm_den.clone())).to_integer()).collect();
    let gcd = ints
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| Rat::from_integer(x / gcd.clone()))
        .collect()
}

/// Lexicographic comparison, used wherever deterministic ordering is needed.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// True if the vector has all-integer entries and content 1.
pub fn is_primitive_integer(v: &[Rat]) -> bool {
    if v.iter().any(|x| !x.is_integer()) {
        return false;
    }
    let gcd = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x.to_integer()));
    gcd.abs() == BigInt::from(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["7/2", "-3", "0", "-9/4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1e3").is_err());
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![rat(1, 2), rat(-3, 4), rat_int(0)];
        assert_eq!(primitive(&v), vec![rat_int(2), rat_int(-3), rat_int(0)]);
        assert!(is_primitive_integer(&primitive(&v)));
    }

    #[test]
    fn float_round_trip_is_exact() {
        let x = 0.1 + 0.2;
        let r = rat_from_f64(x).unwrap();
        assert_eq!(rat_to_f64(&r), x);
    }
}
