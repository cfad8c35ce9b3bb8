//! Arbitrary-precision rationals, always stored reduced with positive
//! denominator (num-rational maintains both invariants).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Field, IntegralDomain, Ring};
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl IntegralDomain for Rational {
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        <Rational as Ring>::one() / self
    }
}

pub fn rational_from_i64(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Serialize as "a" or "a/b".
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parts: Vec<&str> = s.split('/').collect();
    let bad = || Error::Parse(format!("bad rational: {s:?}"));
    match parts.as_slice() {
        [n] => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            Ok(Rational::from(n))
        }
        [n, d] => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(n, d))
        }
        _ => Err(bad()),
    }
}

/// Integer square root check: returns r with r*r == n when n is a perfect
/// square of a rational.
pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for s in ["3", "-7/2", "0", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn reduced_on_construction() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
    }
}
