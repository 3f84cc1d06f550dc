//! Exact scalars.
//!
//! All algebra in the crate is written against [`Field`], a thin bound over
//! `num-traits` arithmetic. The engine itself only instantiates it with
//! [`Rational`] (arbitrary precision) and with rational functions in one
//! variable ([`crate::poly::RatFunc`]); fixed-width ratios are supported for
//! small experiments but can overflow.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// An exact field.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Image of a rational number.
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(n.clone()))
    }
}

impl Field for BigRational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

macro_rules! impl_fixed_ratio {
    ($t:ty) => {
        impl Field for Ratio<$t> {
            fn from_rational(r: &Rational) -> Self {
                let n = r.numer().to_i128().expect("numerator overflows fixed-width ratio");
                let d = r.denom().to_i128().expect("denominator overflows fixed-width ratio");
                Ratio::new(
                    <$t>::try_from(n).expect("numerator overflows fixed-width ratio"),
                    <$t>::try_from(d).expect("denominator overflows fixed-width ratio"),
                )
            }
        }
    };
}

impl_fixed_ratio!(i64);
impl_fixed_ratio!(i128);

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `num/den`, the wire format used in every report.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// `r^e` for an integer exponent; `r` must be nonzero when `e < 0`.
pub fn pow<F: Field>(r: &F, e: i64) -> F {
    let mut acc = F::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * r.clone();
    }
    if e < 0 {
        F::one() / acc
    } else {
        acc
    }
}

/// Serde helpers writing rationals as `"num/den"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_str(&format_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let s = Option::<String>::deserialize(d)?;
            s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() - a.clone(), Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(a.clone() / a.clone(), Rational::one());
            }
            // lowest terms, positive denominator
            let s = a + b;
            prop_assert!(s.denom().is_positive());
            prop_assert_eq!(num_integer::Integer::gcd(s.numer(), s.denom()), BigInt::one());
        }
    }
}
