//! Numeric abstraction for charges and rates.
//!
//! Everything that carries a charge or a rate is generic over [`Scalar`].
//! The exact instantiation ([`crate::Rational`]) is what the audits are meant
//! to run on; the floating-point instantiations exist for quick approximate
//! runs and rendering.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde::Serializer;

pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Canonical text form: `p/q` for exact types, decimal otherwise.
    fn render(&self) -> String;

    /// Parses `p/q`, an integer, or (for inexact types) a decimal.
    fn parse(text: &str) -> Option<Self>;

    fn from_count(count: usize) -> Self {
        Self::from_ratio(count as i64, 1)
    }
}

fn split_ratio(text: &str) -> Option<(&str, &str)> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => Some((p.trim(), q.trim())),
        None => Some((text, "1")),
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse(text: &str) -> Option<Self> {
        let (p, q) = split_ratio(text)?;
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Ratio::new(p, q))
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(numer, denom)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse(text: &str) -> Option<Self> {
        let (p, q) = split_ratio(text)?;
        let p: i64 = p.parse().ok()?;
        let q: i64 = q.parse().ok()?;
        if q == 0 {
            return None;
        }
        Some(Ratio::new(p, q))
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(numer: i64, denom: i64) -> Self {
                <$t>::from_i64(numer).unwrap() / <$t>::from_i64(denom).unwrap()
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn render(&self) -> String {
                format!("{}", self)
            }

            fn parse(text: &str) -> Option<Self> {
                if let Ok(x) = text.trim().parse::<$t>() {
                    return Some(x);
                }
                let (p, q) = split_ratio(text)?;
                let p: $t = p.parse().ok()?;
                let q: $t = q.parse().ok()?;
                Some(p / q)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// `serialize_with` helper writing a scalar in its canonical text form.
pub fn serialize<S: Scalar, Ser: Serializer>(value: &S, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
    ser.serialize_str(&value.render())
}

pub fn serialize_opt<S: Scalar, Ser: Serializer>(
    value: &Option<S>,
    ser: Ser,
) -> Result<Ser::Ok, Ser::Error> {
    match value {
        Some(v) => ser.serialize_str(&v.render()),
        None => ser.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_renders_as_p_over_q() {
        let x = BigRational::from_ratio(-24, 2);
        assert_eq!(x.render(), "-12/1");
        assert_eq!(BigRational::parse("3/6").unwrap(), BigRational::from_ratio(1, 2));
        assert_eq!(BigRational::parse(" 7 ").unwrap(), BigRational::from_count(7));
        assert!(BigRational::parse("1/0").is_none());
    }

    #[test]
    fn floats_accept_fractions() {
        assert_eq!(f64::parse("1/4"), Some(0.25));
        assert_eq!(f32::parse("0.5"), Some(0.5));
        const { assert!(!f64::EXACT) };
    }
}
