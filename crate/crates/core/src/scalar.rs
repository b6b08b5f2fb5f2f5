//! Scalar abstraction.
//!
//! Every vector, weight and energy in the crate is generic over [`Scalar`].
//! The exact instance is [`crate::Rational`] (arbitrary precision); `f64`,
//! `f32` and `Ratio<i64>` are provided for quick numeric work.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Field elements used for labelling-function values.
pub trait Scalar:
    Num + Signed + PartialOrd + Clone + Debug + Send + Sync + 'static
{
    /// Embeds an integer.
    fn from_int(value: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Nearest `f64`.
    fn to_f64(&self) -> f64;

    /// Whether arithmetic on this type is exact. Drives the choice between
    /// exact equality and tolerance-based comparison in the checkers.
    fn is_exact() -> bool;

    /// Canonical text form. Rationals always print as `num/den`.
    fn to_exact_string(&self) -> String;

    /// Parses `a`, `-a`, `a/b`; floating types also accept decimals.
    fn parse_scalar(text: &str) -> Option<Self>;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

fn split_ratio(text: &str) -> Option<(&str, &str)> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => Some((n.trim(), d.trim())),
        None => Some((text, "1")),
    }
}

impl Scalar for BigRational {
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // numerator/denominator overflow f64 individually
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    fn is_exact() -> bool {
        true
    }

    fn to_exact_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let (n, d) = split_ratio(text)?;
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    }
}

impl Scalar for Ratio<i64> {
    fn from_int(value: i64) -> Self {
        Ratio::from_integer(value)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn is_exact() -> bool {
        true
    }

    fn to_exact_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let (n, d) = split_ratio(text)?;
        let n: i64 = n.parse().ok()?;
        let d: i64 = d.parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(Ratio::new(n, d))
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_int(value: i64) -> Self {
                value as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_exact() -> bool {
                false
            }

            fn to_exact_string(&self) -> String {
                format!("{}", self)
            }

            fn parse_scalar(text: &str) -> Option<Self> {
                let (n, d) = split_ratio(text)?;
                let n: $t = n.parse().ok()?;
                let d: $t = d.parse().ok()?;
                if d == 0.0 {
                    return None;
                }
                Some(n / d)
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// `base^exp` by repeated squaring.
pub fn pow<S: Scalar>(base: &S, exp: u32) -> S {
    num_traits::pow(base.clone(), exp as usize)
}

/// Returns `S::one()` when `flag` holds and zero otherwise.
pub fn indicator<S: Scalar>(flag: bool) -> S {
    if flag {
        S::one()
    } else {
        S::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let x = BigRational::parse_scalar("-6/4").unwrap();
        assert_eq!(x.to_exact_string(), "-3/2");
        assert_eq!(BigRational::parse_scalar("7").unwrap().to_exact_string(), "7/1");
        assert!(BigRational::parse_scalar("1/0").is_none());
        assert!(BigRational::parse_scalar("x").is_none());
    }

    #[test]
    fn float_parse_accepts_fraction() {
        assert_eq!(f64::parse_scalar("1/4"), Some(0.25));
        assert_eq!(f64::parse_scalar("0.5"), Some(0.5));
    }

    #[test]
    fn pow_small_ratio() {
        let half = Ratio::<i64>::ratio(1, 2);
        assert_eq!(pow(&half, 3), Ratio::new(1, 8));
        assert_eq!(pow(&half, 0), Ratio::from_integer(1));
    }
}
