//! Exact rational scalars.
//!
//! Every decision made by this crate (branch membership, winner selection,
//! attractor stabilization) is an exact comparison. Floating point types are
//! deliberately not supported; the scalar trait is only implemented for
//! reduced fractions.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// Arbitrary precision rational, the default scalar.
pub type Rat = Ratio<BigInt>;

/// Fixed width rational used by the bulk experiments. Safe for dyadic
/// parameters up to 62 fractional bits: comparisons cross-multiply, and
/// 2^62 * 2^62 still fits in an i128.
pub type Rat128 = Ratio<i128>;

/// Scalar type for all interval arithmetic in this crate.
pub trait Scalar: Num + Signed + Ord + Clone + Hash + Debug + Display {
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Parses "p/q" or a bare integer "p".
    fn parse_ratio(s: &str) -> Option<Self>;

    /// Nearest f64, used only for reporting, never for decisions.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for Rat {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    fn parse_ratio(s: &str) -> Option<Self> {
        parse_parts(s, |p| p.parse::<BigInt>().ok())
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for Rat128 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(i128::from(num), i128::from(den))
    }

    fn parse_ratio(s: &str) -> Option<Self> {
        parse_parts(s, |p| p.parse::<i128>().ok())
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

fn parse_parts<I, F>(s: &str, parse_int: F) -> Option<Ratio<I>>
where
    I: Clone + num_integer::Integer,
    F: Fn(&str) -> Option<I>,
{
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num.trim())?;
            let den = parse_int(den.trim())?;
            if den.is_zero() {
                return None;
            }
            Some(Ratio::new(num, den))
        }
        None => Some(Ratio::from_integer(parse_int(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let x = Rat::parse_ratio("3/12").unwrap();
        assert_eq!(x, Rat::from_ratio(1, 4));
        assert_eq!(x.to_string(), "1/4");
        assert_eq!(Rat::parse_ratio("-7/2").unwrap(), Rat::from_ratio(-7, 2));
        assert_eq!(Rat::parse_ratio("5").unwrap(), Rat::from_int(5));
        assert!(Rat::parse_ratio("1/0").is_none());
        assert!(Rat::parse_ratio("a/b").is_none());
    }

    #[test]
    fn fixed_width_matches_bigint_on_dyadics() {
        let a = Rat128::from_ratio(1, 1 << 53);
        let b = Rat::from_ratio(1, 1 << 53);
        assert_eq!(a.to_f64_lossy(), b.to_f64_lossy());
    }
}
