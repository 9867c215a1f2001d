//! Exact scalars: arbitrary-precision rationals, the integer-shift order, the
//! Int/Hf index classification, and the quadratic ring Q(sqrt 2).
//!
//! Rationals are backed by [`num_rational::BigRational`], which keeps every
//! value in lowest terms with a strictly positive denominator. Two distinct
//! orders coexist on them:
//! - the real order (`<`, `Ord`), and
//! - the integer-shift order, where `a >= b` means `a - b` is a nonnegative
//!   integer; all tableau interleaving conditions use the latter.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use num_rational::BigRational as Rational;

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer `p` as a rational.
pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Parses `"p"` or `"p/q"` with optional leading sign; no decimals.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() || t.contains('.') {
        return Err(Error::Parse(format!("bad rational {s:?}")));
    }
    Rational::from_str(t).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Formats in the interchange form `p/q`, with `/q` omitted when `q == 1`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational_vec(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

/// `a - b` when the difference is an integer, otherwise `None`.
pub fn integer_distance(a: &Rational, b: &Rational) -> Option<BigInt> {
    let d = a - b;
    if d.is_integer() {
        Some(d.to_integer())
    } else {
        None
    }
}

/// Integer-shift order: `a >= b` iff `a - b` is a nonnegative integer.
pub fn int_ge(a: &Rational, b: &Rational) -> bool {
    matches!(integer_distance(a, b), Some(d) if !d.is_negative())
}

/// Integer-shift order: `a > b` iff `a - b` is a positive integer.
pub fn int_gt(a: &Rational, b: &Rational) -> bool {
    matches!(integer_distance(a, b), Some(d) if d.is_positive())
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

/// Membership in `1/2 + Z`.
pub fn is_half_odd(r: &Rational) -> bool {
    (r + half()).is_integer()
}

/// 1-based index sets `(Int, Hf)`: entries in `Z` and entries in `1/2 + Z`.
pub fn classify(v: &[Rational]) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut int = BTreeSet::new();
    let mut hf = BTreeSet::new();
    for (idx, x) in v.iter().enumerate() {
        if is_integer(x) {
            int.insert(idx + 1);
        }
        if is_half_odd(x) {
            hf.insert(idx + 1);
        }
    }
    (int, hf)
}

/// An element `a + b*sqrt(2)` of Q(sqrt 2). Equality is componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTwo {
    pub a: Rational,
    pub b: Rational,
}

impl RootTwo {
    pub fn new(a: Rational, b: Rational) -> Self {
        RootTwo { a, b }
    }

    pub fn zero() -> Self {
        RootTwo::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        RootTwo::new(Rational::one(), Rational::zero())
    }

    pub fn from_rational(a: Rational) -> Self {
        RootTwo::new(a, Rational::zero())
    }

    pub fn sqrt2() -> Self {
        RootTwo::new(Rational::zero(), Rational::one())
    }

    /// `1/sqrt(2) = sqrt(2)/2`.
    pub fn inv_sqrt2() -> Self {
        RootTwo::new(Rational::zero(), half())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Multiplicative inverse; `None` for zero. The norm `a^2 - 2 b^2` never
    /// vanishes on nonzero elements since sqrt(2) is irrational.
    pub fn inverse(&self) -> Option<RootTwo> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.a * &self.a - rat_int(2) * &self.b * &self.b;
        Some(RootTwo::new(&self.a / &norm, -&self.b / &norm))
    }
}

impl Add for &RootTwo {
    type Output = RootTwo;
    fn add(self, rhs: &RootTwo) -> RootTwo {
        RootTwo::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &RootTwo {
    type Output = RootTwo;
    fn sub(self, rhs: &RootTwo) -> RootTwo {
        RootTwo::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &RootTwo {
    type Output = RootTwo;
    fn mul(self, rhs: &RootTwo) -> RootTwo {
        // (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s, with s^2 = 2.
        RootTwo::new(
            &self.a * &rhs.a + rat_int(2) * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Div for &RootTwo {
    type Output = RootTwo;
    fn div(self, rhs: &RootTwo) -> RootTwo {
        let inv = rhs.inverse().expect("division of RootTwo by zero");
        self * &inv
    }
}

impl Neg for &RootTwo {
    type Output = RootTwo;
    fn neg(self) -> RootTwo {
        RootTwo::new(-&self.a, -&self.b)
    }
}

impl fmt::Display for RootTwo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt2", self.b)
        } else {
            write!(f, "{}+{}*sqrt2", self.a, self.b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_distance_cases() {
        assert_eq!(integer_distance(&rat(5, 2), &rat(1, 2)), Some(BigInt::from(2)));
        assert_eq!(integer_distance(&rat(1, 3), &rat(1, 2)), None);
        assert_eq!(integer_distance(&rat(-3, 2), &rat(-3, 2)), Some(BigInt::from(0)));
    }

    #[test]
    fn classify_cases() {
        let (int, hf) = classify(&[rat(1, 2), rat_int(3), rat(1, 3)]);
        assert_eq!(int.into_iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(hf.into_iter().collect::<Vec<_>>(), vec![1]);

        let (int, hf) = classify(&[rat_int(0), rat_int(0)]);
        assert_eq!(int.into_iter().collect::<Vec<_>>(), vec![1, 2]);
        assert!(hf.is_empty());

        let (int, hf) = classify(&[rat(2, 3), rat(7, 2)]);
        assert!(int.is_empty());
        assert_eq!(hf.into_iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn int_shift_order_is_not_the_real_order() {
        // 1/3 > 1/2 fails in both orders, but 1/2 >= 1/3 only in the real one.
        assert!(!int_ge(&rat(1, 2), &rat(1, 3)));
        assert!(int_ge(&rat(5, 2), &rat(1, 2)));
        assert!(!int_gt(&rat(1, 2), &rat(1, 2)));
        assert!(int_gt(&rat(3, 2), &rat(1, 2)));
    }

    #[test]
    fn rational_interchange_format() {
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat_int(7)), "7");
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("+7").unwrap(), rat_int(7));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn root_two_is_a_square_root_of_two() {
        let s = RootTwo::sqrt2();
        assert_eq!(&s * &s, RootTwo::from_rational(rat_int(2)));
        assert_eq!(&RootTwo::inv_sqrt2() * &RootTwo::sqrt2(), RootTwo::one());
        let x = RootTwo::new(rat(3, 5), rat(-2, 7));
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, RootTwo::one());
    }
}
