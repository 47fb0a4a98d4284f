//! Exact rationals with an `i64` fast path.
//!
//! Values are always normalized (positive denominator, lowest terms) and
//! stored inline whenever numerator and denominator fit in `i64`, so equal
//! values have equal representations.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(Box<(BigInt, BigInt)>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

/// Binary gcd; both arguments nonzero.
fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Binary gcd; both arguments nonzero.
fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small(0, 1));
    pub const ONE: Rational = Rational(Repr::Small(1, 1));

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `n / d`; panics on a zero denominator.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        if n == 0 {
            return Self::ZERO;
        }
        if d == 1 {
            if let Ok(a) = i64::try_from(n) {
                return Rational(Repr::Small(a, 1));
            }
        }
        let (un, ud) = (n.unsigned_abs(), d as u128);
        let g = match (u64::try_from(un), u64::try_from(ud)) {
            (Ok(a), Ok(b)) => gcd_u64(a, b) as i128,
            _ => gcd_u128(un, ud) as i128,
        };
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(Box::new((BigInt::from(n), BigInt::from(d))))),
        }
    }

    fn from_big(n: BigInt, d: BigInt) -> Self {
        let (mut n, mut d) = if d.is_negative() { (-n, -d) } else { (n, d) };
        if n.is_zero() {
            return Self::ZERO;
        }
        let g = n.gcd(&d);
        if !g.is_one() {
            n /= &g;
            d /= &g;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(a), Some(b)) => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(Box::new((n, d)))),
        }
    }

    fn big_parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.1.is_one(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n > 0,
            Repr::Big(b) => b.0.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.0.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.1.clone(), b.0.clone()),
        }
    }

    /// Numerator and denominator when both fit in `i64`.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(n, d) => Some((*n, *d)),
            Repr::Big(_) => None,
        }
    }

    pub fn numer(&self) -> BigInt {
        self.big_parts().0
    }

    pub fn denom(&self) -> BigInt {
        self.big_parts().1
    }

    /// `self - a * b` without intermediate allocation in the common case.
    #[inline]
    pub fn sub_mul(&self, a: &Rational, b: &Rational) -> Rational {
        if a.is_zero() || b.is_zero() {
            return self.clone();
        }
        if let (Repr::Small(sn, sd), Repr::Small(an, ad), Repr::Small(bn, bd)) = (&self.0, &a.0, &b.0) {
            // One normalization instead of two when everything stays in i128.
            let (pn, pd) = (*an as i128 * *bn as i128, *ad as i128 * *bd as i128);
            if *sd == 1 && pd == 1 {
                return Rational::from_i128(*sn as i128 - pn, 1);
            }
            let sd = *sd as i128;
            if let (Some(x), Some(y), Some(d)) = ((*sn as i128).checked_mul(pd), pn.checked_mul(sd), sd.checked_mul(pd)) {
                if let Some(n) = x.checked_sub(y) {
                    return Rational::from_i128(n, d);
                }
            }
        }
        self - &(a * b)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::from_big(BigInt::from(n), BigInt::one())
    }
}

fn add_impl(a: &Rational, b: &Rational, negate_b: bool) -> Rational {
    match (&a.0, &b.0) {
        (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
            let bn = if negate_b { -(*bn as i128) } else { *bn as i128 };
            if *ad == 1 && *bd == 1 {
                return Rational::from_i128(*an as i128 + bn, 1);
            }
            let (an, ad, bd) = (*an as i128, *ad as i128, *bd as i128);
            if ad == bd {
                return Rational::from_i128(an + bn, ad);
            }
            match (an.checked_mul(bd), bn.checked_mul(ad), ad.checked_mul(bd)) {
                (Some(x), Some(y), Some(d)) => match x.checked_add(y) {
                    Some(n) => Rational::from_i128(n, d),
                    None => add_big(a, b, negate_b),
                },
                _ => add_big(a, b, negate_b),
            }
        }
        _ => add_big(a, b, negate_b),
    }
}

fn add_big(a: &Rational, b: &Rational, negate_b: bool) -> Rational {
    let (an, ad) = a.big_parts();
    let (mut bn, bd) = b.big_parts();
    if negate_b {
        bn = -bn;
    }
    Rational::from_big(an * &bd + bn * &ad, ad * bd)
}

fn mul_impl(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::ZERO;
    }
    match (&a.0, &b.0) {
        (Repr::Small(an, 1), Repr::Small(bn, 1)) => match an.checked_mul(*bn) {
            Some(n) => Rational(Repr::Small(n, 1)),
            None => Rational::from_i128(*an as i128 * *bn as i128, 1),
        },
        (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
            let n = *an as i128 * *bn as i128;
            let d = *ad as i128 * *bd as i128;
            Rational::from_i128(n, d)
        }
        _ => {
            let (an, ad) = a.big_parts();
            let (bn, bd) = b.big_parts();
            Rational::from_big(an * bn, ad * bd)
        }
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        mul_impl(self, rhs)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        mul_impl(self, &rhs.recip())
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(-(*n as i128), *d as i128),
            Repr::Big(b) => Rational::from_big(-b.0.clone(), b.1.clone()),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                (*an as i128 * *bd as i128).cmp(&(*bn as i128 * *ad as i128))
            }
            _ => {
                let (an, ad) = self.big_parts();
                let (bn, bd) = other.big_parts();
                (an * bd).cmp(&(bn * ad))
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.big_parts();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a rational")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p`, `p/q` and decimals such as `-1.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, ParseRationalError> {
            if t.is_empty() || t.starts_with('+') && t.len() == 1 {
                return Err(err());
            }
            BigInt::from_str(t).map_err(|_| err())
        };
        if let Some((n, d)) = s.split_once('/') {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational::from_big(parse_int(n)?, d));
        }
        if let Some((i, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            let neg = i.starts_with('-');
            let whole = if i.is_empty() || i == "-" { BigInt::zero() } else { parse_int(i)?.abs() };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let mut n = whole * &scale + parse_int(frac)?;
            if neg {
                n = -n;
            }
            return Ok(Rational::from_big(n, scale));
        }
        Ok(Rational::from_big(parse_int(s)?, BigInt::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(0, -3), Rational::ZERO);
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_integer(i64::MAX);
        let sq = &big * &big;
        assert!(sq.to_i64_pair().is_none());
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(back.to_i64_pair().is_some());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "-3", "7/2", "-5/9"] {
            assert_eq!(s.parse::<Rational>().unwrap().to_string(), s);
        }
        assert_eq!("1.25".parse::<Rational>().unwrap(), Rational::new(5, 4));
        assert_eq!("-0.5".parse::<Rational>().unwrap(), Rational::new(-1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
        assert!(Rational::new(-1, 2) < Rational::ZERO);
    }

    use proptest::prelude::*;

    fn small() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn matches_big_arithmetic(a in any::<i64>(), b in any::<i64>(), d in 1i64..i64::MAX) {
            let x = Rational::new(a, d);
            let y = Rational::from_integer(b);
            let (xn, xd) = (BigInt::from(a), BigInt::from(d));
            let expect = Rational::from_big(xn + BigInt::from(b) * &xd, xd);
            prop_assert_eq!(&x + &y, expect);
        }
    }
}
