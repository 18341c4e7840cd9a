//! Arbitrary-precision integers with an inline machine-word fast path.
//!
//! Values that fit in an `i64` are stored inline; everything else spills to a
//! [`BigInt`]. The representation is normalized, so a `Large` value never fits
//! in an `i64`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Integer {
    Small(i64),
    Large(BigInt),
}

impl Integer {
    pub const ZERO: Integer = Integer::Small(0);
    pub const ONE: Integer = Integer::Small(1);

    fn from_big(b: BigInt) -> Integer {
        match b.to_i64() {
            Some(s) => Integer::Small(s),
            None => Integer::Large(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Integer::Small(s) => BigInt::from(*s),
            Integer::Large(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(s) => Some(*s),
            Integer::Large(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Integer::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(s) => *s < 0,
            Integer::Large(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Integer {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Truncated division: `self = q * other + r` with `|r| < |other|` and
    /// `r` carrying the sign of `self`.
    ///
    /// Panics if `other` is zero.
    pub fn div_rem(&self, other: &Integer) -> (Integer, Integer) {
        if let (Integer::Small(a), Integer::Small(b)) = (self, other) {
            if let (Some(q), Some(r)) = (a.checked_div(*b), a.checked_rem(*b)) {
                return (Integer::Small(q), Integer::Small(r));
            }
        }
        let (q, r) = self.to_bigint().div_rem(&other.to_bigint());
        (Integer::from_big(q), Integer::from_big(r))
    }

    /// Remainder in `[0, |modulus|)`.
    pub fn rem_euclid(&self, modulus: &Integer) -> Integer {
        let (_, r) = self.div_rem(modulus);
        if r.is_negative() {
            &r + &modulus.abs()
        } else {
            r
        }
    }

    pub fn gcd(&self, other: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, other) {
            let g = (*a as i128).gcd(&(*b as i128));
            if let Ok(g) = i64::try_from(g) {
                return Integer::Small(g);
            }
        }
        Integer::from_big(self.to_bigint().gcd(&other.to_bigint()))
    }

    pub fn divides(&self, other: &Integer) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Residue modulo a machine-word modulus, in `[0, p)`.
    pub fn mod_u64(&self, p: u64) -> u64 {
        match self {
            Integer::Small(s) => (*s as i128).rem_euclid(p as i128) as u64,
            Integer::Large(b) => {
                let r = b.mod_floor(&BigInt::from(p));
                r.to_u64().expect("residue fits in u64")
            }
        }
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer::Small(v as i64)
    }
}

impl From<u64> for Integer {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Integer::Small(s),
            Err(_) => Integer::Large(BigInt::from(v)),
        }
    }
}

impl From<usize> for Integer {
    fn from(v: usize) -> Self {
        Integer::from(v as u64)
    }
}

impl From<i128> for Integer {
    fn from(v: i128) -> Self {
        match i64::try_from(v) {
            Ok(s) => Integer::Small(s),
            Err(_) => Integer::Large(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

// the representation is normalized, so hashing the variant payload agrees
// with equality
impl core::hash::Hash for Integer {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        match self {
            Integer::Small(x) => x.hash(state),
            Integer::Large(b) => b.hash(state),
        }
    }
}

impl PartialEq for Integer {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a == b,
            (Integer::Large(a), Integer::Large(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Integer {}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl<'a> Add<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn add(self, rhs: &'a Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return Integer::Small(s);
            }
        }
        Integer::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl<'a> Sub<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn sub(self, rhs: &'a Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                return Integer::Small(s);
            }
        }
        Integer::from_big(self.to_bigint() - rhs.to_bigint())
    }
}

impl<'a> Mul<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn mul(self, rhs: &'a Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_mul(*b) {
                return Integer::Small(s);
            }
        }
        Integer::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match self {
            Integer::Small(s) => match s.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::from_big(-BigInt::from(*s)),
            },
            Integer::Large(b) => Integer::from_big(-b),
        }
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl Add for Integer {
    type Output = Integer;
    fn add(self, rhs: Integer) -> Integer {
        &self + &rhs
    }
}

impl Mul for Integer {
    type Output = Integer;
    fn mul(self, rhs: Integer) -> Integer {
        &self * &rhs
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::ONE
    }
}

impl core::str::FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;

    /// Decimal, with an optional sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<BigInt>().map(Integer::from_big)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(s) => write!(f, "{s}"),
            Integer::Large(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_spills_to_large() {
        let a = Integer::from(i64::MAX);
        let b = &a + &Integer::ONE;
        assert!(matches!(b, Integer::Large(_)));
        let c = &b - &Integer::ONE;
        assert_eq!(c, Integer::Small(i64::MAX));
        let m = -&Integer::Small(i64::MIN);
        assert_eq!(m.to_bigint(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn div_rem_min_by_minus_one() {
        let (q, r) = Integer::Small(i64::MIN).div_rem(&Integer::Small(-1));
        assert_eq!(q.to_bigint(), -BigInt::from(i64::MIN));
        assert!(r.is_zero());
    }

    proptest! {
        #[test]
        fn agrees_with_bigint(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Integer::from(a), Integer::from(b));
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!((&x + &y).to_bigint(), &ba + &bb);
            prop_assert_eq!((&x - &y).to_bigint(), &ba - &bb);
            prop_assert_eq!((&x * &y).to_bigint(), &ba * &bb);
            prop_assert_eq!(x.cmp(&y), ba.cmp(&bb));
            if b != 0 {
                let (q, r) = x.div_rem(&y);
                prop_assert_eq!(&(&q * &y) + &r, x.clone());
                prop_assert!(r.abs() < y.abs());
            }
        }
    }
}
