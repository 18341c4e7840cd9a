//! Coefficient rings: the integers, the rationals and prime fields.
//!
//! Ring elements do not know which ring they belong to; every operation goes
//! through a ring context implementing [`Ring`]. This keeps prime-field
//! elements plain `u64`s while the modulus lives in the context.

use core::cmp::Ordering;
use core::fmt::{self, Debug, Display};

use alloc::string::{String, ToString};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::integer::Integer;

/// The coefficient ring `k` of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Coefficients {
    /// Validates the coefficient choice (`p` must be a prime below `2^32`).
    pub fn validate(self) -> Result<Self, Error> {
        if let Coefficients::PrimeField(p) = self {
            if p > u32::MAX as u64 || !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(self)
    }

    pub fn two_is_invertible(self) -> bool {
        match self {
            Coefficients::Integers => false,
            Coefficients::Rationals => true,
            Coefficients::PrimeField(p) => p != 2,
        }
    }

    /// True iff the integer `d` maps to a unit of `k`.
    pub fn is_unit_image(self, d: &Integer) -> bool {
        match self {
            Coefficients::Integers => d.abs().is_one(),
            Coefficients::Rationals => !d.is_zero(),
            Coefficients::PrimeField(p) => d.mod_u64(p) != 0,
        }
    }
}

impl Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("Z"),
            Coefficients::Rationals => f.write_str("Q"),
            Coefficients::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A Euclidean domain, accessed through a context object.
///
/// Fields are Euclidean with exact division and every nonzero element a unit,
/// so the Smith normal form machinery degenerates to Gaussian elimination.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + Send + Sync + Debug {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn coefficients(&self) -> Coefficients;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_integer(&self, n: &Integer) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_integer(&Integer::from(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// `a = q*b + r` with `r` zero or smaller than `b` in the Euclidean size.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Compares Euclidean sizes; zero is never passed.
    fn size_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// A unit `u` such that `u*a` is the canonical associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// The order of a nonzero non-unit invariant factor, as a positive integer.
    /// Only the integers have such elements.
    fn torsion_order(&self, d: &Self::Elem) -> Option<Integer>;

    /// Exact quotient `a / b` when `b` divides `a`.
    fn divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(b) {
            return if self.is_zero(a) { Some(self.zero()) } else { None };
        }
        let (q, r) = self.div_rem(a, b);
        self.is_zero(&r).then_some(q)
    }

    /// Canonical representative of `a` modulo the ideal `(d)`.
    fn reduce_mod(&self, a: &Self::Elem, d: &Self::Elem) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = Integer;

    fn coefficients(&self) -> Coefficients {
        Coefficients::Integers
    }
    fn zero(&self) -> Integer {
        Integer::ZERO
    }
    fn one(&self) -> Integer {
        Integer::ONE
    }
    fn from_integer(&self, n: &Integer) -> Integer {
        n.clone()
    }
    fn add(&self, a: &Integer, b: &Integer) -> Integer {
        a + b
    }
    fn sub(&self, a: &Integer, b: &Integer) -> Integer {
        a - b
    }
    fn mul(&self, a: &Integer, b: &Integer) -> Integer {
        a * b
    }
    fn neg(&self, a: &Integer) -> Integer {
        -a
    }
    fn is_zero(&self, a: &Integer) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &Integer) -> bool {
        a.abs().is_one()
    }
    fn div_rem(&self, a: &Integer, b: &Integer) -> (Integer, Integer) {
        a.div_rem(b)
    }
    fn size_cmp(&self, a: &Integer, b: &Integer) -> Ordering {
        a.abs().cmp(&b.abs())
    }
    fn normalizing_unit(&self, a: &Integer) -> Integer {
        if a.is_negative() {
            Integer::from(-1)
        } else {
            Integer::ONE
        }
    }
    fn inverse(&self, a: &Integer) -> Option<Integer> {
        self.is_unit(a).then(|| a.clone())
    }
    fn torsion_order(&self, d: &Integer) -> Option<Integer> {
        let d = d.abs();
        (!d.is_zero() && !d.is_one()).then_some(d)
    }
    fn reduce_mod(&self, a: &Integer, d: &Integer) -> Integer {
        if d.is_zero() {
            a.clone()
        } else {
            a.rem_euclid(d)
        }
    }
    fn format(&self, a: &Integer) -> String {
        a.to_string()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = BigRational;

    fn coefficients(&self) -> Coefficients {
        Coefficients::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_integer(&self, n: &Integer) -> BigRational {
        BigRational::from_integer(n.to_bigint())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn size_cmp(&self, _a: &BigRational, _b: &BigRational) -> Ordering {
        Ordering::Equal
    }
    fn normalizing_unit(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn torsion_order(&self, _d: &BigRational) -> Option<Integer> {
        None
    }
    fn reduce_mod(&self, a: &BigRational, d: &BigRational) -> BigRational {
        if d.is_zero() {
            a.clone()
        } else {
            BigRational::zero()
        }
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            let mut s = a.numer().to_string();
            s.push('/');
            s.push_str(&a.denom().abs().to_string());
            s
        }
    }
}

/// `Z/p` for a prime `p < 2^32`; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        Coefficients::PrimeField(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn coefficients(&self) -> Coefficients {
        Coefficients::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_integer(&self, n: &Integer) -> u64 {
        n.mod_u64(self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        let inv = self.inverse(b).expect("division by zero in prime field");
        (self.mul(a, &inv), 0)
    }
    fn size_cmp(&self, _a: &u64, _b: &u64) -> Ordering {
        Ordering::Equal
    }
    fn normalizing_unit(&self, a: &u64) -> u64 {
        self.inverse(a).expect("nonzero element")
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn torsion_order(&self, _d: &u64) -> Option<Integer> {
        None
    }
    fn reduce_mod(&self, a: &u64, d: &u64) -> u64 {
        if *d == 0 {
            *a
        } else {
            0
        }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}
