//! Exact integers with an inline fast path.
//!
//! Values that fit in an `i64` are stored inline; everything else spills into a
//! [`BigInt`]. The representation is canonical, so derived equality and hashing
//! are sound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn norm(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    /// True for `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::norm(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(r) = s.checked_add(p) {
                    *self = Int::Small(r);
                    return;
                }
            }
        }
        let r = self.to_big() + a.to_big() * b.to_big();
        *self = Int::norm(r);
    }

    /// Floor division.
    pub fn div_floor(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                Int::Small(a.div_floor(b))
            }
            _ => Int::norm(self.to_big().div_floor(&d.to_big())),
        }
    }

    /// Least nonnegative residue modulo `|d|`.
    pub fn mod_floor(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if *b != i64::MIN => Int::Small(a.rem_euclid(b.abs())),
            _ => {
                let m = d.to_big().abs();
                Int::norm(self.to_big().mod_floor(&m))
            }
        }
    }

    /// Quotient rounded to the nearest integer (ties toward minus infinity).
    pub fn div_round(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b))
                if a.unsigned_abs() < (1 << 60) && b.unsigned_abs() < (1 << 60) =>
            {
                let (a, b) = if *b < 0 { (-*a, -*b) } else { (*a, *b) };
                Int::Small((2 * a + b).div_euclid(2 * b))
            }
            _ => {
                let (mut a, mut b) = (self.to_big(), d.to_big());
                if b.is_negative() {
                    a = -a;
                    b = -b;
                }
                let two = BigInt::from(2);
                Int::norm((&two * a + &b).div_floor(&(two * b)))
            }
        }
    }

    /// Exact division; panics in debug builds if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                debug_assert_eq!(a % b, 0);
                Int::Small(a / b)
            }
            _ => {
                let (q, r) = self.to_big().div_rem(&d.to_big());
                debug_assert!(r.is_zero());
                Int::norm(q)
            }
        }
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.mod_floor(self).is_zero()
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => {
                Int::Small(a.gcd(b))
            }
            _ => Int::norm(self.to_big().gcd(&other.to_big())),
        }
    }

    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::ZERO;
        }
        let g = self.gcd(other);
        (self.div_exact(&g) * other.clone()).abs()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g = gcd(self, other) >= 0`.
    pub fn ext_gcd(&self, other: &Int) -> (Int, Int, Int) {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if a.unsigned_abs() < (1 << 62) && b.unsigned_abs() < (1 << 62) {
                let e = a.extended_gcd(b);
                let (g, s, t) = if e.gcd < 0 { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
                return (Int::Small(g), Int::Small(s), Int::Small(t));
            }
        }
        let e = self.to_big().extended_gcd(&other.to_big());
        let (g, s, t) = if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
        (Int::norm(g), Int::norm(s), Int::norm(t))
    }

    /// The largest odd divisor of `|self|`; zero maps to zero.
    pub fn odd_part(&self) -> Int {
        if self.is_zero() {
            return Int::ZERO;
        }
        let mut b = self.to_big().abs();
        let tz = b.trailing_zeros().unwrap_or(0);
        b >>= tz;
        Int::norm(b)
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        Int::norm(BigInt::from(v))
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int::from(v as u64)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::norm(v)
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(v)),
            },
            Int::Big(b) => Int::norm(-b),
        }
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        -(self.clone())
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $checked:ident, $op:tt) => {
        impl $tr<&Int> for &Int {
            type Output = Int;
            fn $f(self, rhs: &Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(r) = a.$checked(*b) {
                        return Int::Small(r);
                    }
                }
                Int::norm(self.to_big() $op rhs.to_big())
            }
        }
        impl $tr<Int> for Int {
            type Output = Int;
            fn $f(self, rhs: Int) -> Int {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Int> for Int {
            type Output = Int;
            fn $f(self, rhs: &Int) -> Int {
                (&self).$f(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Machine-sized values serialize as JSON numbers, larger ones as decimal strings.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(i64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(v) => Ok(Int::Small(v)),
            Repr::S(s) => s
                .parse::<BigInt>()
                .map(Int::norm)
                .map_err(serde::de::Error::custom),
        }
    }
}
