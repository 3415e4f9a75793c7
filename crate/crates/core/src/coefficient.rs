//! Exact rational coefficients with a machine-integer fast path.
//!
//! Values that are integers fitting in an `i64` are stored inline; everything
//! else (overflowing integers, proper fractions) lives in a `BigRational`.
//! The representation is canonical: a `Big` value is never an `i64`-sized
//! integer, so derived structural equality coincides with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Small(i64),
    Big(BigRational),
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Small(0)
    }

    pub fn one() -> Self {
        Coefficient::Small(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Coefficient::Small(v)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Coefficient::Small(s),
            None => Coefficient::Big(BigRational::from_integer(v)),
        }
    }

    /// `num / den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_integer() {
            if let Some(s) = r.numer().to_i64() {
                return Coefficient::Small(s);
            }
        }
        Coefficient::Big(r)
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Coefficient::Small(v) => BigRational::from_integer(BigInt::from(*v)),
            Coefficient::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coefficient::Small(1))
    }

    pub fn is_integral(&self) -> bool {
        match self {
            Coefficient::Small(_) => true,
            Coefficient::Big(r) => r.is_integer(),
        }
    }

    /// The integer value, or `None` when the denominator is not 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Coefficient::Small(v) => Some(BigInt::from(*v)),
            Coefficient::Big(r) if r.is_integer() => Some(r.numer().clone()),
            Coefficient::Big(_) => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coefficient::Small(v) => Some(*v),
            Coefficient::Big(_) => None,
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Coefficient::Small(v) => v.signum() as i32,
            Coefficient::Big(r) => {
                if r.is_negative() {
                    -1
                } else if r.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        match self {
            Coefficient::Small(0) => None,
            Coefficient::Small(1) => Some(Coefficient::Small(1)),
            Coefficient::Small(-1) => Some(Coefficient::Small(-1)),
            other => Some(Self::from_rational(other.to_rational().recip())),
        }
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        if let (Coefficient::Small(a), Coefficient::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return Coefficient::Small(s);
            }
        }
        Self::from_rational(self.to_rational() + rhs.to_rational())
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        if let (Coefficient::Small(a), Coefficient::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                return Coefficient::Small(s);
            }
        }
        Self::from_rational(self.to_rational() - rhs.to_rational())
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        if let (Coefficient::Small(a), Coefficient::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_mul(*b) {
                return Coefficient::Small(s);
            }
        }
        Self::from_rational(self.to_rational() * rhs.to_rational())
    }

    /// Panics on division by zero.
    pub fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero coefficient");
        if let (Coefficient::Small(a), Coefficient::Small(b)) = (self, rhs) {
            if *b != 0 && a % b == 0 {
                if let Some(q) = a.checked_div(*b) {
                    return Coefficient::Small(q);
                }
            }
        }
        Self::from_rational(self.to_rational() / rhs.to_rational())
    }

    pub fn neg_ref(&self) -> Self {
        match self {
            Coefficient::Small(v) => match v.checked_neg() {
                Some(n) => Coefficient::Small(n),
                None => Self::from_rational(-self.to_rational()),
            },
            Coefficient::Big(r) => Self::from_rational(-r.clone()),
        }
    }

    /// `self += rhs` without cloning in the common small case.
    pub fn add_assign_ref(&mut self, rhs: &Self) {
        if let (Coefficient::Small(a), Coefficient::Small(b)) = (&*self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                *self = Coefficient::Small(s);
                return;
            }
        }
        *self = self.add_ref(rhs);
    }
}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::zero()
    }
}

impl From<i64> for Coefficient {
    fn from(v: i64) -> Self {
        Coefficient::Small(v)
    }
}

impl From<BigInt> for Coefficient {
    fn from(v: BigInt) -> Self {
        Coefficient::from_bigint(v)
    }
}

impl PartialOrd for Coefficient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coefficient {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coefficient::Small(a), Coefficient::Small(b)) => a.cmp(b),
            _ => self.to_rational().cmp(&other.to_rational()),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Small(v) => write!(f, "{v}"),
            Coefficient::Big(r) => write!(f, "{r}"),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Coefficient> for &Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: &Coefficient) -> Coefficient {
                self.$imp(rhs)
            }
        }
        impl $tr for Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: Coefficient) -> Coefficient {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        self.neg_ref()
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        self.neg_ref()
    }
}

impl Zero for Coefficient {
    fn zero() -> Self {
        Coefficient::zero()
    }
    fn is_zero(&self) -> bool {
        Coefficient::is_zero(self)
    }
}

impl One for Coefficient {
    fn one() -> Self {
        Coefficient::one()
    }
}
