//! Exact scalar types.
//!
//! [`Rational`] is the public arbitrary-precision type. The elimination
//! kernels are generic over [`Field`] so that they can first run on
//! [`Q128`], a checked 128-bit fraction, and only fall back to big rationals
//! when an intermediate value overflows.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{LabError, Result};

pub type Rational = BigRational;

/// Parses `"p/q"` or an integer string.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || LabError::input(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(LabError::input(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Field operations that may report overflow by returning `None`.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    /// `other` must be nonzero.
    fn div(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn div(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// Reduced fraction with `i128` parts and positive denominator; every
/// operation is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Q128 {
    num: i128,
    den: i128,
}

impl Q128 {
    pub fn new(num: i128, den: i128) -> Option<Self> {
        if den == 0 || num == i128::MIN || den == i128::MIN {
            return None;
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g > 1 {
            (num / g, den / g)
        } else {
            (num, den)
        };
        if den < 0 {
            num = num.checked_neg()?;
            den = den.checked_neg()?;
        }
        Some(Q128 { num, den })
    }

    pub fn integer(n: i128) -> Self {
        Q128 { num: n, den: 1 }
    }
}

impl Field for Q128 {
    fn zero() -> Self {
        Q128 { num: 0, den: 1 }
    }
    fn one() -> Self {
        Q128 { num: 1, den: 1 }
    }
    fn is_zero(&self) -> bool {
        self.num == 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        if self.den == 1 && o.den == 1 {
            return Some(Q128::integer(
                self.num.checked_add(o.num).filter(|&n| n != i128::MIN)?,
            ));
        }
        if self.den == o.den {
            return Q128::new(self.num.checked_add(o.num)?, self.den);
        }
        let g = self.den.gcd(&o.den);
        let (da, db) = (self.den / g, o.den / g);
        let num = self
            .num
            .checked_mul(db)?
            .checked_add(o.num.checked_mul(da)?)?;
        Q128::new(num, self.den.checked_mul(db)?)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.add(&o.neg()?)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        if self.num == 0 || o.num == 0 {
            return Some(Self::zero());
        }
        if self.den == 1 && o.den == 1 {
            return Some(Q128::integer(
                self.num.checked_mul(o.num).filter(|&n| n != i128::MIN)?,
            ));
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let num = (self.num / g1).checked_mul(o.num / g2)?;
        let den = (self.den / g2).checked_mul(o.den / g1)?;
        if num == i128::MIN {
            return None;
        }
        Some(Q128 { num, den })
    }
    fn div(&self, o: &Self) -> Option<Self> {
        let (mut n, mut d) = (o.den, o.num);
        if d < 0 {
            n = n.checked_neg()?;
            d = d.checked_neg()?;
        }
        self.mul(&Q128 { num: n, den: d })
    }
    fn neg(&self) -> Option<Self> {
        Some(Q128 {
            num: self.num.checked_neg()?,
            den: self.den,
        })
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(Q128 {
            num: q.numer().to_i128()?,
            den: q.denom().to_i128()?,
        })
    }
    fn to_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

/// Returns the result of `small` (a [`Q128`] computation) unless it
/// overflowed, in which case `big` (the [`Rational`] version) is run.
pub fn with_fallback<R>(small: impl FnOnce() -> Option<R>, big: impl FnOnce() -> Option<R>) -> R {
    small()
        .or_else(big)
        .expect("arbitrary-precision arithmetic cannot overflow")
}
