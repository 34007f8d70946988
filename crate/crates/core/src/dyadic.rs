//! Exact dyadic rationals `numerator / 2^exponent`.
//!
//! Every Fourier coefficient of an `n`-variable Boolean function is an integer
//! multiple of `2^-n` and every level weight an integer multiple of `2^-2n`, so
//! this type carries all spectral quantities without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A value `numerator / 2^exponent` kept in canonical form: the numerator is
/// odd, or zero with exponent 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u64,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u64) -> Self {
        let mut numerator = numerator.into();
        if numerator.is_zero() {
            return Self::zero();
        }
        let tz = numerator.trailing_zeros().unwrap_or(0).min(exponent);
        numerator >>= tz;
        Self {
            numerator,
            exponent: exponent - tz,
        }
    }

    pub fn zero() -> Self {
        Self {
            numerator: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self {
            numerator: value.into(),
            exponent: 0,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.numerator.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self {
            numerator: self.numerator.abs(),
            exponent: self.exponent,
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Numerator scaled to the common exponent `exp >= self.exponent`.
    fn numerator_at(&self, exp: u64) -> BigInt {
        &self.numerator << (exp - self.exponent)
    }

    /// Nearest `f64`, accurate to within a couple of ulps for any magnitude of
    /// numerator or exponent.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let mag = self.numerator.magnitude();
        let bits = mag.bits();
        let shift = bits.saturating_sub(64);
        let top = (mag >> shift).to_u64().expect("at most 64 bits") as f64;
        let value = scale_pow2(top, shift as i64 - self.exponent as i64);
        if self.numerator.sign() == Sign::Minus {
            -value
        } else {
            value
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            self.numerator.clone(),
            BigInt::one() << self.exponent,
        )
    }

    /// `"<numerator>/2^<exponent>"`, the on-disk form used for spectra and
    /// stability polynomials.
    pub fn to_pow2_string(&self) -> String {
        format!("{}/2^{}", self.numerator, self.exponent)
    }
}

/// `x * 2^k` without overflowing intermediate powers.
pub(crate) fn scale_pow2(mut x: f64, mut k: i64) -> f64 {
    const STEP: i64 = 1000;
    while k > STEP {
        x *= 2f64.powi(STEP as i32);
        k -= STEP;
    }
    while k < -STEP {
        x *= 2f64.powi(-STEP as i32);
        k += STEP;
    }
    x * 2f64.powi(k as i32)
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        self.numerator_at(e).cmp(&other.numerator_at(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exponent.max(rhs.exponent);
        Dyadic::new(self.numerator_at(e) + rhs.numerator_at(e), e)
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exponent.max(rhs.exponent);
        Dyadic::new(self.numerator_at(e) - rhs.numerator_at(e), e)
    }
}

impl Mul<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        // product of odd numerators stays odd
        Dyadic::new(
            &self.numerator * &rhs.numerator,
            self.exponent + rhs.exponent,
        )
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -&self.numerator,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic { (&self).$m(&rhs) }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic { (&self).$m(rhs) }
        }
        impl $tr<Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Dyadic> for Dyadic {
    fn sum<I: Iterator<Item = &'a Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| acc + x)
    }
}

/// Reduced fraction `p/q`, or just `p` for integers.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigInt::one() << self.exponent)
        }
    }
}

/// Accepts `p`, `p/q` with `q` a power of two, and `p/2^e`.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a dyadic rational: {s:?}"));
        let (num, den) = match s.split_once('/') {
            None => (s, None),
            Some((p, q)) => (p, Some(q)),
        };
        let numerator: BigInt = num.trim().parse().map_err(|_| bad())?;
        let exponent = match den.map(str::trim) {
            None => 0,
            Some(q) => {
                if let Some(e) = q.strip_prefix("2^") {
                    e.parse::<u64>().map_err(|_| bad())?
                } else {
                    let q: BigInt = q.parse().map_err(|_| bad())?;
                    if !q.is_positive() || q.magnitude().count_ones() != 1 {
                        return Err(bad());
                    }
                    q.trailing_zeros().unwrap_or(0)
                }
            }
        };
        Ok(Dyadic::new(numerator, exponent))
    }
}
