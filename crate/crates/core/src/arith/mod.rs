//! Exact arithmetic: rationals, the ring `Q + Q·π²`, rational intervals and
//! the special numbers the closed forms are built from.

mod pi;
mod special;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use pi::{
    default_pi2_digits, pi2_enclosure, pi2_enclosure_digits, qpi2_sign, qpi2_sign_with, set_default_pi2_digits,
    Pi2Precision, DEFAULT_PI2_DIGITS, MAX_PI2_DIGITS,
};
pub use special::{barnes_g_int, bernoulli_even, harmonic, harmonic2, HarmonicCache};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_f64(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// A closed interval with rational endpoints, `lo ≤ hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("interval endpoints out of order: [{lo}, {hi}]")));
        }
        Ok(RationalInterval { lo, hi })
    }

    /// Interval spanned by two values given in either order.
    pub fn hull(a: Rational, b: Rational) -> Self {
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    pub fn point(v: Rational) -> Self {
        RationalInterval { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `c·I + d`, reordering endpoints when `c < 0`.
    pub fn affine(&self, c: &Rational, d: &Rational) -> Self {
        RationalInterval::hull(c * &self.lo + d, c * &self.hi + d)
    }

    /// Sign shared by every point of the interval, if there is one.
    pub fn strict_sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Exact value `pi2_coeff·π² + const_coeff`.
///
/// π² is irrational, so the representation is unique and equality is
/// component-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiQuadratic {
    pub pi2_coeff: Rational,
    pub const_coeff: Rational,
}

impl PiQuadratic {
    pub fn new(pi2_coeff: Rational, const_coeff: Rational) -> Self {
        PiQuadratic { pi2_coeff, const_coeff }
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Self {
        PiQuadratic::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    pub fn rational(b: Rational) -> Self {
        PiQuadratic::new(Rational::zero(), b)
    }

    pub fn zero() -> Self {
        PiQuadratic::rational(Rational::zero())
    }

    /// ζ(2) = π²/6.
    pub fn zeta2() -> Self {
        PiQuadratic::new(rat(1, 6), Rational::zero())
    }

    /// `S_k = Σ_{n≥k} 1/n² = π²/6 − H_{k−1}^{(2)}`, given `H_{k−1}^{(2)}`.
    pub fn zeta2_tail(h2_prev: &Rational) -> Self {
        PiQuadratic::new(rat(1, 6), -h2_prev)
    }

    pub fn is_zero(&self) -> bool {
        self.pi2_coeff.is_zero() && self.const_coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.pi2_coeff.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PiQuadratic::new(&self.pi2_coeff * c, &self.const_coeff * c)
    }

    /// Enclosure of the value from a `digits`-digit enclosure of π².
    pub fn enclose(&self, digits: u32) -> RationalInterval {
        pi2_enclosure_digits(digits).affine(&self.pi2_coeff, &self.const_coeff)
    }

    /// Rational approximation with absolute error at most
    /// `|pi2_coeff|·10^-digits`.
    pub fn approx(&self, digits: u32) -> Rational {
        if self.is_rational() {
            return self.const_coeff.clone();
        }
        self.enclose(digits).midpoint()
    }

    /// Float rendering through the default π² enclosure.
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.approx(default_pi2_digits()))
    }

    pub fn sign(&self) -> Result<Sign> {
        qpi2_sign(self)
    }
}

impl fmt::Display for PiQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·π² + ({})", self.pi2_coeff, self.const_coeff)
    }
}

impl Add for PiQuadratic {
    type Output = PiQuadratic;
    fn add(self, rhs: PiQuadratic) -> PiQuadratic {
        PiQuadratic::new(self.pi2_coeff + rhs.pi2_coeff, self.const_coeff + rhs.const_coeff)
    }
}

impl<'a> Add<&'a PiQuadratic> for &'a PiQuadratic {
    type Output = PiQuadratic;
    fn add(self, rhs: &PiQuadratic) -> PiQuadratic {
        PiQuadratic::new(&self.pi2_coeff + &rhs.pi2_coeff, &self.const_coeff + &rhs.const_coeff)
    }
}

impl Sub for PiQuadratic {
    type Output = PiQuadratic;
    fn sub(self, rhs: PiQuadratic) -> PiQuadratic {
        PiQuadratic::new(self.pi2_coeff - rhs.pi2_coeff, self.const_coeff - rhs.const_coeff)
    }
}

impl<'a> Sub<&'a PiQuadratic> for &'a PiQuadratic {
    type Output = PiQuadratic;
    fn sub(self, rhs: &PiQuadratic) -> PiQuadratic {
        PiQuadratic::new(&self.pi2_coeff - &rhs.pi2_coeff, &self.const_coeff - &rhs.const_coeff)
    }
}

impl Neg for PiQuadratic {
    type Output = PiQuadratic;
    fn neg(self) -> PiQuadratic {
        PiQuadratic::new(-self.pi2_coeff, -self.const_coeff)
    }
}

impl Add<Rational> for PiQuadratic {
    type Output = PiQuadratic;
    fn add(self, rhs: Rational) -> PiQuadratic {
        PiQuadratic::new(self.pi2_coeff, self.const_coeff + rhs)
    }
}

impl Mul<&Rational> for &PiQuadratic {
    type Output = PiQuadratic;
    fn mul(self, rhs: &Rational) -> PiQuadratic {
        self.scale(rhs)
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_quadratic_ring_is_componentwise() {
        let a = PiQuadratic::from_ratios((2, 3), (-4, 1));
        let b = PiQuadratic::from_ratios((2, 3), (-5, 1));
        assert_eq!(&a - &b, PiQuadratic::from_ratios((0, 1), (1, 1)));
        assert_eq!(&a + &b, PiQuadratic::from_ratios((4, 3), (-9, 1)));
        assert_eq!(a.scale(&rat(3, 2)), PiQuadratic::from_ratios((1, 1), (-6, 1)));
        assert_ne!(a, b);
    }

    #[test]
    fn rational_is_canonical() {
        let z = rat(0, 7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
        let r = rat(6, -4);
        assert_eq!((r.numer().clone(), r.denom().clone()), (BigInt::from(-3), BigInt::from(2)));
    }

    #[test]
    fn interval_affine_handles_negative_scale() {
        let i = RationalInterval::new(int(1), int(2)).unwrap();
        let j = i.affine(&int(-3), &int(1));
        assert_eq!(j, RationalInterval::new(int(-5), int(-2)).unwrap());
        assert_eq!(j.strict_sign(), Some(Sign::Negative));
        assert!(RationalInterval::new(int(2), int(1)).is_err());
    }

    #[test]
    fn float_rendering_of_zeta2() {
        let z = PiQuadratic::zeta2().to_f64();
        assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
    }
}
