//! Scalar abstraction shared by the two backends.
//!
//! The invariant-geometry backend computes over arbitrary-precision rationals
//! so that curvature identities can be asserted as exact equalities; the
//! coordinate-chart backend computes over f64. Everything downstream is
//! generic over this trait.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact square root if representable in this scalar type.
    fn try_sqrt(&self) -> Option<Self>;
    /// True for backends where `==` is exact mathematics, false for floats.
    fn exact() -> bool;

    /// Zero test against a tolerance: exact backends ignore the tolerance.
    fn is_zero_tol(&self, tol: &Self) -> bool {
        if Self::exact() {
            self.is_zero()
        } else {
            self.abs().to_f64() <= tol.to_f64()
        }
    }
}

fn bigint_exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r.clone() * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn try_sqrt(&self) -> Option<Self> {
        // BigRational is stored reduced, so a rational square has a perfect
        // square numerator and denominator.
        let num = bigint_exact_sqrt(self.numer())?;
        let den = bigint_exact_sqrt(self.denom())?;
        Some(BigRational::new(num, den))
    }
    fn exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn try_sqrt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }
    fn exact() -> bool {
        false
    }
}

/// Exact rational scalar used by the invariant-geometry backend.
pub type Rat = BigRational;

/// Shorthand for small rational literals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::from_ratio(num, den)
}

/// Deterministic 64-bit linear congruential generator (Knuth's MMIX
/// constants) behind every sampled input: fiber points, random rational
/// geometries, random torsion forms. A hand-rolled generator keeps reports
/// byte-stable across toolchain and dependency upgrades, and its raw bits
/// feed exact rational constructions directly.
#[derive(Debug, Clone)]
pub struct DetRng {
    state: u64,
}

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    /// Uniform integer in lo..=hi; spans must be small against 2^48.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + ((self.next_u64() >> 16) % span) as i64
    }

    /// Small random rational with numerator in lo..=hi over a fixed denominator.
    pub fn rat_in<S: Scalar>(&mut self, lo: i64, hi: i64, den: i64) -> S {
        S::from_ratio(self.int_in(lo, hi), den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_on_perfect_squares() {
        assert_eq!(rat(9, 4).try_sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).try_sqrt(), None);
        assert_eq!(rat(-4, 1).try_sqrt(), None);
        assert_eq!(rat(0, 5).try_sqrt(), Some(rat(0, 1)));
    }

    #[test]
    fn exactness_split() {
        assert!(Rat::exact());
        assert!(!f64::exact());
        let tiny = 1e-12_f64;
        assert!(tiny.is_zero_tol(&1e-9));
        assert!(!rat(1, 1_000_000_000_000).is_zero_tol(&Rat::from_ratio(1, 1_000_000_000)));
    }
}
