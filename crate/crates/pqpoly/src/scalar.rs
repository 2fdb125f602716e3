//! Scalar abstraction shared by the exact (big-rational) and floating paths.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact coefficient field: arbitrary-precision rationals, always in lowest
/// terms with positive denominator (maintained by `num-rational`).
pub type Rat = BigRational;

/// Minimal field interface needed by the deformed-polynomial kernels.
///
/// Implemented for `Rat` (exact arithmetic, no rounding) and `f64`
/// (used by the Fourier-transform module, where q = p^{-1}e^{-2k^2} is
/// irrational).
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_int(v: i64) -> Self;

    /// Lossy magnitude estimate, used only for tolerance checks and reports.
    fn approx(&self) -> f64;

    /// Integer power; negative exponents require a nonzero base.
    fn powi(&self, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let base = if e < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * sq.clone();
            }
            sq = sq.clone() * sq;
            n >>= 1;
        }
        acc
    }
}

impl Scalar for Rat {
    fn from_int(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }

    fn approx(&self) -> f64 {
        rat_to_f64(self)
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn approx(&self) -> f64 {
        *self
    }
}

/// Shorthand for a small rational constant.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// n/d as an exact rational.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convert to f64; handles operands outside the f64 exponent range.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational square root, when one exists.
pub fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Rational approximation of sqrt(r) accurate to roughly `digits` decimal
/// digits, by Newton iteration from the f64 seed, truncated to a bounded
/// denominator so later arithmetic stays cheap.
pub fn rat_sqrt_approx(r: &Rat, digits: u32) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    if let Some(exact) = rat_sqrt_exact(r) {
        return Some(exact);
    }
    let seed = rat_to_f64(r).sqrt();
    let mut x = Rat::from_float(seed).unwrap_or_else(|| Rat::one());
    if x.is_zero() {
        x = Rat::one();
    }
    let two = rat(2);
    // Work at a few guard digits beyond the target so the per-iterate
    // truncation cannot hold the residual above the tolerance.
    let guard = BigInt::from(10u32).pow(digits + 12);
    let tol = Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits + 4));
    for _ in 0..200 {
        let next = (x.clone() + r / &x) / two.clone();
        // Truncate each iterate to a bounded denominator so operand sizes
        // stay linear in `digits` instead of doubling every step.
        let next = Rat::new((next.numer() * &guard) / next.denom(), guard.clone());
        let resid = (&next * &next - r).abs() / r.abs();
        x = next;
        if resid < tol {
            break;
        }
    }
    // Final truncation to denominator 10^digits keeps |x - sqrt(r)| within
    // 10^-digits while keeping downstream arithmetic cheap.
    let den = BigInt::from(10u32).pow(digits);
    let scaled = (x.numer() * &den) / x.denom();
    Some(Rat::new(scaled, den))
}
