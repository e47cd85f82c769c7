//! Real scalar backings: exact rationals and 64-bit floats.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Relative tolerance for float-mode scalar assertions in the algebra kernel.
pub const ALGEBRA_TOLERANCE: f64 = 1e-12;

/// Tolerance for float-mode probability comparisons.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// Real field used as amplitude coefficients.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True for exact rationals.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero in exact mode; `|self| <= 1e-12 * scale` in float mode.
    fn is_negligible(&self, scale: &Self) -> bool;

    /// Exact equality, or relative closeness within `tol` for floats.
    fn close_to(&self, other: &Self, tol: f64) -> bool;

    /// Square root, if representable (always for floats, perfect squares for rationals).
    fn sqrt(&self) -> Option<Self>;

    /// Canonical text form: `p/q` or `p` for rationals, shortest round-trip for floats.
    fn to_canonical_string(&self) -> String {
        alloc::format!("{self}")
    }

    /// `out[k] += sign * a[i] * b[j]` for `table[i * n + j] = (k, sign)`.
    fn structured_product(a: &[Self], b: &[Self], table: &[(usize, i8)]) -> Vec<Self> {
        let n = a.len();
        let mut out = vec![Self::zero(); n];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let (k, sign) = table[i * n + j];
                let term = ai.clone() * bj.clone();
                let acc = core::mem::replace(&mut out[k], Self::zero());
                out[k] = if sign > 0 { acc + term } else { acc - term };
            }
        }
        out
    }
}

/// Numerators over the least common denominator.
fn over_common_denominator(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = v.iter().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
    let nums = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (nums, den)
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => ToPrimitive::to_f64(self).unwrap_or(f64::NAN),
        }
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn structured_product(a: &[Self], b: &[Self], table: &[(usize, i8)]) -> Vec<Self> {
        let n = a.len();
        let (an, ad) = over_common_denominator(a);
        let (bn, bd) = over_common_denominator(b);
        let mut out = vec![BigInt::zero(); n];
        for (i, ai) in an.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in bn.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let (k, sign) = table[i * n + j];
                let term = ai * bj;
                if sign > 0 {
                    out[k] += term;
                } else {
                    out[k] -= term;
                }
            }
        }
        let den = ad * bd;
        out.into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect()
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| Rational::new(n, d))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        libm::fabs(*self) <= ALGEBRA_TOLERANCE * libm::fabs(*scale)
    }

    fn close_to(&self, other: &Self, tol: f64) -> bool {
        let bound = 1.0f64.max(libm::fabs(*self)).max(libm::fabs(*other));
        libm::fabs(self - other) <= tol * bound
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| libm::sqrt(*self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_for_perfect_squares() {
        assert_eq!(
            Rational::from_ratio(9, 4).sqrt(),
            Some(Rational::from_ratio(3, 2))
        );
        assert_eq!(Rational::from_ratio(2, 1).sqrt(), None);
        assert_eq!(Rational::from_ratio(-1, 1).sqrt(), None);
    }

    #[test]
    fn float_negligibility_is_relative() {
        assert!(1e-13f64.is_negligible(&1.0));
        assert!(!1e-13f64.is_negligible(&1e-3));
        assert!(0.0f64.is_negligible(&0.0));
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Rational::from_ratio(2, -4).to_canonical_string(), "-1/2");
        assert_eq!(Rational::from_i64(3).to_canonical_string(), "3");
        assert_eq!(0.5f64.to_canonical_string(), "0.5");
    }
}
