//! Scalar semirings: complex doubles for FdHilb and booleans for Rel.

use std::fmt::Debug;

use num_complex::Complex64;

/// A commutative semiring with an involutive conjugation.
///
/// Complex numbers give finite-dimensional Hilbert spaces; booleans under
/// (OR, AND) give finite sets and relations. Nothing here needs subtraction.
pub trait Scalar: Copy + Clone + Debug + PartialEq + Send + Sync + 'static {
    /// Short name used in file formats and CLI output.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn conj(self) -> Self;

    /// Distance used for equality checks: absolute value of the difference
    /// for complex entries, 0 or 1 for booleans.
    fn dist(self, rhs: Self) -> f64;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Scalar for Complex64 {
    const NAME: &'static str = "complex";

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self * rhs
    }
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn dist(self, rhs: Self) -> f64 {
        (self - rhs).norm()
    }
}

impl Scalar for bool {
    const NAME: &'static str = "bool";

    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self | rhs
    }
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self & rhs
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    fn dist(self, rhs: Self) -> f64 {
        if self == rhs {
            0.0
        } else {
            1.0
        }
    }
}

/// Shorthand for building complex scalars.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
