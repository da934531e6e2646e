//! Exact scalar rings.
//!
//! Everything in this crate computes over exact coefficients; floating point is
//! deliberately not implemented. The two rings used throughout are arbitrary
//! precision integers and rationals, aliased at the crate root.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// An exact commutative ring with signs and exact division where defined.
pub trait Scalar: Clone + Eq + Hash + Debug + Display + Signed + 'static {
    fn from_int(v: i64) -> Self;

    /// Exact division.
    ///
    /// # Panics
    ///
    /// Panics if `d` is zero or does not divide `self` exactly.
    fn exact_div(&self, d: &Self) -> Self;
}

impl Scalar for BigInt {
    fn from_int(v: i64) -> Self {
        BigInt::from(v)
    }

    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact integer division {self} / {d}");
        q
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero");
        self / d
    }
}

impl Scalar for i128 {
    fn from_int(v: i64) -> Self {
        v as i128
    }

    fn exact_div(&self, d: &Self) -> Self {
        assert!(*d != 0 && self % d == 0, "inexact integer division {self} / {d}");
        self / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let a = BigInt::from(84);
        assert_eq!(a.exact_div(&BigInt::from(-7)), BigInt::from(-12));
        let r = BigRational::from_int(3).exact_div(&BigRational::from_int(2));
        assert_eq!(r, BigRational::new(BigInt::from(3), BigInt::from(2)));
        assert_eq!(10i128.exact_div(&5), 2);
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        let _ = BigInt::from(5).exact_div(&BigInt::from(2));
    }
}
