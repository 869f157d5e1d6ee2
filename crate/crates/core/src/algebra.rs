//! The commutative-ring interface shared by scalars, Laurent polynomials and
//! truncated power series.
//!
//! Elements carry enough context to produce their own zero and one, so the
//! generic code in [`crate::matrix`] and the polynomial evaluators never need
//! a separate ring object.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

pub trait CommRing:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The additive identity of the ring `self` lives in.
    fn zero_like(&self) -> Self;

    /// The multiplicative identity of the ring `self` lives in.
    fn one_like(&self) -> Self;

    /// Image of an integer under the canonical map `Z -> R`.
    fn int_like(&self, n: &BigInt) -> Self;

    fn is_zero_elem(&self) -> bool;

    /// Multiplicative inverse, if `self` is a unit.
    fn try_inverse(&self) -> Option<Self>;

    /// Whether `self` and `other` live in the same ring, so that mixing them
    /// in arithmetic is meaningful.
    fn compatible(&self, other: &Self) -> bool {
        let _ = other;
        true
    }

    fn small_int_like(&self, n: i64) -> Self {
        self.int_like(&BigInt::from(n))
    }

    fn is_one_elem(&self) -> bool {
        (self.clone() - self.one_like()).is_zero_elem()
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}
