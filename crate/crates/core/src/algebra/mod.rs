//! Exact scalar arithmetic: rationals, cyclotomic fields, Laurent
//! polynomials with their fraction field, generic matrices with exact
//! determinants, integer Smith normal form and torsion unit classes.

pub mod cyclotomic;
pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod snf;
pub mod units;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use laurent::{LaurentPoly, LaurentRational};
pub use matrix::Matrix;
pub use rational::Rational;
pub use snf::{smith_normal_form, Snf};
pub use units::{TorsionScalar, TorsionValue, UnitGroupSpec};

use std::fmt::Debug;

/// Commutative ring operations on owned values.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Ring in which exact division (when it succeeds) is available.
/// `exact_div` panics if the division is not exact; Bareiss elimination
/// only divides by earlier pivots, where exactness is guaranteed.
pub trait IntegralDomain: Ring {
    fn exact_div(&self, other: &Self) -> Self;
}

pub trait Field: IntegralDomain {
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}
