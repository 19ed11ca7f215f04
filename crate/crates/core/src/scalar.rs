//! Scalar abstractions shared by every algebraic container in the crate.
//!
//! [`Ring`] is the minimal interface used by word combinations and truncated
//! series (exact integers, rationals, Laurent polynomials in `h`, floats).
//! [`RationalAlgebra`] adds the embedding of the rationals, and [`Scalar`] is
//! an ordered field used for point evaluation (`f32`, `f64`, exact rationals).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Commutative ring with unit, as used for coefficients.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// A ring containing a copy of the rationals.
pub trait RationalAlgebra: Ring {
    fn from_rational(r: &Rational) -> Self;
}

/// Ordered field used by the numeric evaluators.
pub trait Scalar: RationalAlgebra + Num + Signed + PartialOrd + ToPrimitive {
    /// Lossy conversion used for tail bounds and reporting.
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Ring for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Ring for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl RationalAlgebra for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for Rational {}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Ring for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
        }

        impl RationalAlgebra for $t {
            fn from_rational(r: &Rational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $t
            }
        }

        impl Scalar for $t {}
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// `base^exp` by repeated squaring, for any ring.
pub fn pow<R: Ring>(base: &R, mut exp: u64) -> R {
    let mut acc = R::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}
