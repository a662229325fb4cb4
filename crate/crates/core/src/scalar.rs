//! The coefficient field.
//!
//! Every algebraic routine in this crate is generic over [`Scalar`]. The
//! intended instantiation is [`crate::Rational`] (arbitrary precision); the
//! `Ratio<i64>` alias is available for quick experiments where overflow is
//! not a concern. Floating point types technically satisfy the bound, but
//! the verification routines compare for exact equality, so they are not
//! supported.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{FromPrimitive, Signed};

/// A field of characteristic zero with exact equality.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Signed + FromPrimitive + FromStr + Send + Sync + 'static
{
    /// `n` as a field element.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }

    /// `1/n!`.
    fn inv_factorial(n: usize) -> Self {
        let mut f = Self::one();
        for k in 2..=n {
            f = f * Self::from_int(k as i64);
        }
        Self::one() / f
    }

    /// `(-1)^k` as a field element.
    fn sign(negative: bool) -> Self {
        if negative {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + Signed
        + FromPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Integer factorial, used by the combinatorial formulas.
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
