//! Field scalars used by the exact linear algebra.
//!
//! Everything that decides a combinatorial question (flag genericity, cell
//! existence, cell dimension) is written against [`Scalar`] and instantiated
//! with [`crate::Rational`]. The float impls exist for quick numerical
//! cross-checks; their zero test is tolerance based and therefore not exact.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

pub trait Scalar: Clone + Debug + Display + PartialOrd + PartialEq + Num + Signed {
    /// True when arithmetic is exact.
    const EXACT: bool;

    /// Zero test used by pivoting and sign decisions.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-5
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Clone + Integer + Signed + From<i64> + Debug + Display,
{
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(I::from(num), I::from(den))
    }
}

/// Sign of a scalar as -1, 0 or +1.
pub fn sign_of<T: Scalar>(v: &T) -> i8 {
    if v.is_negligible() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}
