//! Exact scalar field used for every rational coordinate in the crate.
//!
//! The combinatorics never touches floating point. Any exact ordered field
//! implementation works; the crate ships impls for the machine-width
//! rationals (which panic on overflow) and for arbitrary-precision
//! `BigRational`, which is the default through [`crate::Rational`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive};

pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + FromStr + Signed + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    /// `n / d`; panics if `d == 0`.
    fn from_frac(n: i64, d: i64) -> Self;

    fn is_integral(&self) -> bool;

    /// The value as an `i64` when it is an integer that fits.
    fn to_int(&self) -> Option<i64>;

    /// Denominator in lowest terms, when it fits an `i64`.
    fn denom_i64(&self) -> Option<i64>;

    fn half() -> Self {
        Self::from_frac(1, 2)
    }
}

macro_rules! impl_machine_ratio {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            fn from_int(n: i64) -> Self {
                Ratio::from_integer(n as $t)
            }
            fn from_frac(n: i64, d: i64) -> Self {
                Ratio::new(n as $t, d as $t)
            }
            fn is_integral(&self) -> bool {
                self.is_integer()
            }
            fn to_int(&self) -> Option<i64> {
                if self.is_integer() {
                    i64::try_from(*self.numer()).ok()
                } else {
                    None
                }
            }
            fn denom_i64(&self) -> Option<i64> {
                i64::try_from(*self.denom()).ok()
            }
        }
    };
}

impl_machine_ratio!(i64);
impl_machine_ratio!(i128);

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }
    fn from_frac(n: i64, d: i64) -> Self {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
    fn to_int(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
    fn denom_i64(&self) -> Option<i64> {
        self.denom().to_i64()
    }
}

/// Parses `"a"` or `"a/b"` into a scalar.
pub fn parse_scalar<T: Scalar>(s: &str) -> Option<T> {
    T::from_str(s.trim()).ok()
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Pairing of an integer vector with a rational one.
pub fn dot_int<T: Scalar>(a: &[i64], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, y)| acc + T::from_int(x) * y.clone())
}

pub fn to_scalars<T: Scalar>(v: &[i64]) -> Vec<T> {
    v.iter().map(|&x| T::from_int(x)).collect()
}

pub fn format_vec<T: Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
