//! Exact scalar types shared by every module.
//!
//! All arithmetic in this crate is exact: coefficients are integers of some
//! width (`i64` for the common case, [`num_bigint::BigInt`] when growth is a
//! concern). The [`Scalar`] bound collects what the algorithms need.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// An exact integer type usable as a coefficient.
pub trait Scalar:
    Clone + Debug + Display + Ord + Hash + Send + Sync + Signed + Integer + FromPrimitive + 'static
{
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("scalar must represent every i64")
    }

    /// Extended gcd: returns `(g, x, y)` with `g = x*a + y*b` and `g >= 0`.
    fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let e = a.extended_gcd(b);
        if e.gcd.is_negative() {
            (-e.gcd, -e.x, -e.y)
        } else {
            (e.gcd, e.x, e.y)
        }
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + Ord + Hash + Send + Sync + Signed + Integer + FromPrimitive + 'static
{
}
