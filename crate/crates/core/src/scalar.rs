//! Coefficient types for exact ring arithmetic.
//!
//! Cyclotomic integers and Walsh spectra are generic over the integer type that
//! stores their coefficients. `i64` covers every field size the toolkit builds
//! by default; `i128` and `BigInt` are available when products grow past that.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as a coefficient.
pub trait Scalar:
    Clone + Debug + Display + Eq + Ord + Hash + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_u64_exact(v: u64) -> Self {
        Self::from_u64(v).expect("value does not fit the coefficient type")
    }

    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("value does not fit the coefficient type")
    }
}

impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for BigInt {}
