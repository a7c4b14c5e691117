//! Exact rational scalars, dense matrices and minor machinery.

mod int;
mod matrix;
pub mod subsets;

pub use int::{bareiss_big, bareiss_i128, IntMatrix};
pub use matrix::{fold_maximal_minors, gcddet, gcddet_matrix, primitive_row, ExactMatrix, RowSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_pm1(x: &Rat) -> bool {
    x.is_integer() && (x.is_one() || (-x).is_one())
}

pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}
