//! Exact arithmetic carriers: arbitrary-precision rationals, dense integer
//! polynomials, and the group ring of Z/p used for Gaussian-period products.

mod group_ring;
mod poly;

pub use group_ring::GroupRingVector;
pub use poly::IntPolynomial;

pub use num_bigint::{BigInt, BigUint};
/// Reduced fraction of [`BigInt`]s: denominator ≥ 1, gcd(|num|, den) = 1.
pub use num_rational::BigRational;

/// Shorthand for a rational from machine integers. Panics if `d == 0`.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
