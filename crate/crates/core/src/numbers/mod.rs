//! Exact arithmetic substrate: rationals, Laurent polynomials in π,
//! factorial kernels and controlled conversion to floating point.

pub mod combinatorics;
pub mod float;
pub mod pi_laurent;

pub use combinatorics::{binomial, double_factorial, factorial, falling_factorial, range_product};
pub use float::{float_to_f64, rational_to_float, DEFAULT_PRECISION};
pub use pi_laurent::{rat, PiLaurent, Rational};

use num_bigint::{BigInt, BigUint};

/// Converts an unsigned big integer into a rational.
pub fn ratu(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!/d!` as an exact rational for arbitrary `n, d ≥ 0`, computed without
/// forming either factorial when they are close.
pub fn factorial_ratio(n: u64, d: u64) -> Rational {
    if n >= d {
        ratu(range_product(d + 1, n))
    } else {
        Rational::new(BigInt::from(1), BigInt::from(range_product(n + 1, d)))
    }
}

/// Rational to `f64` through the high-precision path.
pub fn rational_to_f64(q: &Rational) -> f64 {
    float_to_f64(&rational_to_float(q, 64))
}
