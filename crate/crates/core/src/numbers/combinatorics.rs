//! Factorial-type integer kernels.
//!
//! Factorials are memoised at checkpoints (every [`CHECKPOINT_STRIDE`] values)
//! so that large arguments stay cheap without holding every intermediate
//! factorial in memory. Arguments above the configured cap are computed
//! directly and never stored.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default largest argument whose factorial checkpoints are memoised.
pub const DEFAULT_FACTORIAL_CAP: u64 = 1_000_000;

const CHECKPOINT_STRIDE: u64 = 128;

static FACTORIAL_CAP: AtomicU64 = AtomicU64::new(DEFAULT_FACTORIAL_CAP);

/// `CHECKPOINTS[i] = (i * CHECKPOINT_STRIDE)!`
static CHECKPOINTS: RwLock<Vec<BigUint>> = RwLock::new(Vec::new());

/// Changes the memoisation cap. Factorials above the cap are still computed,
/// only not cached.
pub fn set_factorial_cap(cap: u64) {
    FACTORIAL_CAP.store(cap, Ordering::Relaxed);
}

pub fn factorial_cap() -> u64 {
    FACTORIAL_CAP.load(Ordering::Relaxed)
}

/// Product `lo * (lo+1) * ... * hi` by balanced splitting; empty range gives 1.
pub fn range_product(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        let mut acc = BigUint::from(lo);
        for k in lo + 1..=hi {
            acc *= k;
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    range_product(lo, mid) * range_product(mid + 1, hi)
}

/// `n!`
pub fn factorial(n: u64) -> BigUint {
    if n < 2 {
        return BigUint::one();
    }
    if n > factorial_cap() {
        return range_product(2, n);
    }
    let idx = (n / CHECKPOINT_STRIDE) as usize;
    {
        let table = CHECKPOINTS.read().unwrap_or_else(|e| e.into_inner());
        if idx < table.len() {
            let base = idx as u64 * CHECKPOINT_STRIDE;
            return &table[idx] * range_product(base + 1, n);
        }
    }
    let mut table = CHECKPOINTS.write().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(BigUint::one());
    }
    while table.len() <= idx {
        let k = table.len() as u64;
        let next = &table[table.len() - 1] * range_product((k - 1) * CHECKPOINT_STRIDE + 1, k * CHECKPOINT_STRIDE);
        table.push(next);
    }
    let base = idx as u64 * CHECKPOINT_STRIDE;
    &table[idx] * range_product(base + 1, n)
}

/// `n!!` for `n ≥ −1`, with `(−1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigUint> {
    if n < -1 {
        return Err(Error::Domain(format!("double factorial undefined for {n}")));
    }
    if n <= 1 {
        return Ok(BigUint::one());
    }
    let n = n as u64;
    let mut acc = BigUint::one();
    let mut k = n;
    // Multiply in chunks so the big integer sees few large multiplications.
    while k >= 2 {
        let mut chunk: u64 = 1;
        while k >= 2 {
            match chunk.checked_mul(k) {
                Some(c) => {
                    chunk = c;
                    k -= 2;
                }
                None => break,
            }
        }
        acc *= chunk;
    }
    Ok(acc)
}

/// Falling factorial `n (n−1) ··· (n−k+1)`, i.e. `n!/(n−k)!`.
pub fn falling_factorial(n: u64, k: u64) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if k > n {
        return BigUint::zero();
    }
    range_product(n - k + 1, n)
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    falling_factorial(n, k) / factorial(k)
}

/// Signed convenience wrapper used by formulas that are naturally stated with
/// integer arguments that may go negative (yielding zero).
pub fn binomial_i(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    BigInt::from(binomial(n as u64, k as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(n: u64) -> BigUint {
        (1..=n).fold(BigUint::one(), |a, k| a * k)
    }

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(20), BigUint::from(2432902008176640000u64));
    }

    #[test]
    fn checkpoints_match_naive_product() {
        for n in [127, 128, 129, 255, 256, 300, 1000] {
            assert_eq!(factorial(n), naive(n), "n = {n}");
        }
    }

    #[test]
    fn above_cap_still_correct() {
        // Uses the uncached path without touching the global cap.
        assert_eq!(range_product(2, 400), naive(400));
    }

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(-1).unwrap(), BigUint::one());
        assert_eq!(double_factorial(0).unwrap(), BigUint::one());
        assert_eq!(double_factorial(7).unwrap(), BigUint::from(105u32));
        assert_eq!(double_factorial(8).unwrap(), BigUint::from(384u32));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn even_times_odd_double_factorial_is_factorial() {
        for g in 1..=200i64 {
            let lhs = double_factorial(2 * g).unwrap() * double_factorial(2 * g - 1).unwrap();
            assert_eq!(lhs, factorial(2 * g as u64), "g = {g}");
        }
    }

    #[test]
    fn binomial_row_sums() {
        for n in 0..40u64 {
            let s: BigUint = (0..=n).map(|k| binomial(n, k)).sum();
            assert_eq!(s, BigUint::one() << n);
        }
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial_i(-1, 0), BigInt::zero());
    }
}
