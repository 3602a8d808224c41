//! Arbitrary-precision binary floating point used for controlled conversion
//! of exact values.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::Zero;

/// Precision used when callers do not ask for one.
pub const DEFAULT_PRECISION: usize = 128;

/// Environment variable overriding [`DEFAULT_PRECISION`] in the command line tool.
pub const PRECISION_ENV: &str = "SVLAB_PRECISION";

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

/// Runs `f` with the thread's constant cache (π, e, ln 2 at any precision).
pub fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// π correctly rounded to `precision` bits.
pub fn pi(precision: usize) -> BigFloat {
    with_consts(|cc| cc.pi(precision, RM))
}

/// Exact conversion of an integer (the result carries as many bits as needed).
pub fn bigint_to_float(n: &BigInt) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, 64);
    }
    let (sign, digits) = n.to_u64_digits();
    let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
    let e = (digits.len() * 64) as i32;
    BigFloat::from_words(&digits, s, e)
}

/// `q` rounded to `precision` bits.
pub fn rational_to_float(q: &BigRational, precision: usize) -> BigFloat {
    let num = bigint_to_float(q.numer());
    if q.denom() == &BigInt::from(1) {
        let mut r = num;
        r.set_precision(precision, RM).expect("precision change");
        return r;
    }
    let den = bigint_to_float(q.denom());
    num.div(&den, precision, RM)
}

/// `x` rounded to the nearest `f64`.
pub fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    // Value is 0.m * 2^exp with the most significant word last. Take the top
    // 128 bits, which is enough for a correctly rounded double except at exact
    // ties far below the tolerance of any consumer here.
    let n = words.len();
    let hi = words[n - 1] as u128;
    let lo = if n >= 2 { words[n - 2] as u128 } else { 0 };
    let top = (hi << 64) | lo;
    let mant = top as f64; // rounds to 53 bits
    let scaled = scale_by_pow2(mant, exp as i64 - 128);
    if sign == Sign::Neg {
        -scaled
    } else {
        scaled
    }
}

fn scale_by_pow2(x: f64, mut e: i64) -> f64 {
    let mut r = x;
    while e > 1000 {
        r *= 2f64.powi(1000);
        e -= 1000;
        if r.is_infinite() {
            return r;
        }
    }
    while e < -1000 {
        r *= 2f64.powi(-1000);
        e += 1000;
        if r == 0.0 {
            return r;
        }
    }
    r * 2f64.powi(e as i32)
}

/// Decimal expansion of `x`, as printed by the command line tool.
pub fn to_decimal_string(x: &BigFloat) -> String {
    with_consts(|cc| x.format(astro_float::Radix::Dec, RM, cc)).unwrap_or_else(|_| float_to_f64(x).to_string())
}

/// Binary exponent `e` with `|x| ∈ [2^{e−1}, 2^e)`; `None` for zero.
pub fn exponent_of(x: &BigFloat) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        x.exponent().map(|e| e as i64)
    }
}
