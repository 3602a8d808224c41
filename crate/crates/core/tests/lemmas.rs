//! Lemma checks against independently computed values.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use svlab::lemmas::*;
use svlab::numbers::{binomial, factorial, rat, Rational};
use svlab::Error;

fn fact(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * k)
}

#[test]
fn factorial_comparison_edges() {
    assert!(check_lemma_factorial_comparison(2, &[3, 4], &[3, 4]).unwrap());
    assert!(matches!(check_lemma_factorial_comparison(0, &[3, 4], &[0, 4]), Err(Error::Precondition(_))));
    assert!(matches!(check_lemma_factorial_comparison(0, &[1, 4], &[2, 1]), Err(Error::Precondition(_))));
}

#[test]
fn product_binomials_edges() {
    // All zero: 1 ≤ 2^{rp}.
    assert!(check_lemma_product_binomials(3, &[0, 0, 0], &[0, 0, 0]).unwrap());
    // One index, r = 0: (2ℓ+a)!/ℓ! = C(2ℓ+a, ℓ)·(ℓ+a)! with equality.
    for (l, a) in [(3u64, 2u64), (5, 0), (0, 7)] {
        assert_eq!(fact(2 * l + a), binomial(2 * l + a, l) * fact(l + a) * fact(l));
        assert!(check_lemma_product_binomials(0, &[l], &[a]).unwrap());
    }
}

#[test]
fn ingredient_fails_as_stated() {
    // 6!·6! against 3!·6!
    assert!(fact(6) * fact(6) > fact(3) * fact(6));
    assert!(!check_lemma_ingredient(0, &[3, 3]).unwrap());
    // The boundary case of the induction base is not an equality either.
    assert!(!check_lemma_ingredient(1, &[5, 3]).unwrap());
    assert!(matches!(check_lemma_ingredient(0, &[6, 2]), Err(Error::Precondition(_))));
    assert!(matches!(check_lemma_ingredient(0, &[4]), Err(Error::Precondition(_))));
    let rep = sweep_ingredient(3, 1, 6);
    assert!(rep.violations > 0);
    assert_eq!(rep.first_violation.as_deref(), Some("r=0 A=[3, 3]"));
}

#[test]
fn small_sweeps_have_no_violations() {
    let a = sweep_factorial_comparison(3, 2, 5);
    assert!(a.passed() && a.checked > 0 && a.max_ratio <= 1.0, "{a}");
    let b = sweep_product_binomials(3, 2, 4);
    assert!(b.passed() && b.max_ratio <= 1.0, "{b}");
}

#[test]
fn sum_constant_hand_case() {
    // p = 2 with M = (1, 1), L = 0: two admissible choices, both d = (1, 1),
    // so the sum is 2·2!·2! = 8 and the ratio 8/2! = 4.
    let e = estimate_lemma_sum_constant(2, &[1, 1], 0, SumVariant::First).unwrap();
    assert_eq!(e.choices, 2);
    assert_eq!(e.ratio, rat(4, 1));
    assert!((e.constant - 2.0).abs() < 1e-12);
    // A single index always reaches the total, so nothing is admissible.
    let one = estimate_lemma_sum_constant(1, &[2, 3], 1, SumVariant::First).unwrap();
    assert_eq!((one.choices, one.ratio), (0, rat(0, 1)));
    assert!(estimate_lemma_sum_constant_with(1, &[1, 1], 0, &[0], &[0], SumVariant::First).is_err());
}

#[test]
fn sum_constant_stays_bounded() {
    for v in [SumVariant::First, SumVariant::Second] {
        let worst = sweep_sum_constant(3, 8, v).unwrap();
        assert!(worst.constant.is_finite() && worst.constant < 20.0, "{worst:?}");
    }
}

/// `ζ(3/2)` from a long partial sum and a midpoint tail integral.
fn zeta_three_halves_oracle() -> f64 {
    let n = 2_000_000u64;
    let head: f64 = (1..=n).rev().map(|k| (k as f64).powf(-1.5)).sum();
    head + 2.0 / (n as f64 + 0.5).sqrt()
}

#[test]
fn zeta_values() {
    assert!((zeta(1.5) - zeta_three_halves_oracle()).abs() < 1e-9);
    assert!((eval_partition_zeta_sum(2).unwrap() - 2f64.powf(1.5)).abs() < 1e-15);
    let rows = zeta_sum_table(&[100, 1000, 10_000]).unwrap();
    assert!(strictly_decreasing(&rows));
    assert!(rows[2].error <= 0.35);
}

/// The double factorial sums by plain floating recurrences.
fn double_factorial_oracle(g: u64, which: u8) -> f64 {
    let odd = |k: u64| (1..=k).fold(1.0, |acc, j| acc * (2 * j - 1) as f64 / (2 * j) as f64);
    let even = |k: u64| (1..=k).fold(1.0, |acc, j| acc * (2 * j) as f64 / (2 * j + 1) as f64);
    let gf = (g as f64).powf(1.5);
    match which {
        1 => (1..g).map(|a| odd(a) * odd(g - a) / ((2 * a + 1) * (2 * (g - a) + 1)) as f64).sum::<f64>() * gf,
        2 => (1..g - 1)
            .map(|a| {
                let b = g - 1 - a;
                even(a) * even(b) / ((2 * a + 2) * (2 * b + 2)) as f64
            })
            .sum::<f64>()
            * gf,
        _ => (1..g - 1)
            .map(|a| {
                let b = g - 1 - a;
                odd(a) * even(b) / ((2 * a + 1) * (2 * b + 2)) as f64
            })
            .sum::<f64>()
            * gf,
    }
}

#[test]
fn double_factorial_sums_match_the_oracle() {
    for which in 1..=3 {
        for g in [4, 9, 60] {
            let exact = eval_double_factorial_sums(g, which).unwrap();
            let oracle = double_factorial_oracle(g, which);
            assert!((exact / oracle - 1.0).abs() < 1e-12, "sum {which} g={g}: {exact} {oracle}");
        }
    }
    assert!(eval_double_factorial_sums(3, 1).is_err());
    assert!(eval_double_factorial_sums(10, 4).is_err());
}

#[test]
fn double_factorial_limits() {
    let pi = std::f64::consts::PI;
    let sp = pi.sqrt();
    let literal = [sp * (0.5 - 1.0 / pi), sp / 4.0 * (pi * pi / 4.0 - 1.0), sp / 4.0 * (3.0 * pi / 4.0 - 1.0 - 1.0 / pi)];
    for (i, l) in literal.iter().enumerate() {
        assert!((double_factorial_limit_f64(i as u8 + 1).unwrap() - l).abs() < 1e-15);
    }
    // The third limit mixes the two series: (√π/4)(S₁ − 1) + (S₂ − ½)/(2√π).
    let s1 = eval_series(Series::HalfPi, 4_000_000).unwrap();
    let s2 = eval_series(Series::PiSqOverEight, 4_000_000).unwrap();
    let mix = sp / 4.0 * (s1 - 1.0) + (s2 - 0.5) / (2.0 * sp);
    assert!((mix - literal[2]).abs() < 1e-3, "{mix}");
    for which in 1..=3 {
        let rows = double_factorial_table(which, &[100, 1000]).unwrap();
        assert!(strictly_decreasing(&rows) && rows[1].error < 0.2, "{rows:?}");
    }
}

#[test]
fn series_partial_sums() {
    // 1 + (1/2)/3 = 7/6
    assert_eq!(eval_series_exact(Series::HalfPi, 1), rat(7, 6));
    assert!((eval_series(Series::HalfPi, 1).unwrap() - 7.0 / 6.0).abs() < 1e-15);
    assert!(eval_series(Series::HalfPi, 0).is_err());
    for s in [Series::HalfPi, Series::PiSqOverEight] {
        for n in [1, 7, 40] {
            let exact = eval_series_exact(s, n).to_f64().unwrap();
            assert!((eval_series(s, n).unwrap() - exact).abs() < 1e-14);
        }
        let v = eval_series(s, 1_000_000).unwrap();
        assert!((v - s.limit().to_f64()).abs() < 1e-3);
    }
    assert_eq!(Series::from_name("pi_sq_over_8"), Some(Series::PiSqOverEight));
}

#[test]
fn cancelling_factorials() {
    // p = 1: (2g)²/((2g)(2g−1)) = 200/199.
    assert!((check_cancelling_factorials(1, 100).unwrap() - 200.0 / 199.0).abs() < 1e-15);
    assert!((check_cancelling_factorials(1, 100).unwrap() - 1.0).abs() < 0.03);
    assert!((check_cancelling_factorials(3, 1000).unwrap() - 1.0).abs() < 0.02);
    assert!(check_cancelling_factorials(12, 12).unwrap().is_finite());
    assert!(check_cancelling_factorials(0, 5).is_err());
    assert!(check_cancelling_factorials(6, 5).is_err());
}

#[test]
fn error_term_sum_is_one_plus_o_of_one_over_g() {
    for g in 10..=200u64 {
        let s = error_term_sum(g, 2, 2);
        assert!(s >= Rational::one());
        assert!(s <= Rational::one() + rat(5, g as i64), "g = {g}");
    }
    // Two terms by hand at g = 2: (1 + 2·2/2) + (1 + 2·4/2)/4.
    assert_eq!(error_term_sum(2, 2, 2), rat(3, 1) + rat(5, 4));
}

#[test]
fn reports_serialise() {
    let size = LemmaSize { max_p: 2, max_part: 3, max_r: 1, g: 100 };
    for id in LemmaId::ALL {
        let v = lemma_report(id, size).unwrap();
        assert!(!v.is_null(), "{}", id.name());
        assert_eq!(LemmaId::from_name(id.name()), Some(id));
    }
}

fn exact_comparison(r: u64, a: &[u64], b: &[u64]) -> bool {
    let (ta, tb): (u64, u64) = (a.iter().sum(), b.iter().sum());
    let side = |xs: &[u64], t: u64| -> Rational {
        let num = xs.iter().fold(BigUint::one(), |acc, &x| acc * factorial(x + r));
        Rational::new(num.into(), factorial(t + r - 1).into())
    };
    side(a, ta) <= side(b, tb)
}

proptest! {
    #[test]
    fn comparison_matches_direct_rationals(r in 0u64..4, ab in proptest::collection::vec((0u64..12, 0u64..12), 2..5)) {
        let a: Vec<u64> = ab.iter().map(|&(x, y)| x.max(y)).collect();
        let b: Vec<u64> = ab.iter().map(|&(x, y)| x.min(y)).collect();
        let tb: u64 = b.iter().sum();
        prop_assume!(b.iter().all(|&y| y < tb));
        prop_assert_eq!(check_lemma_factorial_comparison(r, &a, &b).unwrap(), exact_comparison(r, &a, &b));
    }

    #[test]
    fn series_partials_increase_below_the_limit(n in 1u64..5000) {
        for s in [Series::HalfPi, Series::PiSqOverEight] {
            let x = eval_series(s, n).unwrap();
            let y = eval_series(s, n + 1).unwrap();
            prop_assert!(x < y && y < s.limit().to_f64());
        }
    }
}
