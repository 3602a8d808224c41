//! The general configuration formula against the hyperelliptic closed forms
//! in genus two, where every stratum is hyperelliptic, and exact arithmetic
//! against naive oracles.

use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;
use svlab::engine::{
    hyperelliptic_p2_sum, sv_distinct_total, sv_hyperelliptic_exact, sv_loop_total, HypFamily, HypSweep, HyperellipticVolumes,
};
use svlab::numbers::{binomial, double_factorial, rat, PiLaurent};
use svlab::strata::{volume_exact_special, ComponentId, StratumSignature};

fn sig(o: &[u64]) -> StratumSignature {
    StratumSignature::new(o.to_vec()).unwrap()
}

#[test]
fn genus_two_distinct_zeros_match_the_closed_form() {
    let h = sig(&[1, 1]);
    for p in 1..=2 {
        let general = sv_distinct_total(&h, 0, 1, p, &HyperellipticVolumes).unwrap();
        let closed = sv_hyperelliptic_exact(&h, HypFamily::DistinctTwoEqual, p, None).unwrap();
        assert!(general.error.is_exact());
        assert_eq!(general.value, closed.value, "p={p}");
    }
}

#[test]
fn genus_two_loops_match_the_closed_forms() {
    for (h, fam) in [(sig(&[2]), HypFamily::LoopsMinimal), (sig(&[1, 1]), HypFamily::LoopsTwoEqual)] {
        for p in 1..=3 {
            let general = sv_loop_total(&h, 0, p, &HyperellipticVolumes).unwrap();
            let closed = sv_hyperelliptic_exact(&h, fam, p, None).unwrap();
            assert!(general.error.is_exact(), "{h} p={p}");
            assert_eq!(general.value, closed.value, "{h} p={p}");
        }
    }
}

#[test]
fn genus_two_volumes() {
    let v = |o: &[u64]| volume_exact_special(&sig(o), ComponentId::Whole).unwrap().to_f64();
    let pi4 = std::f64::consts::PI.powi(4);
    assert!((v(&[2]) - pi4 / 120.0).abs() < 1e-14);
    assert!((v(&[1, 1]) - pi4 / 135.0).abs() < 1e-14);
}

fn naive_binomial(n: u64, k: u64) -> BigUint {
    // Pascal's rule, row by row.
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_default()
}

proptest! {
    #[test]
    fn binomial_matches_pascal(n in 0u64..60, k in 0u64..70) {
        prop_assert_eq!(binomial(n, k), naive_binomial(n, k));
    }

    #[test]
    fn double_factorial_matches_the_product(n in 0i64..200) {
        let mut naive = BigUint::one();
        let mut k = n;
        while k > 1 {
            naive *= k as u64;
            k -= 2;
        }
        prop_assert_eq!(double_factorial(n).unwrap(), naive);
    }

    #[test]
    fn pi_laurent_round_trips_through_text(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50, k in -6i64..6) {
        let x = &PiLaurent::monomial(rat(a, b), k) + &PiLaurent::monomial(rat(c, d), k - 2);
        let parsed: PiLaurent = x.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &x);
        let pi = std::f64::consts::PI;
        let expected = a as f64 / b as f64 * pi.powi(k as i32) + c as f64 / d as f64 * pi.powi(k as i32 - 2);
        prop_assert!((x.to_f64() - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
    }

    #[test]
    fn pi_laurent_multiplication_distributes(a in -20i64..20, b in -20i64..20, c in -20i64..20, k in -3i64..3) {
        let x = PiLaurent::monomial(rat(a, 3), k);
        let y = PiLaurent::monomial(rat(b, 5), k + 1);
        let z = PiLaurent::from_int(c);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }
}

#[test]
fn log_domain_sweep_matches_exact_sums_at_moderate_genus() {
    let sweep = HypSweep::new(400);
    for fam in [HypFamily::DistinctTwoEqual, HypFamily::LoopsTwoEqual, HypFamily::LoopsMinimal] {
        for g in [50, 400] {
            let exact = hyperelliptic_p2_sum(fam, g).to_f64();
            let fast = sweep.p2_sum_f64(fam, g);
            assert!((fast / exact - 1.0).abs() < 1e-11, "{fam:?} g={g}: {fast} vs {exact}");
        }
    }
}
