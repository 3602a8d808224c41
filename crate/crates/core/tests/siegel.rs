//! Lattice sampling and counting against brute force and quadrature.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use svlab::siegel::*;

/// Every coefficient pair in a box wide enough for any unimodular basis
/// whose vectors are shorter than `reach`.
fn brute_force(b: &Basis, radius: f64, primitive: bool) -> u64 {
    let k = 200i64;
    let mut n = 0;
    for i in -k..=k {
        for j in -k..=k {
            if (i, j) == (0, 0) || (primitive && num_integer::gcd(i, j) != 1) {
                continue;
            }
            let x = i as f64 * b[0][0] + j as f64 * b[1][0];
            let y = i as f64 * b[0][1] + j as f64 * b[1][1];
            if x * x + y * y <= radius * radius * (1.0 + 1e-12) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn square_lattice_counts() {
    let s = LatticeSample::new(0.0, 1.0).unwrap();
    assert_eq!(count_vectors(&s, 1.0, false), 4);
    assert_eq!(count_vectors(&s, 2.5, false), 20);
    assert_eq!(brute_force(&s.basis(), 2.5, false), 20);
    assert_eq!(count_vectors(&s, 2.5, true), 16);
}

#[test]
fn hexagonal_box_needs_the_reduction_bound() {
    // 8·b₀ − 4·b₁ has length √48 < 7 although its first coefficient is 8.
    let s = LatticeSample::new(0.5, 3f64.sqrt() / 2.0).unwrap();
    let b = s.basis();
    let far = [8.0 * b[0][0] - 4.0 * b[1][0], 8.0 * b[0][1] - 4.0 * b[1][1]];
    let radius = far[0].hypot(far[1]);
    let shortest = b[0][0].hypot(b[0][1]);
    assert_eq!((radius / shortest).ceil(), 7.0);
    assert_eq!(count_vectors(&s, radius, false), brute_force(&b, radius, false));
}

#[test]
fn samples_are_deterministic_and_in_the_domain() {
    let draw = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..1000).map(|_| sample_lattice(&mut rng)).collect::<Vec<_>>()
    };
    let a = draw(7);
    assert_eq!(a, draw(7));
    assert_ne!(a, draw(8));
    for s in &a {
        assert!(s.in_fundamental_domain());
        assert!((determinant(&s.basis()) - 1.0).abs() < 1e-12);
    }
}

/// `E[1/y]` under `dx dy/y²` on the fundamental domain by nested Simpson
/// quadrature; `E[y]` itself diverges logarithmically.
fn mean_inverse_height() -> f64 {
    let simpson = |f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize| {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    };
    // ∫ y^{-k} dy from √(1−x²) to ∞ in closed form would hide the check, so
    // substitute y = y₀/t and integrate t^{k−2}/y₀^{k−1} over (0, 1].
    let inner = |x: f64, k: i32| {
        let y0 = (1.0 - x * x).sqrt();
        simpson(&|t: f64| t.powi(k - 2) / y0.powi(k - 1), 0.0, 1.0, 200)
    };
    let num = simpson(&|x| inner(x, 3), -0.5, 0.5, 400);
    let den = simpson(&|x| inner(x, 2), -0.5, 0.5, 400);
    num / den
}

#[test]
fn sampled_heights_follow_the_hyperbolic_measure() {
    let oracle = mean_inverse_height();
    assert!((oracle - 3.0 * 3f64.ln() / (2.0 * std::f64::consts::PI)).abs() < 1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let n = 100_000;
    let xs: Vec<f64> = (0..n).map(|_| 1.0 / sample_lattice(&mut rng).tau_y).collect();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    assert!((mean - oracle).abs() <= 3.0 * (var / n as f64).sqrt(), "{mean} vs {oracle}");
}

#[test]
fn optimized_count_equals_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..100 {
        let s = sample_lattice(&mut rng);
        // Brute force covers coefficients up to 200, enough while both reduced
        // vectors and the radius stay moderate.
        let radius = 0.5 + (i % 10) as f64;
        let b = lagrange_reduce(s.basis());
        if b[1][0].hypot(b[1][1]) > 50.0 {
            continue;
        }
        for primitive in [false, true] {
            assert_eq!(count_vectors(&s, radius, primitive), brute_force(&b, radius, primitive), "{s:?} L={radius}");
        }
    }
}

#[test]
fn rotation_does_not_change_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = sample_lattice(&mut rng);
    let b = s.basis();
    let base = count_vectors(&s, 7.5, false);
    for k in 0..10 {
        let t = 0.61 * k as f64 + 0.1;
        let rot = |v: [f64; 2]| [t.cos() * v[0] - t.sin() * v[1], t.sin() * v[0] + t.cos() * v[1]];
        assert_eq!(count_vectors_in_basis(&[rot(b[0]), rot(b[1])], 7.5, false), base);
    }
}

#[test]
fn small_radius_is_mostly_empty() {
    let r = siegel_average(20_000, 0.4, 3, false).unwrap();
    assert!(r.zero_counts > r.samples / 2);
    assert!(r.z_score.abs() <= 3.0, "{r:?}");
}

#[test]
fn doubling_the_radius_quadruples_the_mean() {
    let a = siegel_average(4000, 5.0, 11, false).unwrap();
    let b = siegel_average(4000, 10.0, 11, false).unwrap();
    let q = b.estimate / a.estimate;
    assert!((q - 4.0).abs() < 0.2, "{q}");
}

#[test]
fn primitive_counts_follow_the_zeta_correction() {
    let r = siegel_average(4000, 10.0, 17, true).unwrap();
    assert!(r.z_score.abs() <= 3.0, "{r:?}");
    assert!(siegel_average(50, 1.0, 0, false).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn primitive_never_exceeds_full(x in -0.5f64..0.5, y in 0.9f64..6.0, radius in 0.1f64..12.0) {
        prop_assume!(x * x + y * y >= 1.0);
        let s = LatticeSample::new(x, y).unwrap();
        prop_assert!(count_vectors(&s, radius, true) <= count_vectors(&s, radius, false));
        // Every count is even: v and −v.
        prop_assert_eq!(count_vectors(&s, radius, false) % 2, 0);
    }
}
