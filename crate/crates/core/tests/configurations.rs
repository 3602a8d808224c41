//! Configuration enumeration against a brute-force search, plus structural
//! invariants of the loop enumeration.

use std::collections::BTreeSet;

use proptest::prelude::*;
use svlab::configurations::{enumerate_distinct_zero_configs, enumerate_loop_configs, BlockKind, ConfigKind};
use svlab::strata::StratumSignature;

fn sig(o: &[u64]) -> StratumSignature {
    StratumSignature::new(o.to_vec()).unwrap()
}

/// A slit as `(a₁, a₂, zeros it carries)`.
type Slit = (u64, u64, Vec<usize>);

/// Labelled cyclic slit sequences between zeros `z1` and `z2`, counted by
/// listing every sequence and keeping the smallest rotation.
fn brute_force_distinct(orders: &[u64], z1: usize, z2: usize, p: usize) -> BTreeSet<Vec<Slit>> {
    let (m1, m2) = (orders[z1], orders[z2]);
    let mut out = BTreeSet::new();
    if p as u64 > m1.min(m2) + 1 {
        return out;
    }
    let free: Vec<usize> = (0..orders.len()).filter(|&i| i != z1 && i != z2).collect();
    // Every angle vector in the box, filtered by its sum.
    let vectors = |m: u64| -> Vec<Vec<u64>> {
        let target = m + 1 - p as u64;
        let mut all = vec![vec![]];
        for _ in 0..p {
            all = all
                .into_iter()
                .flat_map(|v: Vec<u64>| (0..=target).map(move |a| [v.clone(), vec![a]].concat()))
                .collect();
        }
        all.into_iter().filter(|v| v.iter().sum::<u64>() == target).collect()
    };
    let assignments = p.pow(free.len() as u32);
    for x in vectors(m1) {
        for y in vectors(m2) {
            for code in 0..assignments {
                let mut bins = vec![Vec::new(); p];
                let mut c = code;
                for &z in &free {
                    bins[c % p].push(z);
                    c /= p;
                }
                let slits: Vec<Slit> = (0..p).map(|i| (x[i], y[i], bins[i].clone())).collect();
                let even = slits.iter().all(|(a, b, zs)| (a + b + zs.iter().map(|&z| orders[z]).sum::<u64>()) % 2 == 0);
                if even {
                    let canon = (0..p).map(|k| [&slits[k..], &slits[..k]].concat()).min().unwrap();
                    out.insert(canon);
                }
            }
        }
    }
    out
}

fn enumerated(orders: &[u64], z1: usize, z2: usize, p: usize) -> BTreeSet<Vec<Slit>> {
    let cs = enumerate_distinct_zero_configs(&sig(orders), z1, z2, p, true).unwrap();
    let set: BTreeSet<Vec<Slit>> = cs
        .iter()
        .map(|c| {
            let slits: Vec<Slit> = c
                .blocks
                .iter()
                .map(|b| match b.kind {
                    BlockKind::Slit { a1, a2 } => (a1, a2, b.zeros.clone()),
                    other => panic!("unexpected block {other:?}"),
                })
                .collect();
            let n = slits.len();
            (0..n).map(|k| [&slits[k..], &slits[..k]].concat()).min().unwrap()
        })
        .collect();
    assert_eq!(set.len(), cs.len(), "duplicate orbits in {orders:?}");
    set
}

#[test]
fn distinct_zero_configs_match_brute_force() {
    let strata: [&[u64]; 9] = [&[1, 1], &[2, 2], &[3, 1], &[2, 1, 1], &[1, 1, 1, 1], &[4, 2], &[3, 3], &[2, 2, 2], &[1, 1, 2, 2]];
    let mut total = 0;
    for orders in strata {
        let n = orders.len();
        for z1 in 0..n {
            for z2 in 0..n {
                if z1 == z2 {
                    continue;
                }
                for p in 1..=3 {
                    let expected = brute_force_distinct(orders, z1, z2, p);
                    assert_eq!(enumerated(orders, z1, z2, p), expected, "{orders:?} {z1}->{z2} p={p}");
                    total += expected.len();
                }
            }
        }
    }
    assert!(total > 100, "only {total} configurations checked");
}

#[test]
fn slits_add_genus() {
    // The slit subsurfaces carry all the genus: two tori glued along two
    // slits give a surface of genus two.
    for orders in [vec![2, 2, 2], vec![4, 2], vec![3, 3, 1, 1]] {
        let h = sig(&orders);
        for p in 1..=3 {
            for c in enumerate_distinct_zero_configs(&h, 0, 1, p, true).unwrap() {
                let g: u64 = c.substrata().map(|s| s.genus()).sum();
                assert_eq!(g, h.genus(), "{c}");
            }
        }
    }
}

#[test]
fn unlabelled_orbits_are_coarser() {
    let h = sig(&[2, 1, 1, 2]);
    for p in 1..=3 {
        let labelled = enumerate_distinct_zero_configs(&h, 0, 3, p, true).unwrap().len();
        let unlabelled = enumerate_distinct_zero_configs(&h, 0, 3, p, false).unwrap().len();
        assert!(unlabelled <= labelled, "p={p}: {unlabelled} > {labelled}");
    }
}

#[test]
fn preconditions() {
    let h = sig(&[2, 2]);
    assert!(enumerate_distinct_zero_configs(&h, 0, 0, 1, true).is_err());
    assert!(enumerate_distinct_zero_configs(&h, 0, 2, 1, true).is_err());
    assert!(enumerate_distinct_zero_configs(&h, 0, 1, 0, true).is_err());
    assert!(enumerate_loop_configs(&h, 5, 1, true).is_err());
}

#[test]
fn minimal_stratum_multiplicity_one_loops() {
    // A loop of multiplicity one in H(2): a figure-eight on a torus next to a
    // cylinder, or a two-hole torus block closing on itself.
    let cs = enumerate_loop_configs(&sig(&[2]), 0, 1, true).unwrap();
    assert!(!cs.is_empty());
    for c in &cs {
        c.validate().unwrap();
        assert!(c.q() <= 1);
    }
}

fn small_stratum() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..5, 1..4).prop_filter("even total", |o| o.iter().sum::<u64>() % 2 == 0 && o.iter().sum::<u64>() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn loop_configs_are_valid_canonical_and_distinct(orders in small_stratum(), p in 1usize..4) {
        let h = sig(&orders);
        let cs = enumerate_loop_configs(&h, 0, p, true).unwrap();
        for (i, c) in cs.iter().enumerate() {
            prop_assert!(c.validate().is_ok(), "{}", c);
            prop_assert_eq!(c.p(), p);
            prop_assert_eq!(c.kind, ConfigKind::Loop { z: 0 });
            prop_assert_eq!(&c.canonical(), c);
            prop_assert_eq!(c.glued_zeros()[0], 0);
            let s = c.symmetry();
            prop_assert_eq!(c.blocks.len() as u64 % s.gamma_order, 0);
            prop_assert!(s.gamma_minus_order == 1 || s.gamma_minus_order == 2);
            prop_assert!(!cs[..i].contains(c), "duplicate {}", c);
        }
    }

    #[test]
    fn rotations_and_reversals_share_a_canonical_form(orders in small_stratum(), p in 1usize..4, k in 0usize..8) {
        let h = sig(&orders);
        for c in enumerate_loop_configs(&h, 0, p, true).unwrap() {
            let n = c.blocks.len();
            prop_assert_eq!(c.rotated(k % n).canonical(), c.clone());
            prop_assert_eq!(c.reversed().canonical(), c.clone());
        }
    }
}
