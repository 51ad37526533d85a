use std::collections::BTreeMap;

use hopfcalc_core::hopfcoh::{
    bvdv_omega_table, edge_symbol, hodge_derham_feasible, hopf_omega_table, quotient_dims_from_profile, BvdvMode,
    DimEntry, E1Table, Feasibility, GradedDims, KerCokerProfile, DEFAULT_NODE_BOUND,
};
use hopfcalc_core::linalg::int;
use hopfcalc_core::RationalMatrix;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

#[test]
fn hopf_tables_vanish_in_the_middle() {
    for n in 3..=12 {
        for p in 0..=n {
            let row = hopf_omega_table(n, p).unwrap();
            for q in 0..=n {
                assert_eq!(row.get(q).is_zero(), (2..=n - 2).contains(&q), "n={n} p={p} q={q}");
            }
            assert_eq!(row.get(0), row.get(1));
            assert_eq!(row.get(n - 1), row.get(n));
            assert_ne!(row.get(0), row.get(n));
        }
    }
}

#[test]
fn bvdv_modes_differ_by_one_shift() {
    for n in 3..=12 {
        for p in 1..=n {
            let t = bvdv_omega_table(n, p, BvdvMode::Theorem).unwrap();
            let d = bvdv_omega_table(n, p, BvdvMode::Derivation).unwrap();
            let ranks = |w: &[(i64, u64)]| w.iter().map(|&(_, r)| r).collect::<Vec<_>>();
            assert_eq!(ranks(&t.w_part), vec![1, 2, 1]);
            assert_eq!(ranks(&d.w_part), vec![1, 2, 1]);
            assert_eq!(d.w_center, t.w_center + 1);
            for (a, b) in t.w_part.iter().zip(&d.w_part) {
                assert_eq!(b.0, a.0 + 1);
            }
            let in_range = |w: &[(i64, u64)]| w.iter().filter(|(q, _)| (0..=n as i64).contains(q)).map(|(_, r)| r).sum::<u64>();
            assert_eq!(in_range(&t.w_part) + t.clipped_mass, 4);
            assert_eq!(in_range(&d.w_part) + d.clipped_mass, 4);
            for row in [&t.row, &d.row] {
                assert_eq!(row.get(0).symbols(), row.get(1).symbols());
                assert_eq!(row.get(n - 1).symbols(), row.get(n).symbols());
            }
        }
    }
}

fn small_square(b: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-2i64..=2, b * b).prop_map(move |d| {
        RationalMatrix::new(b, b, d.into_iter().map(int).collect()).unwrap()
    })
}

/// A cover with finite dimensions in degrees `0..n` and a square action on each.
fn finite_cover() -> impl Strategy<Value = (GradedDims, BTreeMap<usize, RationalMatrix>)> {
    (3usize..=7).prop_flat_map(|n| {
        prop::collection::vec((0usize..=3).prop_flat_map(|b| (Just(b), small_square(b))), n).prop_map(move |degrees| {
            let mut cover = GradedDims::new(n);
            let mut actions = BTreeMap::new();
            for (q, (b, m)) in degrees.into_iter().enumerate() {
                cover.set(q, DimEntry::finite(b as u64)).unwrap();
                if b > 0 {
                    actions.insert(q, m);
                }
            }
            (cover, actions)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_characteristic_cancels((cover, actions) in finite_cover()) {
        let profile = KerCokerProfile::from_actions(&cover, &actions, &edge_symbol).unwrap();
        let h = quotient_dims_from_profile(&cover, &profile).unwrap();
        let mut chi = 0i64;
        for (k, e) in h.to_vec().iter().enumerate() {
            let v = e.as_finite().expect("symbol-free").to_i64().unwrap();
            chi += if k % 2 == 0 { v } else { -v };
        }
        prop_assert_eq!(chi, 0);
        let total: BigUint = h.to_vec().iter().map(|e| e.as_finite().unwrap()).sum();
        prop_assert!(total % 2u32 == BigUint::from(0u32));
    }
}

/// Every rank assignment, by brute force.
fn any_solution(e1: &[Vec<u64>], target: &[u64]) -> bool {
    let (pl, ql) = (e1.len(), e1[0].len());
    let vars = (pl - 1) * ql;
    let mut r = vec![0u64; vars];
    loop {
        let rank = |p: usize, q: usize| if p + 1 < pl { r[p * ql + q] } else { 0 };
        let mut sums = vec![0i64; target.len()];
        let mut ok = true;
        for p in 0..pl {
            for q in 0..ql {
                let left = if p > 0 { rank(p - 1, q) } else { 0 };
                let v = e1[p][q] as i64 - rank(p, q) as i64 - left as i64;
                let into = if p + 1 < pl { e1[p + 1][q] as i64 - rank(p, q) as i64 } else { 0 };
                ok &= v >= 0 && into >= 0;
                sums[p + q] += v;
            }
        }
        if ok && sums.iter().zip(target).all(|(&s, &t)| s == t as i64) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == vars {
                return false;
            }
            let (p, q) = (k / ql, k % ql);
            if r[k] < e1[p][q].min(e1[p + 1][q]) {
                r[k] += 1;
                break;
            }
            r[k] = 0;
            k += 1;
        }
    }
}

fn grid() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(p, q)| prop::collection::vec(prop::collection::vec(0u64..=2, q), p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_agrees_with_brute_force(
        (e1, target) in grid().prop_flat_map(|g| {
            let len = g.len() + g[0].len() - 1;
            (Just(g), prop::collection::vec(0u64..=4, len))
        })
    ) {
        let table = E1Table::new(e1.clone(), target.clone()).unwrap();
        match hodge_derham_feasible(&table, DEFAULT_NODE_BOUND).unwrap() {
            Feasibility::Feasible(a) => {
                prop_assert!(a.verify(&table));
                prop_assert!(any_solution(&e1, &target));
            }
            Feasibility::Infeasible => prop_assert!(!any_solution(&e1, &target)),
        }
    }

    #[test]
    fn zero_differentials_are_feasible(e1 in grid()) {
        let mut target = vec![0; e1.len() + e1[0].len() - 1];
        for (p, row) in e1.iter().enumerate() {
            for (q, v) in row.iter().enumerate() {
                target[p + q] += v;
            }
        }
        let table = E1Table::new(e1, target).unwrap();
        prop_assert!(matches!(hodge_derham_feasible(&table, DEFAULT_NODE_BOUND).unwrap(), Feasibility::Feasible(_)));
    }
}
