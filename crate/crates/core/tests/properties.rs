use nalgebra::DMatrix;
use proptest::prelude::*;

use bispec::bounds::{phi_bound, simplified_bound};
use bispec::graph::from_partition;
use bispec::partition::enumerate_partitions;
use bispec::spectral::{spectral_radius, DEFAULT_TOL};
use bispec::{BipartiteGraph, Partition};

fn rho(g: &BipartiteGraph) -> f64 {
    spectral_radius(g, DEFAULT_TOL).unwrap().rho
}

/// Largest eigenvalue of the full adjacency matrix, by dense symmetric eigensolve.
fn dense_rho(g: &BipartiteGraph) -> f64 {
    let n = g.p() + g.q();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..g.p() {
        for j in 0..g.q() {
            if g.get(i, j) {
                a[(i, g.p() + j)] = 1.0;
                a[(g.p() + j, i)] = 1.0;
            }
        }
    }
    a.symmetric_eigen().eigenvalues.max()
}

fn pentagonal_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i64 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i64;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[m - g2] as i64;
            }
        }
        p[m] = acc as u64;
    }
    p
}

#[test]
fn enumeration_matches_pentagonal_recurrence() {
    let want = pentagonal_counts(60);
    assert_eq!(want[40], 37338);
    for e in 1..=60 {
        let got = enumerate_partitions(e).unwrap().count() as u64;
        assert_eq!(got, want[e], "e={e}");
    }
}

#[test]
fn enumeration_is_reverse_lexicographic() {
    for e in 1..=25 {
        let all: Vec<Partition> = enumerate_partitions(e).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] > w[1]), "e={e}");
        assert!(all.iter().all(|d| d.sum() == e));
    }
}

#[test]
fn ferrers_graph_of_conjugate_is_transpose() {
    for e in 1..=14 {
        for d in enumerate_partitions(e).unwrap() {
            let g = from_partition(&d);
            let h = from_partition(&d.conjugate());
            assert_eq!(g.transpose(), h, "{d}");
            assert!((rho(&g) - rho(&h)).abs() <= 1e-10, "{d}");
        }
    }
}

fn partition_strategy(max_e: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=12, 1..=12)
        .prop_map(move |mut v| {
            while v.iter().sum::<usize>() > max_e {
                v.pop();
            }
            if v.is_empty() {
                v.push(1);
            }
            v
        })
        .prop_map(|v| Partition::from_unsorted(v).unwrap())
}

fn graph_strategy() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..=8, 1usize..=8)
        .prop_flat_map(|(p, q)| prop::collection::vec(any::<bool>(), p * q).prop_map(move |bits| (p, q, bits)))
        .prop_map(|(p, q, bits)| BipartiteGraph::from_fn(p, q, |i, j| bits[i * q + j]).unwrap())
}

fn two_valued_strategy() -> impl Strategy<Value = Partition> {
    (2usize..=9, 1usize..=8, 1usize..=6, 1usize..=6).prop_map(|(hi, lo_gap, n_hi, n_lo)| {
        let lo = hi.saturating_sub(lo_gap).max(1).min(hi - 1);
        let mut v = vec![hi; n_hi];
        v.extend(std::iter::repeat_n(lo, n_lo));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn simplified_bound_is_sound(d in partition_strategy(60)) {
        let r = rho(&from_partition(&d));
        for s in d.descents() {
            let b = simplified_bound(&d, s).unwrap();
            prop_assert!(b.phi >= r - 1e-9, "{} s={}: {} < {}", d, s, b.phi, r);
            prop_assert_eq!(b.x, d.sum() as u64);
        }
    }

    #[test]
    fn conjugate_is_an_involution(d in partition_strategy(60)) {
        prop_assert_eq!(d.conjugate().conjugate(), d.clone());
        prop_assert_eq!(d.conjugate().sum(), d.sum());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn power_iteration_matches_dense_eigensolve(g in graph_strategy()) {
        let a = rho(&g);
        let b = dense_rho(&g);
        prop_assert!((a - b).abs() <= 1e-9, "{} vs {}\n{}", a, b, g);
    }

    #[test]
    fn sqrt_e_upper_bound(g in graph_strategy()) {
        let e = g.edge_count() as f64;
        let r = rho(&g);
        prop_assert!(r <= e.sqrt() + 1e-10);
    }

    #[test]
    fn transpose_invariance(g in graph_strategy()) {
        prop_assert!((rho(&g) - rho(&g.transpose())).abs() <= 1e-12);
    }

    #[test]
    fn disjoint_union_takes_the_max(g in graph_strategy(), h in graph_strategy()) {
        let u = g.disjoint_union(&h);
        prop_assert!((rho(&u) - rho(&g).max(rho(&h))).abs() <= 1e-10);
        prop_assert_eq!(u.edge_count(), g.edge_count() + h.edge_count());
    }

    #[test]
    fn phi_bound_dominates_on_random_graphs(g in graph_strategy()) {
        prop_assume!(g.edge_count() > 0);
        // isolated vertices change neither rho nor the bound
        let positive = |v: Vec<usize>| Partition::from_unsorted(v.into_iter().filter(|&x| x > 0).collect()).unwrap();
        let (d, dp) = (positive(g.row_degrees()), positive(g.col_degrees()));
        let r = rho(&g);
        for s in 1..=d.len() {
            for t in 1..=dp.len() {
                let b = phi_bound(&d, &dp, s, t).unwrap();
                prop_assert!(b.phi >= r - 1e-9, "s={} t={}: {} < {}\n{}", s, t, b.phi, r, g);
            }
        }
    }

    #[test]
    fn two_valued_partitions_are_tight(d in two_valued_strategy()) {
        let s = d.descents().next().unwrap();
        let b = simplified_bound(&d, s).unwrap();
        prop_assert!((b.phi - rho(&from_partition(&d))).abs() <= 1e-9, "{}", d);
    }
}
