mod common;

use common::*;
use hom_complex::homology::{boundary_matrix, component_count};
use hom_complex::{enumerate_skeleton, homology_summary, random_cell, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vertices_are_proper_colorings(g in arb_graph(5), n in 1usize..=4) {
        let sk = enumerate_skeleton(&g, n, 0, 1_000_000).unwrap();
        prop_assert_eq!(sk.count(0), brute_force_colorings(&g, n));
    }

    #[test]
    fn full_enumeration_matches_brute_force(g in arb_graph(3), n in 1usize..=4) {
        let top = g.p() * (n - 1);
        let sk = enumerate_skeleton(&g, n, top, 1_000_000).unwrap();
        let mut f = sk.f_vector();
        while f.len() > 1 && *f.last().unwrap() == 0 {
            f.pop();
        }
        prop_assert_eq!(f, brute_force_f_vector(&g, n));
    }

    #[test]
    fn boundary_of_boundary_vanishes(g in arb_graph(4), n in 2usize..=5, seed in any::<u64>(), dim in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(cell) = random_cell(&g, n, dim, &mut rng) {
            prop_assert!(cell.boundary().boundary().is_zero());
        }
    }

    #[test]
    fn skeleton_lookup_round_trips(g in arb_graph(4), n in 2usize..=4) {
        let sk = enumerate_skeleton(&g, n, 2, 1_000_000).unwrap();
        for d in 0..=2 {
            for (k, sets) in sk.cells(d).enumerate() {
                prop_assert_eq!(sk.index_of(sets), Some((d, k)));
            }
        }
    }

    #[test]
    fn betti_zero_counts_components(g in arb_graph(4), n in 1usize..=4) {
        let sk = enumerate_skeleton(&g, n, 1, 1_000_000).unwrap();
        let h = homology_summary(&sk, 0).unwrap();
        let bfs = bfs_components(&g, n);
        prop_assert_eq!(h.betti[0], bfs);
        prop_assert_eq!(component_count(&sk), bfs);
    }

    #[test]
    fn integer_rank_matches_rational_rank(g in arb_graph(3), n in 2usize..=4) {
        let top = (g.p() * (n - 1)).min(3);
        let sk = enumerate_skeleton(&g, n, top, 1_000_000).unwrap();
        if top == 0 {
            return Ok(());
        }
        let h = homology_summary(&sk, top - 1).unwrap();
        for t in 0..top {
            // betti_t from rational ranks of the dense boundary matrices
            let rank = |d: usize| if d == 0 || d > top { 0 } else { rational_rank(&boundary_matrix(&sk, d).unwrap().to_dense()) };
            let expected = sk.count(t) - rank(t) - rank(t + 1);
            prop_assert_eq!(h.betti[t], expected);
        }
    }

    #[test]
    fn euler_characteristic(g in arb_graph(3), n in 1usize..=4) {
        let top = g.p() * (n - 1);
        let sk = enumerate_skeleton(&g, n, top + 1, 1_000_000).unwrap();
        let h = homology_summary(&sk, top).unwrap();
        let chi_cells: i64 = sk.f_vector().iter().enumerate().map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) }).sum();
        let chi_homology: i64 = h.betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chi_cells, chi_homology);
    }

    #[test]
    fn homology_vanishes_below_the_gap(g in arb_graph(4), extra in 1usize..=2) {
        let n = g.maxval() + 1 + extra;
        let vgap = g.vgap(n) as usize;
        let sk = enumerate_skeleton(&g, n, vgap, 2_000_000).unwrap();
        let h = homology_summary(&sk, vgap - 1).unwrap();
        prop_assert!(h.is_integers(0));
        for t in 1..vgap {
            prop_assert!(h.vanishes(t), "H_{} = {:?} {:?}", t, h.betti, h.torsion);
        }
    }
}

#[test]
fn product_law_for_disjoint_unions() {
    let convolve = |a: &[usize], b: &[usize]| {
        let mut out = vec![0usize; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let k1 = Graph::complete(1).unwrap();
    let k2 = Graph::complete(2).unwrap();
    for (g, h) in [(&k1, &k2), (&k2, &k2)] {
        let full = |x: &Graph| enumerate_skeleton(x, 3, x.p() * 2, 100_000).unwrap().f_vector();
        let mut union = full(&g.disjoint_union(h));
        let mut product = convolve(&full(g), &full(h));
        for f in [&mut union, &mut product] {
            while f.last() == Some(&0) {
                f.pop();
            }
        }
        assert_eq!(union, product);
    }
}

#[test]
fn rational_rank_oracle_sanity() {
    assert_eq!(rational_rank(&[vec![2, 4], vec![1, 2]]), 1);
    assert_eq!(rational_rank(&[vec![0, 3], vec![5, 0], vec![1, 1]]), 2);
    assert_eq!(rational_rank(&[]), 0);
}
