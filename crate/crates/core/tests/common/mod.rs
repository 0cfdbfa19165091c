//! Independent oracles: brute force over tuples and exact rational rank.
#![allow(dead_code)]

use hom_complex::{ColorSet, Graph};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Proper `n`-colorings of `G`, counted over all `n^p` assignments of its
/// native vertices.
pub fn brute_force_colorings(g: &Graph, n: usize) -> usize {
    let p = g.p();
    let edges = g.edges();
    let total = n.pow(p as u32);
    (0..total)
        .filter(|&code| {
            let color = |v: usize| (code / n.pow(v as u32 - 1)) % n;
            edges.iter().all(|&(u, v)| color(u) != color(v))
        })
        .count()
}

/// f-vector of `Hom(G, K_n)` from every tuple of nonempty subsets of `[n]`.
pub fn brute_force_f_vector(g: &Graph, n: usize) -> Vec<usize> {
    let p = g.p();
    let subsets = (1u64 << n) - 1;
    let mut f = vec![0usize; p * (n - 1) + 1];
    let mut tuple = vec![1u64; p];
    'outer: loop {
        let ok = (0..p).all(|a| g.position_neighbors(a).iter().all(|&b| tuple[a] & tuple[b] == 0));
        if ok {
            let dim: usize = tuple.iter().map(|m| m.count_ones() as usize).sum::<usize>() - p;
            f[dim] += 1;
        }
        for slot in tuple.iter_mut() {
            if *slot < subsets {
                *slot += 1;
                continue 'outer;
            }
            *slot = 1;
        }
        break;
    }
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

/// Connected components of the 1-skeleton by breadth-first search over
/// colorings that differ in one coordinate.
pub fn bfs_components(g: &Graph, n: usize) -> usize {
    let p = g.p();
    let mut vertices = Vec::new();
    let mut cur = vec![1u32; p];
    loop {
        let ok = (0..p).all(|a| g.position_neighbors(a).iter().all(|&b| cur[a] != cur[b]));
        if ok {
            vertices.push(cur.clone());
        }
        let mut k = 0;
        while k < p && cur[k] == n as u32 {
            cur[k] = 1;
            k += 1;
        }
        if k == p {
            break;
        }
        cur[k] += 1;
    }
    let index: std::collections::HashMap<Vec<u32>, usize> =
        vertices.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    let mut seen = vec![false; vertices.len()];
    let mut components = 0;
    for start in 0..vertices.len() {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for a in 0..p {
                for c in 1..=n as u32 {
                    let mut y = vertices[x].clone();
                    y[a] = c;
                    if let Some(&k) = index.get(&y) {
                        if !seen[k] {
                            seen[k] = true;
                            queue.push(k);
                        }
                    }
                }
            }
        }
    }
    components
}

/// Rank over ℚ by fraction-free elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            for c in col + 1..ncols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

pub fn set(colors: &[u32]) -> ColorSet {
    ColorSet::from_colors(colors.iter().copied())
}

/// Small graphs with at most `max_p` vertices.
pub fn arb_graph(max_p: usize) -> impl Strategy<Value = Graph> {
    (1..=max_p)
        .prop_flat_map(|p| {
            let pairs: Vec<(usize, usize)> = (1..=p).flat_map(|u| (u + 1..=p).map(move |v| (u, v))).collect();
            let len = pairs.len();
            (Just(p), Just(pairs), proptest::collection::vec(any::<bool>(), len))
        })
        .prop_map(|(p, pairs, keep)| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
            Graph::new(p, &edges).unwrap()
        })
}
