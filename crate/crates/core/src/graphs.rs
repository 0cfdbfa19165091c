//! Finite simple graphs and the vertex ordering used by the deformation
//! algorithms.
//!
//! Vertices are numbered `1..=p` in the public API. Every [`Graph`] carries an
//! ordering `x_1, ..., x_p` of its vertices whose first `lambda` entries form a
//! maximal independent set. Cells of `Hom(G, K_n)` are tuples indexed by this
//! ordering, so coordinate `k` of a cell is the color list of vertex
//! `order()[k - 1]`.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An immutable finite simple undirected graph together with its canonical
/// ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    p: usize,
    // native 0-based neighbor lists, sorted
    adj: Vec<Vec<usize>>,
    // order[k] = native vertex at position k (0-based)
    order: Vec<usize>,
    lambda: usize,
    // neighbor lists in position space, sorted
    pos_adj: Vec<Vec<usize>>,
}

/// The on-disk graph description: `{"p": 4, "edges": [[1,2],[2,3]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub p: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a graph on vertices `1..=p` from unordered pairs. Duplicate and
    /// reversed pairs are merged.
    pub fn new(p: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if p == 0 {
            return Err(Error::BadBuilder("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > p {
                    return Err(Error::VertexOutOfRange { vertex: w, p });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            set.insert((u.min(v) - 1, u.max(v) - 1));
        }
        let mut adj = vec![Vec::new(); p];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let (order, lambda) = greedy_independent_prefix(&adj);
        let mut position = vec![0; p];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let pos_adj = order
            .iter()
            .map(|&v| {
                let mut nb: Vec<usize> = adj[v].iter().map(|&w| position[w]).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        Ok(Graph { p, adj, order, lambda, pos_adj })
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let edges: Vec<_> = spec.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(spec.p, &edges)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec { p: self.p, edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }

    /// The complete graph `K_m`.
    pub fn complete(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadBuilder("complete graph needs m >= 1".into()));
        }
        let edges: Vec<_> = (1..=m).flat_map(|u| (u + 1..=m).map(move |v| (u, v))).collect();
        Graph::new(m, &edges)
    }

    /// The cycle `C_m` with edges `{x, x+1 mod m}`.
    pub fn cycle(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::BadBuilder(format!("cycle needs m >= 3, got {m}")));
        }
        let edges: Vec<_> = (1..=m).map(|x| (x, x % m + 1)).collect();
        Graph::new(m, &edges)
    }

    /// The path `P_m` on `m` vertices.
    pub fn path(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadBuilder("path needs m >= 1".into()));
        }
        let edges: Vec<_> = (1..m).map(|x| (x, x + 1)).collect();
        Graph::new(m, &edges)
    }

    /// The star `K_{1,k}`: vertex 1 is the center.
    pub fn star(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadBuilder("star needs k >= 1".into()));
        }
        let edges: Vec<_> = (2..=k + 1).map(|v| (1, v)).collect();
        Graph::new(k + 1, &edges)
    }

    /// The edgeless graph on `p` vertices.
    pub fn edgeless(p: usize) -> Result<Self> {
        Graph::new(p, &[])
    }

    /// `G ⊔ H`: the vertices of `other` are shifted by `self.p()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.p;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(u, v)| (u + shift, v + shift)));
        Graph::new(self.p + other.p, &edges).expect("union of valid graphs is valid")
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Size of the independent prefix of [`Graph::order`].
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// The vertex ordering `x_1..x_p` as 1-based vertex labels.
    pub fn order(&self) -> Vec<usize> {
        self.order.iter().map(|v| v + 1).collect()
    }

    /// Edges as sorted 1-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list.iter().filter(|&&v| v > u) {
                out.push((u + 1, v + 1));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Degree of the 1-based vertex `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Whether the 1-based vertices `u` and `v` are adjacent.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u - 1].binary_search(&(v - 1)).is_ok()
    }

    /// Maximal valency: the largest vertex degree, 0 for edgeless graphs.
    pub fn maxval(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `n - maxval(G) - 1`. Negative when `n` is too small to even guarantee a
    /// proper coloring.
    pub fn vgap(&self, n: usize) -> i64 {
        n as i64 - self.maxval() as i64 - 1
    }

    /// Neighbors of the 0-based position `k`, as 0-based positions.
    pub fn position_neighbors(&self, k: usize) -> &[usize] {
        &self.pos_adj[k]
    }

    /// Whether two 0-based positions are adjacent.
    pub fn positions_adjacent(&self, a: usize, b: usize) -> bool {
        self.pos_adj[a].binary_search(&b).is_ok()
    }

    /// The graph `G - {x_1..x_lambda}` together with, for each of its
    /// positions, the corresponding 0-based position in `self`.
    ///
    /// Returns `None` when the independent prefix covers every vertex.
    pub fn without_prefix(&self) -> Option<(Graph, Vec<usize>)> {
        if self.lambda == self.p {
            return None;
        }
        // vertex r of the residual graph (1-based) is position lambda + r - 1 here
        let rest = self.p - self.lambda;
        let mut edges = Vec::new();
        for a in self.lambda..self.p {
            for &b in self.pos_adj[a].iter().filter(|&&b| b > a) {
                edges.push((a - self.lambda + 1, b - self.lambda + 1));
            }
        }
        let sub = Graph::new(rest, &edges).expect("induced subgraph is valid");
        let map = sub.order.iter().map(|&v| v + self.lambda).collect();
        Some((sub, map))
    }
}

/// Greedy maximal independent prefix: vertices are scanned in ascending
/// order and kept when no neighbor was kept before. Kept vertices come first,
/// both groups ascending.
pub fn maximal_independent_prefix(graph: &Graph) -> (Vec<usize>, usize) {
    (graph.order(), graph.lambda())
}

fn greedy_independent_prefix(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let p = adj.len();
    let mut chosen = vec![false; p];
    for v in 0..p {
        if !adj[v].iter().any(|&w| chosen[w]) {
            chosen[v] = true;
        }
    }
    let mut order: Vec<usize> = (0..p).filter(|&v| chosen[v]).collect();
    let lambda = order.len();
    order.extend((0..p).filter(|&v| !chosen[v]));
    (order, lambda)
}

impl FromStr for Graph {
    type Err = Error;

    /// Parses the family names `K<m>`, `C<m>`, `P<m>` and `Star<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadFamily(s.to_string());
        let (builder, digits): (fn(usize) -> Result<Graph>, &str) = if let Some(rest) = s.strip_prefix("Star") {
            (Graph::star, rest)
        } else if let Some(rest) = s.strip_prefix('K') {
            (Graph::complete, rest)
        } else if let Some(rest) = s.strip_prefix('C') {
            (Graph::cycle, rest)
        } else if let Some(rest) = s.strip_prefix('P') {
            (Graph::path, rest)
        } else {
            return Err(bad());
        };
        let m: usize = digits.parse().map_err(|_| bad())?;
        builder(m)
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..9).prop_flat_map(|p| {
            proptest::collection::vec((1..=p, 1..=p), 0..p * 2).prop_map(move |pairs| {
                let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
                Graph::new(p, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn prefix_is_maximal_independent(g in arb_graph()) {
            let (order, lambda) = maximal_independent_prefix(&g);
            for a in 0..lambda {
                for b in 0..lambda {
                    prop_assert!(!g.adjacent(order[a], order[b]));
                }
            }
            for &v in &order[lambda..] {
                prop_assert!(order[..lambda].iter().any(|&u| g.adjacent(u, v)));
            }
            prop_assert_eq!(lambda == g.p(), g.edge_count() == 0);
        }

        #[test]
        fn handshake(g in arb_graph()) {
            let degrees: usize = (1..=g.p()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(degrees, 2 * g.edge_count());
        }

        #[test]
        fn union_maxval(g in arb_graph(), h in arb_graph()) {
            prop_assert_eq!(g.disjoint_union(&h).maxval(), g.maxval().max(h.maxval()));
        }
    }
}
