use super::loops::{apply_delete, apply_drop, apply_insert, drop_repeats, EdgePath, HomotopyMove};
use crate::complex::{Cell, ColorSet};
use crate::error::{Error, Result};
use crate::graphs::Graph;

fn require_gap(graph: &Graph, n: usize) -> Result<()> {
    let vgap = graph.vgap(n);
    if vgap < 2 {
        return Err(Error::Precondition(format!("loop contraction needs vgap(G, n) >= 2, got {vgap}")));
    }
    Ok(())
}

/// Pushes a loop from `X_{i-1}(λ)` into `X_i(λ)`.
///
/// First color `i` is removed from the positions after the independent
/// prefix, one position at a time: consecutive vertices that both carry `i`
/// there are separated by a square, then every vertex carrying `i` is cut off
/// across a triangle. The same is then done for color `i - 1` on the prefix
/// positions, where the detour always uses color `i`.
pub fn advance_pass(graph: &Graph, n: usize, path: &EdgePath, i: u32) -> Result<(EdgePath, Vec<HomotopyMove>)> {
    require_gap(graph, n)?;
    if i < 2 || i as usize > n {
        return Err(Error::Precondition(format!("color i = {i} outside 2..={n}")));
    }
    let lambda = graph.lambda();
    for (k, v) in path.vertices().iter().enumerate() {
        if let Some(q) = (0..lambda).find(|&q| v[q] < i - 1) {
            return Err(Error::Precondition(format!(
                "vertex {} uses color {} on position {} (must be >= {})",
                k + 1,
                v[q],
                q + 1,
                i - 1
            )));
        }
    }
    let mut p = path.clone();
    let mut moves = Vec::new();
    drop_repeats(&mut p, &mut moves);
    for j in lambda..graph.p() {
        clear_color(graph, n, &mut p, &mut moves, j, i, Detour::SmallestFree);
    }
    for j in 0..lambda {
        clear_color(graph, n, &mut p, &mut moves, j, i - 1, Detour::Fixed(i));
    }
    Ok((p, moves))
}

#[derive(Clone, Copy)]
enum Detour {
    /// Smallest color avoiding the neighbors of both endpoints and the
    /// removed color.
    SmallestFree,
    Fixed(u32),
}

fn neighbor_colors(graph: &Graph, v: &[u32], j: usize) -> ColorSet {
    ColorSet::from_colors(graph.position_neighbors(j).iter().map(|&b| v[b]))
}

fn detour_color(graph: &Graph, n: usize, a: &[u32], b: &[u32], j: usize, color: u32, detour: Detour) -> u32 {
    match detour {
        Detour::Fixed(z) => z,
        Detour::SmallestFree => {
            let used = neighbor_colors(graph, a, j).union(neighbor_colors(graph, b, j)).with(color);
            (1..=n as u32).find(|&z| !used.contains(z)).expect("vgap >= 2 leaves a free color")
        }
    }
}

/// Removes `color` from position `j` of every vertex of the loop.
fn clear_color(
    graph: &Graph,
    n: usize,
    p: &mut EdgePath,
    moves: &mut Vec<HomotopyMove>,
    j: usize,
    color: u32,
    detour: Detour,
) {
    if p.is_constant() {
        if p.vertices()[0][j] == color {
            relocate_constant(graph, n, p, moves, j, color, detour);
        }
        return;
    }
    // separate consecutive offenders; descending order keeps earlier indices valid
    let m = p.len();
    for k in (0..m).rev() {
        let (u, w) = (p.vertices()[k].clone(), p.vertices()[(k + 1) % m].clone());
        if u[j] != color || w[j] != color {
            continue;
        }
        let z = detour_color(graph, n, &u, &w, j, color, detour);
        let mu = (0..u.len()).find(|&q| u[q] != w[q]).expect("consecutive vertices differ");
        let mut support = Cell::vertex(&u);
        support = support.with_set(mu, ColorSet::from_colors([u[mu], w[mu]]));
        support = support.with_set(j, ColorSet::from_colors([color, z]));
        let (mut a, mut b) = (u, w);
        a[j] = z;
        b[j] = z;
        moves.push(apply_insert(p, k, a, b, support));
    }
    // cut off every offender; its neighbors differ from it only at j
    while let Some(k) = p.vertices().iter().position(|v| v[j] == color) {
        let m = p.len();
        let prev = &p.vertices()[(k + m - 1) % m];
        let next = &p.vertices()[(k + 1) % m];
        let set = ColorSet::from_colors([prev[j], next[j], color]);
        let support = Cell::vertex(&p.vertices()[k]).with_set(j, set);
        moves.push(apply_delete(p, k, support));
        drop_repeats(p, moves);
    }
}

/// Moves a constant loop off `color` at position `j` by growing a spur to
/// the recolored vertex and retracting the original end.
fn relocate_constant(
    graph: &Graph,
    n: usize,
    p: &mut EdgePath,
    moves: &mut Vec<HomotopyMove>,
    j: usize,
    color: u32,
    detour: Detour,
) {
    let v = p.vertices()[0].clone();
    let z = detour_color(graph, n, &v, &v, j, color, detour);
    let mut w = v.clone();
    w[j] = z;
    let edge = Cell::vertex(&v).with_set(j, ColorSet::from_colors([color, z]));
    // (v) -> (v, w, v) -> (v, w) -> (w)
    moves.push(apply_insert(p, 0, w, v, edge.clone()));
    moves.push(apply_drop(p, 2));
    moves.push(apply_delete(p, 0, edge));
}

/// Contracts a loop to a single vertex.
///
/// Passes `i = 2..=n` pin the independent prefix to color `n`; the loop then
/// lives in a copy of `Hom(G - prefix, K_{n-1})`, where the procedure recurses.
/// When the prefix is the whole vertex set the passes already leave a
/// constant loop. The returned moves replay from `path` itself (repeats in
/// the input are removed first).
pub fn contract_loop(graph: &Graph, n: usize, path: &EdgePath) -> Result<Vec<HomotopyMove>> {
    require_gap(graph, n)?;
    EdgePath::new(graph, n, path.vertices().to_vec())?;
    let mut moves = Vec::new();
    let mut cur = path.clone();
    drop_repeats(&mut cur, &mut moves);
    for i in 2..=n as u32 {
        let (next, step) = advance_pass(graph, n, &cur, i)?;
        moves.extend(step);
        cur = next;
    }
    let Some((sub, map)) = graph.without_prefix() else {
        if !cur.is_constant() {
            return Err(Error::InvariantBreach(format!("pinned loop on an edgeless graph is not constant: {cur}")));
        }
        return Ok(moves);
    };
    if cur.is_constant() {
        return Ok(moves);
    }
    let lambda = graph.lambda();
    let project = |v: &[u32]| map.iter().map(|&q| v[q]).collect::<Vec<u32>>();
    let sub_path = EdgePath::new(&sub, n - 1, cur.vertices().iter().map(|v| project(v)).collect())?;
    let lift_sets = |sets: &[ColorSet]| {
        let mut out = vec![ColorSet::singleton(n as u32); graph.p()];
        for (k, &q) in map.iter().enumerate() {
            out[q] = sets[k];
        }
        debug_assert!(out[..lambda].iter().all(|s| *s == ColorSet::singleton(n as u32)));
        Cell::new(out)
    };
    for mv in contract_loop(&sub, n - 1, &sub_path)? {
        moves.push(HomotopyMove {
            kind: mv.kind,
            position: mv.position,
            vertices: mv.vertices.iter().map(|c| lift_sets(c.sets())).collect(),
            support: lift_sets(mv.support.sets()),
        });
    }
    Ok(moves)
}
