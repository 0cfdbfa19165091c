//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p hom-complex --test acceptance`.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{brute_force_colorings, brute_force_f_vector};
use hom_complex::complex::parse_compact_chain;
use hom_complex::deform::{
    contract_loop, nullify_cycle, reduce_cycle_traced, sample_loop, verify_certificate, verify_moves,
};
use hom_complex::homology::{boundary_matrix, component_count, BoundaryMatrix};
use hom_complex::{
    enumerate_skeleton, homology_summary, pi1_free_rank, random_cell, Chain, ComplexSkeleton, Error, Graph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Total skeletal cells allowed per instance in the property suite.
const SUITE_CELL_CAP: usize = 4_000_000;
const LOOPS_PER_COMPLEX: usize = 50;
const LOOP_STEPS: usize = 16;
const NULLIFICATIONS: usize = 100;
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn skeleton(g: &Graph, n: usize, max_dim: usize) -> Result<ComplexSkeleton, String> {
    enumerate_skeleton(g, n, max_dim, 50_000_000).map_err(|e| e.to_string())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Free rank of π₁ of `Hom(K_n, K_{n+1})` as a bouquet of circles.
fn alpha(n: usize) -> usize {
    factorial(n) * (n * n - n - 2) / 2 + 1
}

fn suite() -> Vec<(&'static str, Graph)> {
    ["K2", "P3", "P4", "C4", "C5", "K3", "Star3"].into_iter().map(|s| (s, s.parse().unwrap())).collect()
}

fn c1_triangle_in_four() -> Outcome {
    let g = Graph::complete(3).unwrap();
    let sk = skeleton(&g, 4, 2)?;
    let f = sk.f_vector();
    // v = (n+1)! and e = nv/2 with n = 3
    ensure(f == vec![factorial(4), 3 * factorial(4) / 2, 0], || format!("f-vector {f:?}"))?;
    ensure(component_count(&sk) == 1, || "disconnected".into())?;
    let h = homology_summary(&sk, 1).map_err(|e| e.to_string())?;
    let rank = pi1_free_rank(&sk).map_err(|e| e.to_string())?;
    ensure(h.betti[1] == alpha(3) && rank == alpha(3), || format!("betti_1 {} rank {rank}", h.betti[1]))?;
    Ok(format!("f = {f:?}, betti_1 = pi1 rank = {rank}"))
}

fn c2_hexagon() -> Outcome {
    let sk = skeleton(&Graph::complete(2).unwrap(), 3, 2)?;
    let f = sk.f_vector();
    ensure(f == vec![6, 6, 0], || format!("f-vector {f:?}"))?;
    let rank = pi1_free_rank(&sk).map_err(|e| e.to_string())?;
    ensure(rank == alpha(2), || format!("pi1 rank {rank}"))?;
    Ok(format!("f = {f:?}, pi1 rank = {rank}"))
}

fn c3_star() -> Outcome {
    let g = Graph::star(3).unwrap();
    let sk = skeleton(&g, 3, g.p() * 2)?;
    let f = sk.f_vector();
    ensure(sk.top_dim() == Some(3) && f[3] == 3, || format!("f-vector {f:?}"))?;
    Ok(format!("f = {f:?}"))
}

fn c4_worked_example() -> Outcome {
    let g = Graph::cycle(4).unwrap();
    let parse = |s: &str| parse_compact_chain(s).unwrap();
    let c = parse("-(1,7,234,2)+(1,6,234,2)-(1,67,34,2)+(1,67,24,2)+(1,7,235,2)-(1,6,235,2)+(1,67,35,2)-(1,67,25,2)");
    let c4 = parse("-(1,67,34,2)+(1,67,35,2)-(1,67,45,2)-(1,7,345,2)+(1,6,345,2)");
    let expected = parse("-(2,67,34,3)+(2,67,35,3)-(2,67,45,3)-(2,7,345,3)+(2,6,345,3)");
    let r = reduce_cycle_traced(&g, 7, &c, 2).map_err(|e| e.to_string())?;
    let third = r.phases.iter().find(|ph| ph.position == 3).ok_or("no phase at position 3")?;
    ensure(third.chain == c4, || format!("after position 3: {}", third.chain))?;
    ensure(r.reduced == expected, || format!("C' = {}", r.reduced))?;
    let check = verify_certificate(&g, 7, &c, &r.reduced, &r.certificate);
    ensure(check.valid, || format!("certificate: {:?}", check.diagnostic))?;
    Ok(format!("C' = {} with {} certified additions", r.reduced, r.certificate.additions.len()))
}

fn c5_vanishing() -> Outcome {
    let mut checked = Vec::new();
    for (name, g) in suite() {
        let mut n = g.maxval() + 2;
        loop {
            let vgap = g.vgap(n) as usize;
            let sk = match enumerate_skeleton(&g, n, vgap, SUITE_CELL_CAP) {
                Ok(sk) => sk,
                Err(Error::CellCapExceeded { .. }) => break,
                Err(e) => return Err(e.to_string()),
            };
            let h = homology_summary(&sk, vgap - 1).map_err(|e| e.to_string())?;
            ensure(h.is_integers(0), || format!("{name}/{n}: betti_0 = {}", h.betti[0]))?;
            for t in 1..vgap {
                ensure(h.vanishes(t), || format!("{name}/{n}: H_{t} betti {} torsion {:?}", h.betti[t], h.torsion[t]))?;
            }
            if name == "C5" && n == 5 {
                ensure(h.betti[1] == 0, || "C5/5: betti_1 != 0".into())?;
            }
            checked.push(format!("{name}/{n}"));
            n += 1;
        }
    }
    ensure(checked.iter().any(|s| s == "C5/5"), || "C5/5 not reached".into())?;
    Ok(format!("{} instances, cap {SUITE_CELL_CAP}: {}", checked.len(), checked.join(" ")))
}

fn c6_loops() -> Outcome {
    // Hom(P3, K4) has vgap 1, so the path is taken with five colors
    let p4 = Graph::path(3).unwrap();
    ensure(
        contract_loop(&p4, 4, &sample_loop(&p4, 4, 4, &mut ChaCha8Rng::seed_from_u64(SEED)).unwrap()).is_err(),
        || "P3/4 was accepted below the gap".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut moves_total = 0;
    for (g, n) in [(Graph::path(3).unwrap(), 5), (Graph::cycle(5).unwrap(), 5)] {
        ensure(g.vgap(n) >= 2, || "gap below 2".into())?;
        for k in 0..LOOPS_PER_COMPLEX {
            let path = sample_loop(&g, n, LOOP_STEPS, &mut rng).map_err(|e| e.to_string())?;
            let moves = contract_loop(&g, n, &path).map_err(|e| format!("loop {k}: {e}"))?;
            let check = verify_moves(&g, n, &path, &moves, true);
            ensure(check.valid && check.final_path.is_constant(), || format!("loop {k}: {:?}", check.diagnostic))?;
            moves_total += moves.len();
        }
    }
    Ok(format!("{} loops in Hom(P3,K5) and Hom(C5,K5) contracted, {moves_total} moves replayed", 2 * LOOPS_PER_COMPLEX))
}

fn c7_nullify() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let graphs = suite();
    let mut dims = [0usize; 8];
    for k in 0..NULLIFICATIONS {
        let (name, g) = &graphs[k % graphs.len()];
        let n = g.maxval() + 3 + rng.gen_range(0..=2);
        let vgap = g.vgap(n) as usize;
        let t = rng.gen_range(1..vgap);
        let sigma = random_cell(g, n, t + 1, &mut rng).ok_or_else(|| format!("{name}/{n}: no {}-cell", t + 1))?;
        let c = sigma.boundary();
        let cert = nullify_cycle(g, n, &c).map_err(|e| format!("{name}/{n} {sigma}: {e}"))?;
        let check = verify_certificate(g, n, &c, &Chain::zero(t), &cert);
        ensure(check.valid, || format!("{name}/{n} {sigma}: {:?}", check.diagnostic))?;
        dims[t] += 1;
    }
    Ok(format!("{NULLIFICATIONS} boundaries filled, by dimension {:?}", &dims[1..]))
}

fn composes_to_zero(lower: &BoundaryMatrix, upper: &BoundaryMatrix) -> bool {
    upper.cols.iter().all(|col| {
        let mut acc: HashMap<u32, i64> = HashMap::new();
        for &(r, v) in col {
            for &(s, w) in &lower.cols[r as usize] {
                *acc.entry(s).or_default() += v as i64 * w as i64;
            }
        }
        acc.values().all(|&x| x == 0)
    })
}

fn c8_structure() -> Outcome {
    let mut pairs = 0;
    for (name, g) in suite() {
        for n in [g.maxval() + 2, g.maxval() + 3] {
            let top = 4.min(g.p() * (n - 1));
            let sk = skeleton(&g, n, top)?;
            for t in 1..top {
                let (lo, hi) = (boundary_matrix(&sk, t).unwrap(), boundary_matrix(&sk, t + 1).unwrap());
                ensure(composes_to_zero(&lo, &hi), || format!("{name}/{n}: ∂_{t}∂_{} != 0", t + 1))?;
                pairs += 1;
            }
            let brute = brute_force_colorings(&g, n);
            ensure(sk.count(0) == brute, || format!("{name}/{n}: {} vertices vs {brute} colorings", sk.count(0)))?;
        }
    }
    let trim = |mut f: Vec<usize>| {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    };
    let (k1, k2) = (Graph::complete(1).unwrap(), Graph::complete(2).unwrap());
    for (g, h) in [(&k1, &k2), (&k2, &k2)] {
        let full = |x: &Graph| trim(skeleton(x, 3, x.p() * 2).unwrap().f_vector());
        let (a, b) = (full(g), full(h));
        let mut product = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                product[i + j] += x * y;
            }
        }
        let u = g.disjoint_union(h);
        let union = full(&u);
        ensure(union == product, || format!("f(G ⊔ H) = {union:?}, product {product:?}"))?;
        ensure(union == brute_force_f_vector(&u, 3), || "union disagrees with brute force".into())?;
    }
    Ok(format!("∂∂ = 0 on {pairs} consecutive pairs; product law and coloring counts agree"))
}

fn c9_spheres() -> Outcome {
    let mut seen = Vec::new();
    for n in 3..=5 {
        let g = Graph::complete(2).unwrap();
        let sk = skeleton(&g, n, n - 1)?;
        ensure(sk.count(n - 1) == 0, || format!("n = {n}: cells above dimension {}", n - 2))?;
        let h = homology_summary(&sk, n - 2).map_err(|e| e.to_string())?;
        let mut expected = vec![0; n - 1];
        expected[0] = 1;
        expected[n - 2] = 1;
        ensure(h.betti == expected && h.torsion.iter().all(Vec::is_empty), || format!("n = {n}: {:?}", h.betti))?;
        seen.push(format!("{:?}", h.betti));
    }
    Ok(format!("betti {}", seen.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Hom(K3,K4) bouquet of 13 circles", Duration::from_secs(1), c1_triangle_in_four),
        ("Hom(K2,K3) hexagon", Duration::from_secs(1), c2_hexagon),
        ("Hom(K_{1,3},K3) has three 3-cells", Duration::from_secs(1), c3_star),
        ("worked reduction in Hom(C4,K7)", Duration::from_secs(5), c4_worked_example),
        ("homology vanishes below vgap", Duration::from_secs(600), c5_vanishing),
        ("sampled loops contract", Duration::from_secs(300), c6_loops),
        ("boundaries are nullified", Duration::from_secs(300), c7_nullify),
        ("structural invariants", Duration::from_secs(60), c8_structure),
        ("Hom(K2,Kn) spheres", Duration::from_secs(120), c9_spheres),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > limit => Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {}. {name} [{elapsed:.2?}]: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}. {name} [{elapsed:.2?}]: {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
