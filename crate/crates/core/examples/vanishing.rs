//! Homology of `Hom(G, K_n)` up to the first degree the connectivity bound
//! leaves open.
//!
//! ```text
//! cargo run --release -p hom-complex --example vanishing -- C5 6
//! ```

use std::time::Instant;

use hom_complex::{enumerate_skeleton, homology_summary, Graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [family, n] = args.as_slice() else {
        return Err("usage: vanishing <family> <n>".into());
    };
    let g: Graph = family.parse()?;
    let n: usize = n.parse()?;
    let vgap = g.vgap(n);
    if vgap < 1 {
        return Err(format!("vgap = {vgap}; nothing to check").into());
    }
    let start = Instant::now();
    let sk = enumerate_skeleton(&g, n, vgap as usize, 50_000_000)?;
    let built = start.elapsed();
    let h = homology_summary(&sk, vgap as usize - 1)?;
    println!("{family} n={n} vgap={vgap} f={:?}", sk.f_vector());
    println!("betti={:?} torsion={:?}", h.betti, h.torsion);
    println!("enumeration {built:.2?}, total {:.2?}", start.elapsed());
    Ok(())
}
