use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{chain_in_x, check_colors, first_defect, Cell, Chain, ColorSet, Term};
use crate::error::{Error, Result};
use crate::graphs::Graph;

/// A chain of simplices on a color set; each simplex is stored as its
/// (sorted) vertex set.
pub type SimplexChain = BTreeMap<ColorSet, i64>;

fn add(chain: &mut SimplexChain, s: ColorSet, k: i64) {
    if k == 0 {
        return;
    }
    let e = chain.entry(s).or_insert(0);
    *e = e.checked_add(k).expect("chain coefficient overflow");
    if *e == 0 {
        chain.remove(&s);
    }
}

/// Simplicial boundary: `∂[v_0..v_m] = Σ (-1)^b [v_0..^v_b..v_m]`.
pub fn simplex_boundary(z: &SimplexChain) -> SimplexChain {
    let mut out = SimplexChain::new();
    for (&s, &k) in z {
        if s.len() < 2 {
            continue;
        }
        for (b, v) in s.iter().enumerate() {
            add(&mut out, s.without(v), if b % 2 == 0 { k } else { -k });
        }
    }
    out
}

/// Fills a nonzero simplicial cycle by coning at the smallest vertex of its
/// support, so the filler uses no new vertices. Vertex chains count as
/// cycles when their coefficients sum to zero.
pub fn simplex_fill(z: &SimplexChain) -> Result<SimplexChain> {
    let Some(apex) = z.keys().fold(ColorSet::EMPTY, |acc, s| acc.union(*s)).first() else {
        return Err(Error::Precondition("cannot fill the zero chain".into()));
    };
    let degree = z.keys().next().map_or(0, |s| s.len() - 1);
    if z.keys().any(|s| s.len() != degree + 1) {
        return Err(Error::Precondition("simplices of mixed dimension".into()));
    }
    let closed = if degree == 0 { z.values().sum::<i64>() == 0 } else { simplex_boundary(z).is_empty() };
    if !closed {
        return Err(Error::Precondition("the chain is not a cycle".into()));
    }
    let mut tau = SimplexChain::new();
    for (&s, &k) in z {
        // the apex is the smallest vertex, so prefixing it keeps the order
        if !s.contains(apex) {
            add(&mut tau, s.with(apex), k);
        }
    }
    Ok(tau)
}

/// Record of the boundaries subtracted while deforming a cycle: the chain
/// `D = Σ coeff·cell` satisfies `∂D = C - C'`. Additions are kept in the
/// order they were applied.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub t: usize,
    pub additions: Vec<Term>,
}

impl ChainCertificate {
    /// The `(t+1)`-chain `Σ coeff·cell`.
    pub fn filler(&self) -> Chain {
        let mut d = Chain::zero(self.t + 1);
        for term in &self.additions {
            d.add_term(term.cell.clone(), term.coeff);
        }
        d
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub valid: bool,
    pub diagnostic: Option<String>,
}

/// Checks that every recorded cell is a valid `(t+1)`-cell and that
/// `∂(Σ additions) = C - C'` exactly.
pub fn verify_certificate(
    graph: &Graph,
    n: usize,
    c: &Chain,
    c_prime: &Chain,
    cert: &ChainCertificate,
) -> CertificateCheck {
    let fail = |why: String| CertificateCheck { valid: false, diagnostic: Some(why) };
    if check_colors(n).is_err() {
        return fail(format!("bad color count {n}"));
    }
    for (k, term) in cert.additions.iter().enumerate() {
        if let Some(why) = first_defect(graph, n, term.cell.sets()) {
            return fail(format!("addition {} {}: {why}", k + 1, term.cell));
        }
        if term.cell.dim() != cert.t + 1 {
            return fail(format!(
                "addition {} {} has dimension {}, expected {}",
                k + 1,
                term.cell,
                term.cell.dim(),
                cert.t + 1
            ));
        }
    }
    let residue = cert.filler().boundary().minus(&c.minus(c_prime));
    if !residue.is_zero() {
        return fail(format!("∂D differs from C - C' by {residue}"));
    }
    CertificateCheck { valid: true, diagnostic: None }
}

/// The chain after one position has been cleared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseSnapshot {
    /// 1-based graph-order position.
    pub position: usize,
    /// The color removed from that position.
    pub color: u32,
    pub chain: Chain,
}

/// Result of [`reduce_cycle_traced`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub reduced: Chain,
    pub certificate: ChainCertificate,
    pub phases: Vec<PhaseSnapshot>,
}

/// Replaces a `t`-cycle in `X_{i-1}(λ)` by a homologous cycle in `X_i(λ)`.
///
/// Color `i` is first cleared from the positions after the independent
/// prefix, then color `i - 1` from the prefix positions, one position at a
/// time. At each position, cells whose set there is exactly the offending
/// color are pushed up by a boundary, then cells whose set has size
/// `l = 2, 3, ...` are removed frame by frame, where a frame fixes every
/// other coordinate. For `l = 2` pairs of cells share a 3-element filler;
/// for larger `l` the frame becomes a simplicial cycle which is filled by a
/// cone.
pub fn reduce_cycle(graph: &Graph, n: usize, c: &Chain, i: u32) -> Result<(Chain, ChainCertificate)> {
    let r = reduce_cycle_traced(graph, n, c, i)?;
    Ok((r.reduced, r.certificate))
}

/// [`reduce_cycle`] together with the chain after every position.
pub fn reduce_cycle_traced(graph: &Graph, n: usize, c: &Chain, i: u32) -> Result<Reduction> {
    check_colors(n)?;
    if i < 2 || i as usize > n {
        return Err(Error::Precondition(format!("color i = {i} outside 2..={n}")));
    }
    let t = c.dim();
    if c.is_zero() {
        return Ok(Reduction {
            reduced: c.clone(),
            certificate: ChainCertificate { t, additions: vec![] },
            phases: vec![],
        });
    }
    let bound = n as i64 - graph.maxval() as i64 - 2;
    if t == 0 || t as i64 > bound {
        return Err(Error::Precondition(format!("cycle dimension {t} outside 1..={bound}")));
    }
    for cell in c.cells() {
        if let Some(why) = first_defect(graph, n, cell.sets()) {
            return Err(Error::InvalidCell(format!("{cell}: {why}")));
        }
    }
    if !c.boundary().is_zero() {
        return Err(Error::Precondition("the chain is not a cycle".into()));
    }
    let lambda = graph.lambda();
    if !chain_in_x(c, i - 1, lambda) {
        return Err(Error::Precondition(format!("the cycle is not supported in X_{}({lambda})", i - 1)));
    }

    let mut r = Reducer { graph, n, chain: c.clone(), additions: Vec::new() };
    let mut phases = Vec::new();
    for j in lambda..graph.p() {
        r.clear(j, i, None)?;
        phases.push(PhaseSnapshot { position: j + 1, color: i, chain: r.chain.clone() });
    }
    for j in 0..lambda {
        r.clear(j, i - 1, Some(i))?;
        phases.push(PhaseSnapshot { position: j + 1, color: i - 1, chain: r.chain.clone() });
    }
    if !chain_in_x(&r.chain, i, lambda) {
        return Err(Error::InvariantBreach(format!("result not in X_{i}({lambda}): {}", r.chain)));
    }
    Ok(Reduction { reduced: r.chain, certificate: ChainCertificate { t, additions: r.additions }, phases })
}

struct Reducer<'a> {
    graph: &'a Graph,
    n: usize,
    chain: Chain,
    additions: Vec<Term>,
}

fn sign(parity: usize) -> i64 {
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

fn colors_before(cell: &Cell, j: usize) -> usize {
    cell.sets()[..j].iter().map(|s| s.len()).sum()
}

impl Reducer<'_> {
    /// `C -= coeff·∂cell`, recorded in the certificate.
    fn subtract(&mut self, coeff: i64, cell: Cell) -> Result<()> {
        if let Some(why) = first_defect(self.graph, self.n, cell.sets()) {
            return Err(Error::InvariantBreach(format!("filler {cell} is not a cell: {why}")));
        }
        self.chain.add_scaled(&cell.boundary(), -coeff);
        self.additions.push(Term { coeff, cell });
        Ok(())
    }

    /// Removes `color` from position `j` of every cell. `lift` fixes the
    /// partner color used for singleton sets; otherwise the smallest free
    /// color is taken.
    fn clear(&mut self, j: usize, color: u32, lift: Option<u32>) -> Result<()> {
        let single = ColorSet::singleton(color);
        let singles: Vec<(Cell, i64)> =
            self.chain.iter().filter(|(cell, _)| cell.sets()[j] == single).map(|(c, k)| (c.clone(), k)).collect();
        for (eta, k) in singles {
            let near =
                ColorSet::from_colors(self.graph.position_neighbors(j).iter().flat_map(|&b| eta.sets()[b].iter()));
            let partner = match lift {
                Some(z) => z,
                None => (1..=self.n as u32)
                    .find(|&z| z != color && !near.contains(z))
                    .ok_or_else(|| Error::InvariantBreach(format!("no free partner color for {eta}")))?,
            };
            let lifted = eta.with_set(j, single.with(partner));
            let k_sign = sign(colors_before(&eta, j) + usize::from(color < partner));
            self.subtract(k_sign * k, lifted)?;
            if self.chain.coeff(&eta) != 0 {
                return Err(Error::InvariantBreach(format!("{eta} survived its elimination")));
            }
        }

        let has = |cell: &Cell| cell.sets()[j].contains(color);
        for l in 2..=self.n {
            if !self.chain.cells().any(has) {
                break;
            }
            let d_l = self.chain.filter(|cell| has(cell) && cell.sets()[j].len() == l);
            if d_l.is_zero() {
                continue;
            }
            let gamma = d_l.boundary().filter(|cell| has(cell) && cell.sets()[j].len() == l - 1);
            if !gamma.is_zero() {
                return Err(Error::InvariantBreach(format!("γ ≠ 0 at position {} for l = {l}: {gamma}", j + 1)));
            }
            let mut frames: BTreeMap<Vec<ColorSet>, ()> = BTreeMap::new();
            for cell in d_l.cells() {
                frames.insert(cell.with_set(j, ColorSet::EMPTY).0, ());
            }
            for frame in frames.into_keys() {
                let in_frame = |cell: &Cell| {
                    has(cell)
                        && cell.sets()[j].len() == l
                        && cell.sets().iter().zip(&frame).enumerate().all(|(b, (s, f))| b == j || s == f)
                };
                if l == 2 {
                    self.pair_off(j, color, &in_frame)?;
                } else {
                    self.cone_off(j, color, &frame, self.chain.filter(in_frame))?;
                }
                if self.chain.cells().any(in_frame) {
                    return Err(Error::InvariantBreach(format!("frame at position {} survived for l = {l}", j + 1)));
                }
            }
        }
        if self.chain.cells().any(has) {
            return Err(Error::InvariantBreach(format!("color {color} survived at position {}", j + 1)));
        }
        Ok(())
    }

    /// Case `l = 2`: cancel the first cell `{c, x}` of the frame against the
    /// next one `{c, y}` via the filler `{c, x, y}`.
    fn pair_off(&mut self, j: usize, color: u32, in_frame: &dyn Fn(&Cell) -> bool) -> Result<()> {
        loop {
            let mut cells = self.chain.iter().filter(|(cell, _)| in_frame(cell)).map(|(c, k)| (c.clone(), k));
            let Some((eta, k)) = cells.next() else { return Ok(()) };
            let Some((xi, _)) = cells.next() else {
                return Err(Error::InvariantBreach(format!("{eta} has no partner in its frame")));
            };
            drop(cells);
            let x = eta.sets()[j].without(color).first().expect("two colors");
            let y = xi.sets()[j].without(color).first().expect("two colors");
            let between = (color < y && y < x) || (x < y && y < color);
            let sigma = eta.with_set(j, eta.sets()[j].with(y));
            let k_sign = sign(colors_before(&eta, j) + usize::from(between));
            self.subtract(k_sign * k, sigma)?;
        }
    }

    /// Case `l >= 3`: map the frame to a simplicial cycle on the other
    /// colors, fill it by a cone and subtract the boundary of the pullback.
    fn cone_off(&mut self, j: usize, color: u32, frame: &[ColorSet], part: Chain) -> Result<()> {
        let mut z = SimplexChain::new();
        for (cell, k) in part.iter() {
            let a = cell.sets()[j];
            add(&mut z, a.without(color), sign(a.count_above(color)) * k);
        }
        let tau = simplex_fill(&z).map_err(|e| Error::InvariantBreach(format!("frame image: {e}")))?;
        let eps = sign(frame[..j].iter().map(|s| s.len()).sum());
        for (s, k) in tau {
            let cell = Cell::new(frame.to_vec()).with_set(j, s.with(color));
            self.subtract(eps * sign(s.count_above(color)) * k, cell)?;
        }
        Ok(())
    }
}
