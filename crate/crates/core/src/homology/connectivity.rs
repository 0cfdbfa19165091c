use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{homology_summary, HomologySummary};
use crate::complex::{check_colors, enumerate_skeleton, DEFAULT_CELL_CAP};
use crate::deform::{contract_loop, sample_loop, verify_moves};
use crate::error::{Error, Result};
use crate::graphs::{Graph, GraphSpec};

const NOTE: &str = "Vanishing homology below vgap together with contracted sample loops is evidence \
consistent with (vgap - 1)-connectivity. Passing from homology to homotopy uses the Hurewicz \
theorem, which is cited rather than computed; sampled loops do not prove simple connectivity.";

#[derive(Debug, Clone, Serialize)]
pub struct ConnectivityOptions {
    pub cell_cap: usize,
    pub seed: u64,
    /// Random loops to contract when `vgap >= 2`.
    pub loop_samples: usize,
    /// Random-walk length of each sampled loop.
    pub loop_steps: usize,
    /// Also compute `H_vgap`, where the theorem predicts nothing.
    pub probe_first_gap: bool,
}

impl Default for ConnectivityOptions {
    fn default() -> Self {
        ConnectivityOptions {
            cell_cap: DEFAULT_CELL_CAP,
            seed: 0,
            loop_samples: 0,
            loop_steps: 12,
            probe_first_gap: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Incomplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectivityReport {
    pub graph: GraphSpec,
    pub n: usize,
    pub vgap: i64,
    pub f_vector: Vec<usize>,
    pub homology: Option<HomologySummary>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub config: ConnectivityOptions,
    pub note: &'static str,
}

/// Checks the predictions of `conn Hom(G, K_n) >= vgap - 1` that are
/// computable at this size: nonemptiness, `H_0 = ℤ`, `H_t = 0` for
/// `1 <= t < vgap`, and optionally the contraction of sampled loops.
///
/// Running into the cell cap yields an `INCOMPLETE` report rather than an
/// error.
pub fn connectivity_report(graph: &Graph, n: usize, opts: &ConnectivityOptions) -> Result<ConnectivityReport> {
    check_colors(n)?;
    let vgap = graph.vgap(n);
    let mut report = ConnectivityReport {
        graph: graph.to_spec(),
        n,
        vgap,
        f_vector: vec![],
        homology: None,
        checks: vec![],
        verdict: Verdict::Incomplete,
        config: opts.clone(),
        note: NOTE,
    };
    let depth = vgap.max(0) as usize + usize::from(opts.probe_first_gap && vgap >= 0);
    let sk = match enumerate_skeleton(graph, n, depth, opts.cell_cap) {
        Ok(sk) => sk,
        Err(Error::CellCapExceeded { cap, dim }) => {
            report.checks.push(Check {
                name: "enumeration".into(),
                status: Status::Info,
                detail: format!("more than {cap} cells up to dimension {depth} (overflow in dimension {dim})"),
            });
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.f_vector = sk.f_vector();
    let mut push = |name: &str, ok: bool, detail: String| {
        let status = if ok { Status::Pass } else { Status::Fail };
        report.checks.push(Check { name: name.into(), status, detail });
    };
    let vertices = sk.count(0);
    if vgap >= 0 {
        push("nonempty", vertices > 0, format!("{vertices} proper colorings"));
    }
    if vgap >= 1 {
        let top = (vgap - 1) as usize;
        let h = homology_summary(&sk, top)?;
        push("H_0 = Z", h.is_integers(0), format!("betti_0 = {}", h.betti[0]));
        for t in 1..=top {
            push(&format!("H_{t} = 0"), h.vanishes(t), describe(&h, t));
        }
        report.homology = Some(h);
    }
    if opts.probe_first_gap && vgap >= 0 {
        let t = vgap as usize;
        let h = homology_summary(&sk, t)?;
        report.checks.push(Check { name: format!("H_{t}"), status: Status::Info, detail: describe(&h, t) });
        report.homology = Some(h);
    }
    if vgap >= 2 && opts.loop_samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut contracted = 0;
        let mut failure = None;
        for k in 0..opts.loop_samples {
            let path = sample_loop(graph, n, opts.loop_steps, &mut rng)?;
            let check = contract_loop(graph, n, &path).map(|moves| verify_moves(graph, n, &path, &moves, true));
            match check {
                Ok(c) if c.valid => contracted += 1,
                Ok(c) => failure = failure.or(Some(format!("loop {}: {}", k + 1, c.diagnostic.unwrap_or_default()))),
                Err(e) => failure = failure.or(Some(format!("loop {}: {e}", k + 1))),
            }
        }
        let mut detail = format!("{contracted}/{} sampled loops contracted and replayed", opts.loop_samples);
        if let Some(f) = failure {
            detail = format!("{detail}; first failure {f}");
        }
        report.checks.push(Check {
            name: "sampled loops contract".into(),
            status: if contracted == opts.loop_samples { Status::Pass } else { Status::Fail },
            detail,
        });
    }
    let failed = report.checks.iter().any(|c| c.status == Status::Fail);
    report.verdict = if failed { Verdict::Fail } else { Verdict::Pass };
    Ok(report)
}

fn describe(h: &HomologySummary, t: usize) -> String {
    let tors: Vec<String> = h.torsion[t].iter().map(|d| d.to_string()).collect();
    format!("betti_{t} = {}, torsion [{}]", h.betti[t], tors.join(", "))
}
