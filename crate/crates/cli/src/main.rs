//! `homcx`: builds `Hom(G, K_n)`, computes its homology and produces and
//! checks deformation certificates. Every command prints one JSON report on
//! stdout; the exit code is 0 exactly when the report is a success.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hom_complex::complex::{check_colors, parse_compact_chain, DEFAULT_CELL_CAP};
use hom_complex::deform::{
    contract_loop, nullify_cycle, reduce_cycle_traced, sample_loop, verify_certificate, verify_moves, EdgePath,
};
use hom_complex::graphs::GraphSpec;
use hom_complex::homology::{connectivity_report, ConnectivityOptions, Verdict};
use hom_complex::{enumerate_skeleton, homology_summary, pi1_free_rank, Chain, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "homcx", version, about = "Graph-coloring complexes Hom(G, K_n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Graph file: {"p": 4, "edges": [[1,2],[2,3]]}
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    graph: Option<PathBuf>,
    /// Graph family: K<m>, C<m>, P<m> or Star<k>
    #[arg(long)]
    family: Option<String>,
    /// Number of colors
    #[arg(short = 'n')]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_CELL_CAP, value_parser = clap::value_parser!(usize))]
    cell_cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Also write the report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the skeleton and report its f-vector
    Build {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_dim: usize,
    },
    /// Integer homology H_0..H_{t-max}
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t_max: usize,
    },
    /// Check the homological predictions of the connectivity bound
    VerifyConnectivity {
        #[command(flatten)]
        common: Common,
        /// Sampled loops to contract when vgap >= 2
        #[arg(long, default_value_t = 20)]
        loops: usize,
        #[arg(long, default_value_t = 12)]
        loop_steps: usize,
        /// Also report H_vgap
        #[arg(long)]
        probe: bool,
    },
    /// Push a cycle from X_{i-1} into X_i with a certificate
    ReduceCycle {
        #[command(flatten)]
        common: Common,
        /// Chain file: JSON terms or compact notation such as -(1,7,234,2)+(1,6,234,2)
        #[arg(long)]
        chain: PathBuf,
        #[arg(short = 'i')]
        i: u32,
        /// Include the chain after every position
        #[arg(long)]
        trace: bool,
    },
    /// Fill a cycle below the gap with a certified chain
    NullifyCycle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Contract a loop by elementary moves; samples one from --seed without --path
    ContractLoop {
        #[command(flatten)]
        common: Common,
        /// JSON list of vertex cells
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        steps: usize,
    },
    /// Free rank of the fundamental group of a 1-dimensional complex
    Pi1Rank {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Build { common, .. }
            | Command::Homology { common, .. }
            | Command::VerifyConnectivity { common, .. }
            | Command::ReduceCycle { common, .. }
            | Command::NullifyCycle { common, .. }
            | Command::ContractLoop { common, .. }
            | Command::Pi1Rank { common } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Build { .. } => "build",
            Command::Homology { .. } => "homology",
            Command::VerifyConnectivity { .. } => "verify-connectivity",
            Command::ReduceCycle { .. } => "reduce-cycle",
            Command::NullifyCycle { .. } => "nullify-cycle",
            Command::ContractLoop { .. } => "contract-loop",
            Command::Pi1Rank { .. } => "pi1-rank",
        }
    }
}

/// Replay information embedded in every report.
#[derive(Serialize)]
struct RunConfig {
    command: &'static str,
    graph: GraphSpec,
    family: Option<String>,
    n: usize,
    cell_cap: usize,
    seed: u64,
    inputs: Vec<PathBuf>,
}

type Outcome = Result<(Value, bool), String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(common: &Common) -> Result<Graph, String> {
    match (&common.graph, &common.family) {
        (Some(file), _) => {
            let spec: GraphSpec = serde_json::from_str(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            Graph::from_spec(&spec).map_err(|e| e.to_string())
        }
        (None, Some(family)) => family.parse().map_err(|e: hom_complex::Error| e.to_string()),
        (None, None) => Err("one of --graph or --family is required".into()),
    }
}

fn load_chain(path: &Path) -> Result<Chain, String> {
    let text = read(path)?;
    let text = text.trim();
    if text.starts_with('[') {
        serde_json::from_str(text).map_err(|e| format!("{}: {e}", path.display()))
    } else {
        parse_compact_chain(text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn with_config(mut report: Value, config: &RunConfig) -> Value {
    report["config"] = serde_json::to_value(config).expect("config serializes");
    report
}

fn run(command: &Command, graph: &Graph, config: &RunConfig) -> Outcome {
    let common = command.common();
    let (n, cap) = (common.n, common.cell_cap);
    let err = |e: hom_complex::Error| e.to_string();
    let report = match command {
        Command::Build { max_dim, .. } => {
            let sk = enumerate_skeleton(graph, n, *max_dim, cap).map_err(err)?;
            let report = json!({
                "f_vector": sk.f_vector(),
                "total_cells": sk.total_cells(),
                "top_dim": sk.top_dim(),
                "vgap": graph.vgap(n),
                "lambda": graph.lambda(),
                "order": graph.order(),
            });
            (report, true)
        }
        Command::Homology { t_max, .. } => {
            let sk = enumerate_skeleton(graph, n, t_max + 1, cap).map_err(err)?;
            let h = homology_summary(&sk, *t_max).map_err(err)?;
            let mut report = serde_json::to_value(&h).expect("summary serializes");
            report["f_vector"] = json!(sk.f_vector());
            (report, true)
        }
        Command::VerifyConnectivity { loops, loop_steps, probe, .. } => {
            let opts = ConnectivityOptions {
                cell_cap: cap,
                seed: common.seed,
                loop_samples: *loops,
                loop_steps: *loop_steps,
                probe_first_gap: *probe,
            };
            let r = connectivity_report(graph, n, &opts).map_err(err)?;
            let ok = r.verdict == Verdict::Pass;
            (serde_json::to_value(&r).expect("report serializes"), ok)
        }
        Command::ReduceCycle { chain, i, trace, .. } => {
            let c = load_chain(chain)?;
            let r = reduce_cycle_traced(graph, n, &c, *i).map_err(err)?;
            let check = verify_certificate(graph, n, &c, &r.reduced, &r.certificate);
            let mut report = json!({
                "i": i,
                "reduced": r.reduced,
                "reduced_compact": r.reduced.to_string(),
                "certificate": r.certificate,
                "verified": check.valid,
                "diagnostic": check.diagnostic,
            });
            if *trace {
                report["phases"] = serde_json::to_value(&r.phases).expect("phases serialize");
            }
            (report, check.valid)
        }
        Command::NullifyCycle { chain, .. } => {
            let c = load_chain(chain)?;
            let cert = nullify_cycle(graph, n, &c).map_err(err)?;
            let check = verify_certificate(graph, n, &c, &Chain::zero(c.dim()), &cert);
            let report = json!({ "certificate": cert, "verified": check.valid, "diagnostic": check.diagnostic });
            (report, check.valid)
        }
        Command::ContractLoop { path, steps, .. } => {
            let start = match path {
                Some(file) => {
                    let raw: EdgePath =
                        serde_json::from_str(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
                    EdgePath::new(graph, n, raw.vertices().to_vec()).map_err(err)?
                }
                None => sample_loop(graph, n, *steps, &mut ChaCha8Rng::seed_from_u64(common.seed)).map_err(err)?,
            };
            let moves = contract_loop(graph, n, &start).map_err(err)?;
            let check = verify_moves(graph, n, &start, &moves, true);
            let report = json!({
                "path": start,
                "moves": moves,
                "final_path": check.final_path,
                "verified": check.valid,
                "diagnostic": check.diagnostic,
            });
            (report, check.valid)
        }
        Command::Pi1Rank { .. } => {
            let sk = enumerate_skeleton(graph, n, 2, cap).map_err(err)?;
            let rank = pi1_free_rank(&sk).map_err(err)?;
            (json!({ "pi1_free_rank": rank, "f_vector": sk.f_vector() }), true)
        }
    };
    Ok((with_config(report.0, config), report.1))
}

fn emit(report: &Value, out: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    // a closed pipe downstream is not a failure of the command
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.to_string()),
        _ => {}
    }
    if let Some(file) = out {
        fs::write(file, format!("{text}\n")).map_err(|e| format!("{}: {e}", file.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common();
    if let Some(threads) = common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("homcx: {e}");
        }
    }
    let prepared = check_colors(common.n)
        .map_err(|e| e.to_string())
        .and_then(|_| if common.cell_cap == 0 { Err("--cell-cap must be positive".into()) } else { Ok(()) })
        .and_then(|_| load_graph(common));
    let result = prepared.and_then(|graph| {
        let inputs = match &cli.command {
            Command::ReduceCycle { chain, .. } | Command::NullifyCycle { chain, .. } => vec![chain.clone()],
            Command::ContractLoop { path: Some(p), .. } => vec![p.clone()],
            _ => vec![],
        };
        let config = RunConfig {
            command: cli.command.name(),
            graph: graph.to_spec(),
            family: common.family.clone(),
            n: common.n,
            cell_cap: common.cell_cap,
            seed: common.seed,
            inputs,
        };
        run(&cli.command, &graph, &config)
    });
    match result {
        Ok((report, ok)) => match emit(&report, common.out.as_deref()) {
            Ok(()) if ok => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("homcx: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("homcx: {e}");
            println!("{}", json!({ "command": cli.command.name(), "error": e }));
            ExitCode::from(2)
        }
    }
}
