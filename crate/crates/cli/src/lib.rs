//! The `dpdp` command-line tool.

mod input;
mod payload;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand};
use dpdp_core::catalog::{enumerate_connected_multigraphs, write_edge_list, write_graph6, MAX_MULTIGRAPH_EDGES};
use dpdp_core::domination::{enumerate_dp_pairs, find_dp_pair, is_dp_pair};
use dpdp_core::goodsub::{find_good_subgraph, reduce_via_good_subgraph, verify_good_certificate};
use dpdp_core::minimality::{is_minimal_by_deletion, xcheck};
use dpdp_core::subdivision::{build_s2, invert_s2, Alpha};
use dpdp_core::{is_dpdp, DpPair, Multigraph, XcheckReport, ENGINE_VERSION};
use rayon::prelude::*;
use serde::Serialize;

pub use input::{parse_alpha, Format};
use payload::{triple, triples, CertificateJson, EdgeTriple, GraphJson, PairJson, ReductionJson, Verdict};

/// Environment variable holding the worker count for survey and xcheck.
pub const WORKERS_ENV: &str = "DPDP_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "dpdp", version, about = "Dominating/paired-dominating partitions of multigraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct InputArgs {
    /// Graph file (graph6 or edge list)
    pub file: PathBuf,
    /// Input format; inferred from the extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the graph has a DP-pair and print one
    Check(InputArgs),
    /// List DP-pairs
    Pairs {
        #[command(flatten)]
        input: InputArgs,
        /// Stop after this many pairs
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Decide minimality by the edge-deletion test
    Minimal(InputArgs),
    /// Build the 2-subdivision graph
    S2 {
        #[command(flatten)]
        input: InputArgs,
        /// Leaf multiplicities as `leaf:count,...`
        #[arg(long, default_value = "")]
        alpha: String,
        /// Write the graph as an edge list here, with labels in `<out>.labels.json`
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the base graph of a 2-subdivision graph
    Invert(InputArgs),
    /// Search for a good subgraph
    Goodsub(InputArgs),
    /// Tabulate properties of every graph in a graph6 file
    Survey {
        #[command(flatten)]
        input: InputArgs,
        /// CSV destination; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the minimality characterizations on S₂(H)
    Xcheck {
        /// Sweep all connected multigraphs with at most this many edges
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        max_edges: Option<usize>,
        /// graph6 file of base graphs
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the graph in DOT
    Dot(InputArgs),
}

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Computed = 0,
    InputError = 1,
    Inconsistent = 2,
}

/// A certificate failed re-verification or the characterizations disagreed.
#[derive(Debug)]
pub struct ConsistencyFailure(pub String);

impl fmt::Display for ConsistencyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "consistency failure: {}", self.0)
    }
}

impl std::error::Error for ConsistencyFailure {}

fn inconsistent(msg: impl Into<String>) -> anyhow::Error {
    ConsistencyFailure(msg.into()).into()
}

/// Exit code for an error returned by [`run`].
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<ConsistencyFailure>().is_some() {
        Status::Inconsistent as i32
    } else {
        Status::InputError as i32
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    match &cli.command {
        Command::Check(input) => cmd_check(input, out),
        Command::Pairs { input, cap } => cmd_pairs(input, *cap, out),
        Command::Minimal(input) => cmd_minimal(input, out),
        Command::S2 { input, alpha, out: dest } => cmd_s2(input, alpha, dest.as_deref(), out),
        Command::Invert(input) => cmd_invert(input, out),
        Command::Goodsub(input) => cmd_goodsub(input, out),
        Command::Survey { input, out: dest } => cmd_survey(input, dest.as_deref(), out),
        Command::Xcheck {
            max_edges,
            file,
            format,
        } => cmd_xcheck(*max_edges, file.as_deref(), *format, out),
        Command::Dot(input) => cmd_dot(input, out),
    }
}

fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(WORKERS_ENV) {
        let workers: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&w| w > 0)
            .with_context(|| format!("{WORKERS_ENV} must be a positive integer, got `{value}`"))?;
        builder = builder.num_threads(workers);
    }
    builder.build().context("starting worker pool")
}

fn emit<T: Serialize>(out: &mut dyn Write, command: &'static str, input: &Path, result: T) -> Result<()> {
    let verdict = Verdict {
        command,
        input: input.display().to_string(),
        result,
        engine_version: ENGINE_VERSION,
    };
    serde_json::to_writer_pretty(&mut *out, &verdict)?;
    writeln!(out)?;
    Ok(())
}

fn checked_pair(g: &Multigraph, pair: &DpPair) -> Result<PairJson> {
    if !is_dp_pair(g, pair) {
        return Err(inconsistent("DP-pair failed re-verification"));
    }
    Ok(PairJson::new(g, pair))
}

#[derive(Serialize)]
struct CheckResult {
    dpdp: bool,
    pair: Option<PairJson>,
}

fn cmd_check(input: &InputArgs, out: &mut dyn Write) -> Result<Status> {
    let g = input::read_graph(&input.file, input.format)?;
    let pair = find_dp_pair(&g).map(|p| checked_pair(&g, &p)).transpose()?;
    emit(out, "check", &input.file, CheckResult { dpdp: pair.is_some(), pair })?;
    Ok(Status::Computed)
}

#[derive(Serialize)]
struct PairsResult {
    cap: usize,
    count: usize,
    pairs: Vec<PairJson>,
}

fn cmd_pairs(input: &InputArgs, cap: usize, out: &mut dyn Write) -> Result<Status> {
    let g = input::read_graph(&input.file, input.format)?;
    let pairs = enumerate_dp_pairs(&g, cap)
        .iter()
        .map(|p| checked_pair(&g, p))
        .collect::<Result<Vec<_>>>()?;
    emit(
        out,
        "pairs",
        &input.file,
        PairsResult {
            cap,
            count: pairs.len(),
            pairs,
        },
    )?;
    Ok(Status::Computed)
}

#[derive(Serialize)]
struct DeletionWitness {
    /// Edge whose removal leaves a DPDP graph.
    edge: EdgeTriple,
    /// A DP-pair of the graph without that edge; matching edges keep their
    /// ids from the input graph.
    pair: PairJson,
}

#[derive(Serialize)]
struct MinimalResult {
    dpdp: bool,
    minimal: bool,
    /// A DP-pair of the input when it is DPDP.
    pair: Option<PairJson>,
    witness: Option<DeletionWitness>,
    /// Edge deletions tested, all of which destroy every DP-pair when minimal.
    deletions_checked: usize,
}

fn cmd_minimal(input: &InputArgs, out: &mut dyn Write) -> Result<Status> {
    let g = input::read_graph(&input.file, input.format)?;
    let pair = find_dp_pair(&g).map(|p| checked_pair(&g, &p)).transpose()?;
    let mut witness = None;
    let mut deletions_checked = 0;
    if pair.is_some() {
        for e in 0..g.edge_count() {
            deletions_checked += 1;
            let (smaller, map) = g.delete_edges(&[e]);
            if let Some(p) = find_dp_pair(&smaller) {
                if !is_dp_pair(&smaller, &p) {
                    return Err(inconsistent("deletion witness failed re-verification"));
                }
                let back: Vec<usize> = (0..g.edge_count()).filter(|&old| map[old].is_some()).collect();
                witness = Some(DeletionWitness {
                    edge: triple(&g, e),
                    pair: PairJson {
                        d: p.d.to_vec(),
                        p: p.p.to_vec(),
                        matching: triples(&g, p.matching.iter().map(|&new| back[new])),
                    },
                });
                break;
            }
        }
    }
    let minimal = pair.is_some() && witness.is_none();
    if minimal != is_minimal_by_deletion(&g) {
        return Err(inconsistent("minimality verdicts disagree"));
    }
    emit(
        out,
        "minimal",
        &input.file,
        MinimalResult {
            dpdp: pair.is_some(),
            minimal,
            pair,
            witness,
            deletions_checked,
        },
    )?;
    Ok(Status::Computed)
}

#[derive(Serialize)]
struct S2Result {
    n: usize,
    m: usize,
    alpha: Alpha,
    /// Present when the graph was written to a file.
    graph_file: Option<String>,
    labels_file: Option<String>,
    /// Present when no output file was given.
    graph: Option<GraphJson>,
    labeling: Option<dpdp_core::S2Labeling>,
}

fn labels_path(dest: &Path) -> PathBuf {
    let mut name = dest.as_os_str().to_owned();
    name.push(".labels.json");
    PathBuf::from(name)
}

fn cmd_s2(input: &InputArgs, alpha: &str, dest: Option<&Path>, out: &mut dyn Write) -> Result<Status> {
    let h = input::read_graph(&input.file, input.format)?;
    let alpha = parse_alpha(alpha)?;
    let (g, lab) = build_s2(&h, &alpha)?;
    let result = match dest {
        Some(dest) => {
            std::fs::write(dest, write_edge_list(&g)).with_context(|| format!("writing {}", dest.display()))?;
            let labels = labels_path(dest);
            std::fs::write(&labels, serde_json::to_string_pretty(&lab)?)
                .with_context(|| format!("writing {}", labels.display()))?;
            S2Result {
                n: g.vertex_count(),
                m: g.edge_count(),
                alpha: lab.alpha.clone(),
                graph_file: Some(dest.display().to_string()),
                labels_file: Some(labels.display().to_string()),
                graph: None,
                labeling: None,
            }
        }
        None => S2Result {
            n: g.vertex_count(),
            m: g.edge_count(),
            alpha: lab.alpha.clone(),
            graph_file: None,
            labels_file: None,
            graph: Some(GraphJson::new(&g)),
            labeling: Some(lab),
        },
    };
    emit(out, "s2", &input.file, result)?;
    Ok(Status::Computed)
}

#[derive(Serialize)]
struct InvertResult {
    is_2_subdivision: bool,
    base: Option<GraphJson>,
    alpha: Option<Alpha>,
    labeling: Option<dpdp_core::S2Labeling>,
}

/// Whether `build_s2(base, alpha)` equals `g` after renaming each vertex of
/// `g` to the rebuilt vertex carrying the same tag.
fn rebuilds(g: &Multigraph, lab: &dpdp_core::S2Labeling) -> Result<bool> {
    let (rebuilt, rlab) = build_s2(&lab.base, &lab.alpha)?;
    if rebuilt.vertex_count() != g.vertex_count() || lab.tags.len() != g.vertex_count() {
        return Ok(false);
    }
    let Some(rename) = lab.tags.iter().map(|&t| rlab.vertex_of(t)).collect::<Option<Vec<_>>>() else {
        return Ok(false);
    };
    let renamed = Multigraph::new(g.vertex_count(), g.edges().iter().map(|r| (rename[r.u], rename[r.v])))?;
    Ok(renamed.same_edges_as(&rebuilt))
}

fn cmd_invert(input: &InputArgs, out: &mut dyn Write) -> Result<Status> {
    let g = input::read_graph(&input.file, input.format)?;
    let result = match invert_s2(&g) {
        Some(lab) => {
            if !rebuilds(&g, &lab)? {
                return Err(inconsistent("recovered base graph does not rebuild the input"));
            }
            InvertResult {
                is_2_subdivision: true,
                base: Some(GraphJson::new(&lab.base)),
                alpha: Some(lab.alpha.clone()),
                labeling: Some(lab),
            }
        }
        None => InvertResult {
            is_2_subdivision: false,
            base: None,
            alpha: None,
            labeling: None,
        },
    };
    emit(out, "invert", &input.file, result)?;
    Ok(Status::Computed)
}

#[derive(Serialize)]
struct GoodsubResult {
    found: bool,
    certificate: Option<CertificateJson>,
    /// The induced reduction of S₂(H) with every leaf multiplicity 1.
    reduction: Option<ReductionJson>,
}

fn cmd_goodsub(input: &InputArgs, out: &mut dyn Write) -> Result<Status> {
    let h = input::read_graph(&input.file, input.format)?;
    ensure!(!h.has_isolated_vertex(), "the graph has an isolated vertex");
    let result = match find_good_subgraph(&h) {
        Some(cert) => {
            verify_good_certificate(&h, &cert).map_err(|e| inconsistent(format!("certificate: {e}")))?;
            let plan = reduce_via_good_subgraph(&h, &Alpha::new(), &cert)
                .map_err(|e| inconsistent(format!("reduction: {e}")))?;
            let (s2, _) = build_s2(&h, &Alpha::new())?;
            GoodsubResult {
                found: true,
                certificate: Some(CertificateJson::new(&h, &cert)),
                reduction: Some(ReductionJson::new(&s2, &plan)),
            }
        }
        None => GoodsubResult {
            found: false,
            certificate: None,
            reduction: None,
        },
    };
    emit(out, "goodsub", &input.file, result)?;
    Ok(Status::Computed)
}

#[derive(Serialize)]
struct SurveyRow {
    index: usize,
    graph6: String,
    n: usize,
    m: usize,
    dpdp: bool,
    minimal: bool,
    is_2_subdivision: bool,
    good_subgraph_found: bool,
}

fn survey_row(index: usize, g: &Multigraph) -> Result<SurveyRow> {
    let dpdp = is_dpdp(g);
    Ok(SurveyRow {
        index,
        graph6: write_graph6(g)?,
        n: g.vertex_count(),
        m: g.edge_count(),
        dpdp,
        minimal: dpdp && is_minimal_by_deletion(g),
        is_2_subdivision: invert_s2(g).is_some(),
        good_subgraph_found: !g.has_isolated_vertex() && find_good_subgraph(g).is_some(),
    })
}

fn cmd_survey(input: &InputArgs, dest: Option<&Path>, out: &mut dyn Write) -> Result<Status> {
    let graphs = input::read_graphs(&input.file, input.format)?;
    let rows = worker_pool()?.install(|| {
        graphs
            .par_iter()
            .enumerate()
            .map(|(i, g)| survey_row(i, g))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut buffer = Vec::new();
    {
        let mut writer = csv::Writer::from_writer(&mut buffer);
        for row in &rows {
            writer.serialize(row)?;
        }
        writer.flush()?;
    }
    match dest {
        Some(dest) => {
            std::fs::write(dest, &buffer).with_context(|| format!("writing {}", dest.display()))?;
            #[derive(Serialize)]
            struct SurveyResult {
                graphs: usize,
                output: String,
            }
            emit(
                out,
                "survey",
                &input.file,
                SurveyResult {
                    graphs: rows.len(),
                    output: dest.display().to_string(),
                },
            )?;
        }
        None => out.write_all(&buffer)?,
    }
    Ok(Status::Computed)
}

#[derive(Serialize)]
struct Disagreement {
    index: usize,
    graph: GraphJson,
    minimal_by_deletion: bool,
    unique_pair: bool,
    no_good_subgraph: bool,
}

#[derive(Serialize)]
struct XcheckResult {
    graphs_checked: usize,
    /// Input graphs that are disconnected or have isolated vertices.
    skipped: Vec<usize>,
    minimal: usize,
    consistent: bool,
    disagreements: Vec<Disagreement>,
}

fn cmd_xcheck(
    max_edges: Option<usize>,
    file: Option<&Path>,
    format: Option<Format>,
    out: &mut dyn Write,
) -> Result<Status> {
    let (label, graphs) = match (max_edges, file) {
        (Some(k), None) => {
            if k > MAX_MULTIGRAPH_EDGES {
                bail!("--max-edges is limited to {MAX_MULTIGRAPH_EDGES}");
            }
            (format!("max-edges={k}"), enumerate_connected_multigraphs(k)?)
        }
        (None, Some(path)) => (path.display().to_string(), input::read_graphs(path, format)?),
        _ => bail!("give either --max-edges or a graph file"),
    };
    let usable = |h: &Multigraph| h.is_connected() && !h.has_isolated_vertex();
    let reports: Vec<(usize, XcheckReport)> = worker_pool()?.install(|| {
        graphs
            .par_iter()
            .enumerate()
            .filter(|(_, h)| usable(h))
            .map(|(index, h)| Ok((index, xcheck(h)?)))
            .collect::<Result<Vec<_>>>()
    })?;
    let minimal = reports.iter().filter(|(_, r)| r.minimal_by_deletion).count();
    let skipped: Vec<usize> = (0..graphs.len()).filter(|&i| !usable(&graphs[i])).collect();
    let disagreements: Vec<Disagreement> = reports
        .iter()
        .filter(|(_, r)| !r.consistent)
        .map(|(index, r)| Disagreement {
            index: *index,
            graph: GraphJson::new(&graphs[*index]),
            minimal_by_deletion: r.minimal_by_deletion,
            unique_pair: r.unique_pair,
            no_good_subgraph: r.no_good_subgraph,
        })
        .collect();
    let consistent = disagreements.is_empty();
    let verdict = Verdict {
        command: "xcheck",
        input: label,
        result: XcheckResult {
            graphs_checked: graphs.len() - skipped.len(),
            skipped,
            minimal,
            consistent,
            disagreements,
        },
        engine_version: ENGINE_VERSION,
    };
    serde_json::to_writer_pretty(&mut *out, &verdict)?;
    writeln!(out)?;
    if consistent {
        Ok(Status::Computed)
    } else {
        eprintln!("xcheck: characterizations disagree");
        Ok(Status::Inconsistent)
    }
}

fn cmd_dot(input: &InputArgs, out: &mut dyn Write) -> Result<Status> {
    let g = input::read_graph(&input.file, input.format)?;
    writeln!(out, "graph G {{")?;
    for v in g.vertices() {
        writeln!(out, "  {v};")?;
    }
    for r in g.edges() {
        writeln!(out, "  {} -- {} [label={}];", r.u, r.v, r.id)?;
    }
    writeln!(out, "}}")?;
    Ok(Status::Computed)
}
