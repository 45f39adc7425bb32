//! Command-line pipeline for single-uniprior index coding: parse a graph,
//! prune it, report the optimal codelength, emit the code or the optimality
//! certificate, cross-check against the brute-force oracles, and generate
//! seeded test instances.
//!
//! Exit codes: 0 success (and oracle agreement), 1 input error,
//! 2 verification disagreement, 3 scale-guard refusal.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use uniprior::{
    certificate_for, construct_code, derive_decoders, min_any_length, min_linear_length,
    optimal_length, prune, ArcOrigin, DecodabilityInstance, GraphError, GraphKind, IndexCode,
    InformationFlowGraph, LabelMap, LowerBoundCertificate, OracleError, PruneResult, TieBreak,
    Vertex,
};

/// The exhaustive linear oracle enumerates every row space of GF(2)^n;
/// past this many vertices `verify` refuses rather than grind.
const LINEAR_ORACLE_MAX_N: usize = 8;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "uniprior",
    version,
    about = "Optimal XOR index codes for broadcast problems where every receiver knows exactly one message"
)]
struct Cli {
    /// Print per-stage wall times to stderr (stdout stays byte-identical).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the optimal codelength of a graph file.
    Length { file: PathBuf },
    /// Construct the optimal code and per-receiver decoders.
    Construct {
        file: PathBuf,
        /// Also write the code as a JSON document.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the claimed length against the lower-bound certificate and the
    /// brute-force oracles.
    Verify {
        file: PathBuf,
        /// Also run the exhaustive nonlinear oracle (n <= 3 only).
        #[arg(long)]
        nonlinear: bool,
        /// Cap the oracle searches at this length (default: the claimed length).
        #[arg(long = "max-l", value_name = "N")]
        max_l: Option<usize>,
    },
    /// Emit the prune report and lower-bound witness as JSON.
    Certificate { file: PathBuf },
    /// Generate a seeded random graph.
    Generate {
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Write to a file (.json for the structured format) instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    /// Acyclic with at most one outgoing arc per vertex.
    AcyclicOd1,
    /// Strongly connected.
    StronglyConnected,
    /// Unconstrained simple digraph.
    General,
}

impl From<KindArg> for GraphKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::AcyclicOd1 => GraphKind::AcyclicOutDegreeOne,
            KindArg::StronglyConnected => GraphKind::StronglyConnected,
            KindArg::General => GraphKind::General,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems are input errors (exit 1); --help and
            // --version are successes.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let timings = Timings(cli.timings);
    let outcome = match cli.command {
        Command::Length { file } => cmd_length(&file, &timings),
        Command::Construct { file, output } => cmd_construct(&file, output.as_deref(), &timings),
        Command::Verify {
            file,
            nonlinear,
            max_l,
        } => cmd_verify(&file, nonlinear, max_l, &timings),
        Command::Certificate { file } => cmd_certificate(&file, &timings),
        Command::Generate {
            kind,
            n,
            seed,
            output,
        } => cmd_generate(kind, n, seed, output.as_deref()),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

struct Timings(bool);

impl Timings {
    fn note(&self, stage: &str, from: Instant) {
        if self.0 {
            eprintln!("timing: {stage} {:.3?}", from.elapsed());
        }
    }
}

/// A parsed and preprocessed problem. When the input has no arcs at all the
/// graph is empty and everything downstream degenerates to length 0.
struct Problem {
    original_n: usize,
    graph: InformationFlowGraph,
    map: LabelMap,
    dropped: Vec<Vertex>,
}

fn load(file: &Path, timings: &Timings) -> Result<Problem> {
    let t = Instant::now();
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let raw = if file.extension().is_some_and(|e| e == "json") {
        InformationFlowGraph::from_json(&text)
    } else {
        InformationFlowGraph::from_edge_list(&text)
    }
    .with_context(|| format!("parsing {}", file.display()))?;
    let original_n = raw.vertex_count();
    let problem = match raw.preprocess() {
        Ok((graph, map)) => {
            let dropped = (1..=original_n)
                .filter(|&v| map.to_new(v).is_none())
                .collect();
            Problem {
                original_n,
                graph,
                map,
                dropped,
            }
        }
        Err(GraphError::NoArcs) => Problem {
            original_n,
            graph: InformationFlowGraph::new(0, []).expect("empty graph is valid"),
            map: LabelMap::identity(0),
            dropped: (1..=original_n).collect(),
        },
        Err(other) => return Err(other.into()),
    };
    timings.note("parse", t);
    Ok(problem)
}

impl Problem {
    fn report_dropped(&self) {
        if !self.dropped.is_empty() {
            let list: Vec<String> = self.dropped.iter().map(|v| v.to_string()).collect();
            println!("removed isolated vertices: {}", list.join(", "));
        }
    }

    fn original(&self, v: Vertex) -> Vertex {
        self.map.to_original(v)
    }

    fn original_arc(&self, (t, h): (Vertex, Vertex)) -> [usize; 2] {
        [self.original(t), self.original(h)]
    }
}

fn decomposition_summary(pr: &PruneResult) -> String {
    let comps = pr.components();
    let comp_part = match comps.len() {
        0 => "components: 0".to_string(),
        1 => format!("components: 1 (size {})", comps[0].len()),
        k => {
            let sizes: Vec<String> = comps.iter().map(|c| c.len().to_string()).collect();
            format!("components: {k} (sizes {})", sizes.join(", "))
        }
    };
    format!(
        "l* = {}; {}; residual arcs: {}",
        optimal_length(pr),
        comp_part,
        pr.residual_arcs().len()
    )
}

fn cmd_length(file: &Path, timings: &Timings) -> Result<ExitCode> {
    let p = load(file, timings)?;
    let t = Instant::now();
    let pr = prune(&p.graph, TieBreak::Deterministic);
    timings.note("prune", t);
    p.report_dropped();
    println!("{}", decomposition_summary(&pr));
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(file: &Path, output: Option<&Path>, timings: &Timings) -> Result<ExitCode> {
    let p = load(file, timings)?;
    let t = Instant::now();
    let pr = prune(&p.graph, TieBreak::Deterministic);
    timings.note("prune", t);
    let t = Instant::now();
    let code = derive_decoders(&p.graph, construct_code(&pr))
        .context("deriving decoders for a constructed code")?;
    timings.note("construct", t);

    p.report_dropped();
    println!("l* = {}", code.length());
    for (i, support) in code.rows().iter().enumerate() {
        let original: Vec<Vertex> = support.iter().map(|&v| p.original(v)).collect();
        println!("row {}: {}", i + 1, uniprior::xor_label(&original));
    }
    for decoder in code.decoders() {
        let receiver = p.original(decoder.receiver());
        for recipe in decoder.recipes() {
            let mut terms: Vec<String> = recipe
                .codeword_bits()
                .iter()
                .map(|&b| format!("y{}", b + 1))
                .collect();
            if recipe.uses_own() {
                terms.push(format!("x{receiver}"));
            }
            println!(
                "receiver {receiver} decodes x{} = {}",
                p.original(recipe.message()),
                terms.join(" + ")
            );
        }
    }

    if let Some(out) = output {
        let doc = code_document(&p, &code);
        fs::write(out, serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
            .with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_certificate(file: &Path, timings: &Timings) -> Result<ExitCode> {
    let p = load(file, timings)?;
    let t = Instant::now();
    let pr = prune(&p.graph, TieBreak::Deterministic);
    let cert = certificate_for(&p.graph, &pr);
    cert.check(&p.graph)
        .context("internal: produced certificate failed its own check")?;
    timings.note("certificate", t);
    let doc = certificate_document(&p, &pr, &cert);
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    file: &Path,
    nonlinear: bool,
    max_l: Option<usize>,
    timings: &Timings,
) -> Result<ExitCode> {
    let p = load(file, timings)?;
    let n = p.graph.vertex_count();
    if n > LINEAR_ORACLE_MAX_N {
        eprintln!(
            "refused: n={n} exceeds the linear oracle cap of {LINEAR_ORACLE_MAX_N} vertices; \
             `certificate` still validates instances of any size"
        );
        return Ok(ExitCode::from(3));
    }

    let t = Instant::now();
    let pr = prune(&p.graph, TieBreak::Deterministic);
    let claimed = optimal_length(&pr);
    let cert = certificate_for(&p.graph, &pr);
    timings.note("certificate", t);

    let cap = max_l.unwrap_or(claimed);
    let inst = DecodabilityInstance::from_graph(&p.graph);
    if nonlinear {
        // Fail the scale guard before printing a partial report.
        if let Err(e @ OracleError::ScaleGuard { .. }) = min_any_length(&inst, cap) {
            eprintln!("refused: {e}");
            return Ok(ExitCode::from(3));
        }
    }

    let mut agree = true;
    println!("claimed l* = {claimed}");
    match cert.check(&p.graph) {
        Ok(()) => println!(
            "certificate: valid ({} arcs, acyclic, out-degrees <= 1)",
            cert.claimed_length()
        ),
        Err(e) => {
            println!("certificate: INVALID: {e}");
            agree = false;
        }
    }

    let t = Instant::now();
    let lin = min_linear_length(&inst, cap);
    timings.note("linear oracle", t);
    report_oracle("linear oracle", lin, cap, claimed, &mut agree);

    if nonlinear {
        let t = Instant::now();
        let any = min_any_length(&inst, cap).expect("guard was checked above");
        timings.note("nonlinear oracle", t);
        report_oracle("nonlinear oracle", any, cap, claimed, &mut agree);
    }

    if agree {
        println!("verdict: agree");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verdict: DISAGREE");
        Ok(ExitCode::from(2))
    }
}

fn report_oracle(
    name: &str,
    result: Option<usize>,
    cap: usize,
    claimed: usize,
    agree: &mut bool,
) {
    match result {
        Some(l) => {
            println!("{name}: minimum length {l}");
            if l != claimed {
                *agree = false;
            }
        }
        None if cap < claimed => {
            // The user capped the search below the claim; finding nothing
            // shorter is exactly what the claim predicts.
            println!("{name}: no code of length <= {cap} (cap below claimed length, consistent)");
        }
        None => {
            println!("{name}: no code of length <= {cap}");
            *agree = false;
        }
    }
}

fn cmd_generate(kind: KindArg, n: usize, seed: u64, output: Option<&Path>) -> Result<ExitCode> {
    if n < 2 {
        bail!("n must be at least 2, got {n}");
    }
    let g = uniprior::generate(kind.into(), n, seed);
    match output {
        Some(out) => {
            let text = if out.extension().is_some_and(|e| e == "json") {
                g.to_json() + "\n"
            } else {
                g.to_edge_list()
            };
            fs::write(out, text).with_context(|| format!("writing {}", out.display()))?;
        }
        None => print!("{}", g.to_edge_list()),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CodeDoc {
    schema_version: u32,
    n: usize,
    removed_isolated_vertices: Vec<usize>,
    length: usize,
    rows: Vec<Vec<usize>>,
    row_labels: Vec<String>,
    decoders: Vec<DecoderDoc>,
}

#[derive(Serialize)]
struct DecoderDoc {
    receiver: usize,
    wants: Vec<RecipeDoc>,
}

#[derive(Serialize)]
struct RecipeDoc {
    message: usize,
    /// 0-based indices into `rows`.
    codeword_bits: Vec<usize>,
    own: bool,
}

fn code_document(p: &Problem, code: &IndexCode) -> CodeDoc {
    let rows: Vec<Vec<usize>> = code
        .rows()
        .iter()
        .map(|support| support.iter().map(|&v| p.original(v)).collect())
        .collect();
    let row_labels = rows.iter().map(|r| uniprior::xor_label(r)).collect();
    let decoders = code
        .decoders()
        .iter()
        .filter(|d| !d.recipes().is_empty())
        .map(|d| DecoderDoc {
            receiver: p.original(d.receiver()),
            wants: d
                .recipes()
                .iter()
                .map(|r| RecipeDoc {
                    message: p.original(r.message()),
                    codeword_bits: r.codeword_bits().to_vec(),
                    own: r.uses_own(),
                })
                .collect(),
        })
        .collect();
    CodeDoc {
        schema_version: SCHEMA_VERSION,
        n: p.original_n,
        removed_isolated_vertices: p.dropped.clone(),
        length: code.length(),
        rows,
        row_labels,
        decoders,
    }
}

#[derive(Serialize)]
struct CertificateDoc {
    schema_version: u32,
    n: usize,
    removed_isolated_vertices: Vec<usize>,
    optimal_length: usize,
    prune: PruneDoc,
    witness: WitnessDoc,
}

#[derive(Serialize)]
struct PruneDoc {
    removed_arcs: Vec<RemovedArcDoc>,
    components: Vec<Vec<usize>>,
    residual_arcs: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct RemovedArcDoc {
    removed: [usize; 2],
    kept: [usize; 2],
}

#[derive(Serialize)]
struct WitnessDoc {
    claimed_length: usize,
    arcs: Vec<WitnessArcDoc>,
}

#[derive(Serialize)]
struct WitnessArcDoc {
    arc: [usize; 2],
    origin: ArcOrigin,
}

fn certificate_document(
    p: &Problem,
    pr: &PruneResult,
    cert: &LowerBoundCertificate,
) -> CertificateDoc {
    CertificateDoc {
        schema_version: SCHEMA_VERSION,
        n: p.original_n,
        removed_isolated_vertices: p.dropped.clone(),
        optimal_length: optimal_length(pr),
        prune: PruneDoc {
            removed_arcs: pr
                .removed_arcs()
                .iter()
                .map(|ra| RemovedArcDoc {
                    removed: p.original_arc(ra.removed),
                    kept: p.original_arc(ra.kept),
                })
                .collect(),
            components: pr
                .components()
                .iter()
                .map(|c| c.iter().map(|&v| p.original(v)).collect())
                .collect(),
            residual_arcs: pr
                .residual_arcs()
                .iter()
                .map(|&a| p.original_arc(a))
                .collect(),
        },
        witness: WitnessDoc {
            claimed_length: cert.claimed_length(),
            arcs: cert
                .arcs()
                .iter()
                .map(|&(a, origin)| WitnessArcDoc {
                    arc: p.original_arc(a),
                    origin,
                })
                .collect(),
        },
    }
}
