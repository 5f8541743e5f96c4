//! Graph documents, DOT output, and the command-line surface.
//!
//! A graph document is JSON with two fields:
//!
//! ```json
//! {"vertices": ["a", "b", "c"], "edges": [{"u": "a", "v": "b", "m": 2}]}
//! ```
//!
//! A missing pair of vertices means the label is infinite.

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::{self, DeserializeSeed, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::complex::{connectivity_check, develop_ball, fundamental_domain, locally_6_large_check, systole_certificate};
use crate::criteria::{
    acylindricity_report, angle_link_check, enumerate_splittings, lemma_product_check, no_full_4cycle_check,
    prop_cliques_check, weak_malnormality_witness, MAX_SPLITTING_GENERATORS,
};
use crate::finite_type::{finite_type_cliques, is_locally_reducible, maximal_dihedral_edges};
use crate::graph::{valid_name, DefiningGraph, GenSet};
use crate::report::{CertificateReport, Verdict};
use crate::words::{OracleMode, Word, WordOracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        let message = match full.rsplit_once(" at line ") {
            Some((m, _)) => m.to_string(),
            None => full,
        };
        ParseError { line: e.line(), column: e.column(), message }
    }
}

struct Names(Vec<String>);

impl<'de> Deserialize<'de> for Names {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Names;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of vertex names")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Names, A::Error> {
                let mut names: Vec<String> = Vec::new();
                while let Some(name) = seq.next_element::<String>()? {
                    if !valid_name(&name) {
                        return Err(de::Error::custom(format!(
                            "invalid vertex name {name:?} (names are nonempty, without whitespace or a trailing '-')"
                        )));
                    }
                    if names.contains(&name) {
                        return Err(de::Error::custom(format!("duplicate vertex {name:?}")));
                    }
                    names.push(name);
                }
                Ok(Names(names))
            }
        }
        d.deserialize_seq(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    u: String,
    v: String,
    m: i64,
}

type Edge = (String, String, i64);

fn check_edge(e: &RawEdge, known: Option<&[String]>, pairs: &mut HashSet<(String, String)>) -> Result<(), String> {
    if e.u == e.v {
        return Err(format!("self-loop on {:?}", e.u));
    }
    if e.m < 2 {
        return Err(format!("label {} on edge {}-{} is below 2", e.m, e.u, e.v));
    }
    if e.m > u32::MAX as i64 {
        return Err(format!("label {} on edge {}-{} is too large", e.m, e.u, e.v));
    }
    if let Some(names) = known {
        for end in [&e.u, &e.v] {
            if !names.contains(end) {
                return Err(format!("unknown endpoint {end:?}"));
            }
        }
    }
    let key = if e.u < e.v { (e.u.clone(), e.v.clone()) } else { (e.v.clone(), e.u.clone()) };
    if !pairs.insert(key) {
        return Err(format!("duplicate edge {}-{}", e.u, e.v));
    }
    Ok(())
}

struct EdgesSeed<'a> {
    known: Option<&'a [String]>,
}

impl<'de> DeserializeSeed<'de> for EdgesSeed<'_> {
    type Value = Vec<Edge>;
    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<Vec<Edge>, D::Error> {
        d.deserialize_seq(self)
    }
}

impl<'de> Visitor<'de> for EdgesSeed<'_> {
    type Value = Vec<Edge>;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an array of {u, v, m} records")
    }
    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<Edge>, A::Error> {
        let mut pairs = HashSet::new();
        let mut out = Vec::new();
        while let Some(e) = seq.next_element::<RawEdge>()? {
            check_edge(&e, self.known, &mut pairs).map_err(de::Error::custom)?;
            out.push((e.u, e.v, e.m));
        }
        Ok(out)
    }
}

struct Document {
    names: Vec<String>,
    edges: Vec<Edge>,
}

impl<'de> Deserialize<'de> for Document {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Document;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with fields \"vertices\" and \"edges\"")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Document, A::Error> {
                let mut names: Option<Vec<String>> = None;
                let mut edges: Option<(Vec<Edge>, bool)> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "vertices" if names.is_none() => names = Some(map.next_value::<Names>()?.0),
                        "edges" if edges.is_none() => {
                            let checked = names.is_some();
                            let list = map.next_value_seed(EdgesSeed { known: names.as_deref() })?;
                            edges = Some((list, checked));
                        }
                        "vertices" | "edges" => return Err(de::Error::custom(format!("duplicate field {key:?}"))),
                        other => return Err(de::Error::unknown_field(other, &["vertices", "edges"])),
                    }
                }
                let names = names.ok_or_else(|| de::Error::missing_field("vertices"))?;
                let (edges, checked) = edges.ok_or_else(|| de::Error::missing_field("edges"))?;
                if !checked {
                    // Edges came first; endpoints can only be checked now.
                    for (u, v, _) in &edges {
                        for end in [u, v] {
                            if !names.contains(end) {
                                return Err(de::Error::custom(format!("unknown endpoint {end:?}")));
                            }
                        }
                    }
                }
                Ok(Document { names, edges })
            }
        }
        d.deserialize_map(V)
    }
}

pub fn parse_graph_document(text: &str) -> Result<DefiningGraph, ParseError> {
    let doc: Document = serde_json::from_str(text)?;
    DefiningGraph::new(&doc.names, &doc.edges).map_err(|e| ParseError { line: 1, column: 1, message: e.to_string() })
}

#[derive(Serialize)]
struct EdgeOut<'a> {
    u: &'a str,
    v: &'a str,
    m: u32,
}

/// Canonical graph document; `∞` labels are omitted.
pub fn serialize_graph(g: &DefiningGraph) -> String {
    let edges: Vec<EdgeOut> =
        g.edges().into_iter().map(|(u, v, m)| EdgeOut { u: g.name(u), v: g.name(v), m }).collect();
    serde_json::to_string_pretty(&json!({ "vertices": g.names(), "edges": edges })).expect("graphs always serialize")
}

const BLOCK_COLORS: [&str; 8] = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"];

/// Defining graph in DOT: vertices coloured by 2-component, 2-labeled edges drawn bold.
pub fn graph_to_dot(g: &DefiningGraph) -> String {
    let parts = g.hat_components();
    let mut out = String::from("graph defining {\n  node [shape=circle, style=filled];\n");
    for s in g.generators() {
        let color = BLOCK_COLORS[parts.block_of(s).unwrap_or(0) % BLOCK_COLORS.len()];
        out.push_str(&format!("  \"{}\" [fillcolor=\"{color}\"];\n", g.name(s)));
    }
    for (u, v, m) in g.edges() {
        let style = if m == 2 { "style=bold, color=\"#1f78b4\", penwidth=2" } else { "style=solid" };
        out.push_str(&format!("  \"{}\" -- \"{}\" [label=\"{m}\", {style}];\n", g.name(u), g.name(v)));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Acylindrical,
    AngleLink,
    Cliques,
    #[value(name = "no-full-4-cycle")]
    NoFull4Cycle,
    #[value(name = "locally-6-large")]
    Locally6Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    /// Bounded weak-malnormality check for the block containing `--block`.
    Malnormal,
    /// Bounded search for `t1 u1 = u2 t2` between `--block` and `--other`.
    LemmaProduct,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Blocks, finite-type data, local reducibility, and the fundamental domain.
    Analyze {
        graph: PathBuf,
        /// Word to normalize, e.g. "a b- a".
        #[arg(long)]
        word: Option<String>,
    },
    /// Develop a ball of the 2-complete Artin complex.
    Develop { graph: PathBuf },
    /// Systole and local 6-largeness certificates on a developed ball.
    Systole { graph: PathBuf },
    /// Run one criterion check.
    Certify {
        graph: PathBuf,
        #[arg(long, value_enum)]
        criterion: CriterionArg,
    },
    /// Bounded group-element checks.
    Witness {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "malnormal")]
        kind: WitnessKind,
        /// A generator of the block to use.
        #[arg(long)]
        block: String,
        /// A generator of the second block (lemma-product only).
        #[arg(long)]
        other: Option<String>,
    },
    /// List amalgam splittings along separating full subgraphs.
    Splittings { graph: PathBuf },
}

impl Command {
    pub fn graph_path(&self) -> &PathBuf {
        match self {
            Command::Analyze { graph, .. }
            | Command::Develop { graph }
            | Command::Systole { graph }
            | Command::Certify { graph, .. }
            | Command::Witness { graph, .. }
            | Command::Splittings { graph } => graph,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "artinlab", version, about = "2-complete Artin complexes and certificates for Artin groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Word-problem oracle; defaults to raag when every label is 2.
    #[arg(long, global = true)]
    pub oracle: Option<OracleMode>,
    #[arg(long, global = true, default_value_t = 2)]
    pub radius: usize,
    #[arg(long = "max-len", global = true, default_value_t = 4)]
    pub max_len: usize,
    /// Longest cycle searched; the systole bound is one more.
    #[arg(long = "max-cycle-len", global = true, default_value_t = 5)]
    pub max_cycle_len: usize,
    /// Write the DOT rendering here.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Write the report document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Validated parameters of one run.
#[derive(Debug, Clone)]
pub struct RunConfiguration {
    pub command: Command,
    pub mode: OracleMode,
    pub radius: usize,
    pub max_len: usize,
    pub max_cycle_len: usize,
    pub dot: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Read { path: String, message: String },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        3
    }
}

fn default_mode(g: &DefiningGraph, cmd: &Command) -> OracleMode {
    if OracleMode::Raag.check(g).is_ok() {
        OracleMode::Raag
    } else if matches!(cmd, Command::Analyze { .. }) && OracleMode::Dihedral.check(g).is_ok() {
        OracleMode::Dihedral
    } else {
        OracleMode::CoxeterShadow
    }
}

impl RunConfiguration {
    pub fn new(cli: Cli, g: &DefiningGraph) -> Result<Self, RunError> {
        let mode = cli.oracle.unwrap_or_else(|| default_mode(g, &cli.command));
        mode.check(g).map_err(|e| RunError::Usage(e.to_string()))?;
        Ok(RunConfiguration {
            command: cli.command,
            mode,
            radius: cli.radius,
            max_len: cli.max_len,
            max_cycle_len: cli.max_cycle_len,
            dot: cli.dot,
            out: cli.out,
        })
    }
}

/// Documents produced by a run and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub document: String,
    pub dot: Option<String>,
}

const SHADOW_COMPLEX_NOTE: &str =
    "coxeter-shadow cosets are cosets of the Coxeter quotient; this ball belongs to the quotient's complex";

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values always serialize")
}

fn report_output(r: &CertificateReport, dot: Option<String>) -> CommandOutput {
    CommandOutput { exit_code: r.exit_code(), document: r.to_json(), dot }
}

fn block_containing(g: &DefiningGraph, name: &str) -> Result<GenSet, RunError> {
    let s = g.generator(name).ok_or_else(|| RunError::Usage(format!("unknown generator {name:?}")))?;
    Ok(g.two_completion_of_vertex(s))
}

fn analyze(cfg: &RunConfiguration, g: &DefiningGraph, word: Option<&str>) -> Result<Value, RunError> {
    let parts = g.hat_components();
    let hat_edges: Vec<[&str; 2]> =
        g.edges().into_iter().filter(|e| e.2 == 2).map(|(u, v, _)| [g.name(u), g.name(v)]).collect();
    let witness = is_locally_reducible(g).err().map(|w| {
        json!({ "vertices": w.vertices.iter().map(|&v| g.name(v)).collect::<Vec<_>>(), "labels": w.labels })
    });
    let dihedral: Vec<Value> = maximal_dihedral_edges(g)
        .into_iter()
        .map(|e| {
            json!({ "u": g.name(e.u), "v": g.name(e.v), "m": e.m,
                    "completion": g.set_names(e.completion), "proper_completion": e.proper_completion })
        })
        .collect();
    let domain = match fundamental_domain(g) {
        Ok(k) => json!({
            "dimension": k.dimension(),
            "vertices": k.blocks.iter().zip(&k.vertex_types)
                .map(|(&b, &t)| json!({ "block": g.set_names(b), "local_group": g.set_names(t) }))
                .collect::<Vec<_>>(),
            "faces": k.faces().into_iter()
                .map(|(f, grp)| json!({ "vertices": f, "local_group": g.set_names(grp) }))
                .collect::<Vec<_>>(),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let mut doc = json!({
        "generators": g.names(),
        "edges": g.edges().into_iter().map(|(u, v, m)| json!({ "u": g.name(u), "v": g.name(v), "m": m })).collect::<Vec<_>>(),
        "hat_edges": hat_edges,
        "blocks": parts.blocks.iter().map(|&b| g.set_names(b)).collect::<Vec<_>>(),
        "locally_reducible": witness.is_none(),
        "local_reducibility_witness": witness,
        "finite_type_cliques": finite_type_cliques(g, 2).into_iter().map(|c| g.set_names(c)).collect::<Vec<_>>(),
        "maximal_dihedral_edges": dihedral,
        "fundamental_domain": domain,
    });
    if let Some(text) = word {
        let oracle = WordOracle::new(g, cfg.mode).map_err(|e| RunError::Usage(e.to_string()))?;
        let w: Word = oracle.parse(text).map_err(|e| RunError::Usage(e.to_string()))?;
        let nf = oracle.normal_form(&w).word;
        doc["word"] = json!({
            "input": w.tokens(g),
            "oracle": cfg.mode.to_string(),
            "normal_form": nf.tokens(g),
            "is_identity": nf.is_empty(),
            "soundness": oracle.soundness(),
        });
    }
    Ok(doc)
}

pub fn run_command(cfg: &RunConfiguration, g: &DefiningGraph) -> Result<CommandOutput, RunError> {
    let usage = |e: &dyn std::fmt::Display| RunError::Usage(e.to_string());
    let wants_dot = cfg.dot.is_some();
    let graph_dot = || wants_dot.then(|| graph_to_dot(g));
    Ok(match &cfg.command {
        Command::Analyze { word, .. } => {
            let doc = analyze(cfg, g, word.as_deref())?;
            CommandOutput { exit_code: 0, document: pretty(&doc), dot: graph_dot() }
        }
        Command::Develop { .. } => {
            let x = develop_ball(g, cfg.mode, cfg.radius).map_err(|e| usage(&e))?;
            let mut doc = serde_json::to_value(x.to_document()).expect("complex documents serialize");
            doc["connected"] = json!(connectivity_check(&x));
            doc["dimension"] = json!(x.dimension());
            if cfg.mode == OracleMode::CoxeterShadow {
                doc["note"] = json!(SHADOW_COMPLEX_NOTE);
            }
            CommandOutput { exit_code: 0, document: pretty(&doc), dot: wants_dot.then(|| x.to_dot()) }
        }
        Command::Systole { .. } => {
            let x = develop_ball(g, cfg.mode, cfg.radius).map_err(|e| usage(&e))?;
            let sys = systole_certificate(&x, cfg.max_cycle_len + 1);
            let local = locally_6_large_check(&x);
            let verdict = sys.verdict.combine(local.verdict);
            let mut doc = json!({ "verdict": verdict, "oracle": cfg.mode, "systole": sys, "locally_6_large": local });
            if cfg.mode == OracleMode::CoxeterShadow {
                doc["note"] = json!(SHADOW_COMPLEX_NOTE);
            }
            CommandOutput { exit_code: verdict.exit_code(), document: pretty(&doc), dot: wants_dot.then(|| x.to_dot()) }
        }
        Command::Certify { criterion, .. } => {
            let r = match criterion {
                CriterionArg::Acylindrical => acylindricity_report(g),
                CriterionArg::AngleLink => angle_link_check(g),
                CriterionArg::Cliques => prop_cliques_check(g),
                CriterionArg::NoFull4Cycle => no_full_4cycle_check(g, cfg.mode, cfg.radius).map_err(|e| usage(&e))?,
                CriterionArg::Locally6Large => {
                    let x = develop_ball(g, cfg.mode, cfg.radius).map_err(|e| usage(&e))?;
                    locally_6_large_check(&x)
                }
            };
            report_output(&r, graph_dot())
        }
        Command::Witness { kind, block, other, .. } => {
            let b = block_containing(g, block)?;
            let r = match kind {
                WitnessKind::Malnormal => weak_malnormality_witness(g, b, cfg.mode, cfg.max_len).map_err(|e| usage(&e))?,
                WitnessKind::LemmaProduct => {
                    let o = other.as_deref().ok_or_else(|| RunError::Usage("lemma-product needs --other".into()))?;
                    let c = block_containing(g, o)?;
                    lemma_product_check(g, b, c, cfg.mode, cfg.max_len).map_err(|e| usage(&e))?
                }
            };
            report_output(&r, graph_dot())
        }
        Command::Splittings { .. } => {
            if g.len() > MAX_SPLITTING_GENERATORS {
                return Err(RunError::Usage(format!("splittings supports at most {MAX_SPLITTING_GENERATORS} generators")));
            }
            let list: Vec<Value> = enumerate_splittings(g)
                .into_iter()
                .map(|s| json!({ "gamma1": g.set_names(s.gamma1), "gamma2": g.set_names(s.gamma2), "core": g.set_names(s.core) }))
                .collect();
            let doc = json!({ "count": list.len(), "splittings": list });
            CommandOutput { exit_code: Verdict::NotApplicable.exit_code(), document: pretty(&doc), dot: graph_dot() }
        }
    })
}

/// Parses arguments, reads the graph, runs, and writes outputs. Returns the exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    match run_cli(cli) {
        Ok(out) => {
            if let Some(doc) = out.0 {
                let _ = writeln!(stdout, "{doc}");
            }
            out.1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_cli(cli: Cli) -> Result<(Option<String>, i32), RunError> {
    let path = cli.command.graph_path().clone();
    let text = std::fs::read_to_string(&path)
        .map_err(|e| RunError::Read { path: path.display().to_string(), message: e.to_string() })?;
    let g = parse_graph_document(&text).map_err(|source| RunError::Parse { path: path.display().to_string(), source })?;
    let cfg = RunConfiguration::new(cli, &g)?;
    let out = run_command(&cfg, &g)?;
    let write = |p: &PathBuf, s: &str| {
        std::fs::write(p, s).map_err(|e| RunError::Read { path: p.display().to_string(), message: e.to_string() })
    };
    if let (Some(p), Some(dot)) = (&cfg.dot, &out.dot) {
        write(p, dot)?;
    }
    match &cfg.out {
        Some(p) => {
            write(p, &format!("{}\n", out.document))?;
            Ok((None, out.exit_code))
        }
        None => Ok((Some(out.document), out.exit_code)),
    }
}
