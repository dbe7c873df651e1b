//! Command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::derivation::saito_check;
use crate::genset::{
    bounds_report, minimal_generating_set, subsequence_check, subsequence_check_full, Bounds, GenSetReport, GensetError,
};
use crate::graph::{minimal_separators, parse_graph, Graph, GraphError, GraphFormat, ParseError, VertexSet};
use crate::oracle::{minimal_degree_sequence, verify_generation, OracleError, CUTOFF_ENV};
use crate::poset::{build_poset, descending_chain, generated_closure, heuristic_minimal_poset, is_complete, to_dot};

#[derive(Debug, Parser)]
#[command(name = "sepder", version, about = "Derivation modules of graphic arrangements via separator posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input format; by default `.g6` files are graph6 and the rest edge lists.
    #[arg(long, global = true, value_enum)]
    pub format: Option<GraphFormat>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub output: Output,
    /// Highest degree checked by the oracle; defaults to Δ(G) + 2.
    #[arg(long, global = true, env = CUTOFF_ENV)]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal separators and their components.
    Separators { input: PathBuf },
    /// Vertex connectivity κ(G).
    Connectivity { input: PathBuf },
    /// The separator poset, or the heuristic poset with `--heuristic`.
    Poset {
        input: PathBuf,
        #[arg(long)]
        heuristic: bool,
        /// Include the elements generated from the poset.
        #[arg(long)]
        closure: bool,
        /// Print the descending chain of `T:C`, e.g. `4:2,3`.
        #[arg(long)]
        chain: Option<String>,
        /// Vertex order for `--chain`; ascending by default.
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<usize>>,
    },
    /// A generating set certified minimal up to the cutoff.
    Generators { input: PathBuf },
    /// Degreewise check that the assembled set generates.
    Verify { input: PathBuf },
    /// Minimal derivation degree sequence from the oracle.
    Degrees { input: PathBuf },
    /// Degree bounds and the predicted subsequence.
    Bounds { input: PathBuf },
    /// Saito's criterion on the minimal generating set.
    Saito { input: PathBuf },
    /// One JSON line per graph found in a directory.
    Census { dir: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Genset(#[from] GensetError),
}

impl CliError {
    /// 2 for disconnected input, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        let disconnected = match self {
            CliError::Parse { source: ParseError::Graph(GraphError::Disconnected), .. } => true,
            CliError::Genset(e) => matches!(
                e,
                GensetError::Graph(GraphError::Disconnected)
                    | GensetError::Poset(crate::poset::PosetError::Graph(GraphError::Disconnected))
                    | GensetError::Oracle(OracleError::Graph(GraphError::Disconnected))
            ),
            _ => false,
        };
        if disconnected {
            2
        } else {
            1
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Genset(e.into())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Genset(e.into())
    }
}

impl From<crate::poset::PosetError> for CliError {
    fn from(e: crate::poset::PosetError) -> Self {
        CliError::Genset(e.into())
    }
}

/// Exit status 3.
pub const VERIFICATION_FAILURE: u8 = 3;

fn format_for(path: &Path, explicit: Option<GraphFormat>) -> GraphFormat {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("g6") | Some("graph6") => GraphFormat::Graph6,
        _ => GraphFormat::EdgeList,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Reads a single graph and checks connectivity.
pub fn load_graph(path: &Path, format: Option<GraphFormat>) -> Result<Graph, CliError> {
    let text = read(path)?;
    let g = parse_graph(&text, format_for(path, format))
        .map_err(|source| CliError::Parse { path: path.to_path_buf(), source })?;
    g.require_connected()?;
    Ok(g)
}

/// `(d_1,...,d_n)`
pub fn render_sequence(seq: &[usize]) -> String {
    let parts: Vec<String> = seq.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn parse_set(s: &str) -> Result<VertexSet, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<usize>().map_err(|_| CliError::Argument(format!("bad vertex `{p}`"))))
        .collect()
}

fn cutoff_for(cli: &Cli, g: &Graph) -> usize {
    cli.cutoff.unwrap_or(g.max_degree() + 2)
}

/// Runs the command, writing the report to `out`; returns the exit status.
pub fn run(cli: &Cli, out: &mut String) -> Result<u8, CliError> {
    let json = cli.output == Output::Json;
    match &cli.command {
        Command::Separators { input } => {
            let g = load_graph(input, cli.format)?;
            let seps = minimal_separators(&g)?;
            if json {
                out.push_str(&to_json(&seps));
            } else {
                for s in &seps {
                    let comps: Vec<String> = s.components.iter().map(ToString::to_string).collect();
                    writeln!(out, "{} -> {}", s.t_set, comps.join(" ")).expect("string write");
                }
            }
        }
        Command::Connectivity { input } => {
            let g = load_graph(input, cli.format)?;
            let kappa = g.connectivity()?;
            if json {
                out.push_str(&to_json(&json!({ "kappa": kappa })));
            } else {
                writeln!(out, "{kappa}").expect("string write");
            }
        }
        Command::Poset { input, heuristic, closure, chain, ordering } => {
            let g = load_graph(input, cli.format)?;
            if let Some(arg) = chain {
                let (t, c) =
                    arg.split_once(':').ok_or_else(|| CliError::Argument(format!("expected `T:C`, got `{arg}`")))?;
                let (t, c) = (parse_set(t)?, parse_set(c)?);
                let order = ordering.clone().unwrap_or_else(|| c.to_vec());
                let nodes = descending_chain(&g, t, c, &order)?;
                if json {
                    out.push_str(&to_json(&nodes));
                } else {
                    for n in nodes {
                        writeln!(out, "{n}").expect("string write");
                    }
                }
                return Ok(0);
            }
            let mut q = if *heuristic { heuristic_minimal_poset(&g)? } else { build_poset(&g)? };
            if g.is_complete() {
                eprintln!("warning: complete graph, no minimal separators");
            }
            let report = is_complete(&g, &q)?;
            if *closure {
                q = generated_closure(&g, &q)?;
            }
            match cli.output {
                Output::Dot => out.push_str(&to_dot(&q)),
                Output::Json => {
                    let missing: Vec<String> = report.missing.iter().map(|m| m.label()).collect();
                    out.push_str(&to_json(&json!({ "poset": q, "complete": report.complete, "missing": missing })));
                }
                Output::Text => {
                    for n in q.nodes() {
                        writeln!(out, "{n} {}", serde_json::to_string(&n.origin).expect("enum")).expect("string write");
                    }
                    writeln!(out, "complete: {}", report.complete).expect("string write");
                }
            }
        }
        Command::Generators { input } => {
            let g = load_graph(input, cli.format)?;
            let r = minimal_generating_set(&g, cutoff_for(cli, &g))?;
            if json {
                out.push_str(&to_json(&r));
            } else {
                render_report(&r, out);
            }
        }
        Command::Verify { input } => {
            let g = load_graph(input, cli.format)?;
            let cutoff = cutoff_for(cli, &g);
            let q = heuristic_minimal_poset(&g)?;
            let r = crate::genset::assemble_generators(&g, &q)?;
            let v = verify_generation(&g, &r.generators, cutoff)?;
            if json {
                out.push_str(&to_json(&v));
            } else {
                writeln!(out, "p module span").expect("string write");
                for row in &v.table {
                    writeln!(out, "{} {} {}", row.p, row.module_dim, row.span_dim).expect("string write");
                }
                writeln!(out, "generates: {}", v.generates).expect("string write");
            }
            if !v.generates {
                return Ok(VERIFICATION_FAILURE);
            }
        }
        Command::Degrees { input } => {
            let g = load_graph(input, cli.format)?;
            let seq = minimal_degree_sequence(&g, cutoff_for(cli, &g))?;
            if json {
                out.push_str(&to_json(&seq));
            } else {
                writeln!(out, "{}", render_sequence(&seq)).expect("string write");
            }
        }
        Command::Bounds { input } => {
            let g = load_graph(input, cli.format)?;
            let seq = minimal_degree_sequence(&g, cutoff_for(cli, &g))?;
            let b = bounds_report(&g, *seq.last().expect("theta_0"))?;
            let sub = subsequence_check(&g, &seq)?;
            let full = subsequence_check_full(&g, &seq)?;
            if json {
                out.push_str(&to_json(&json!({
                    "bounds": b,
                    "holds": b.holds(),
                    "subsequence": sub,
                    "subsequence_full": full,
                })));
            } else {
                render_bounds(&b, out);
                render_subsequence(sub, full, out);
            }
            if !(b.holds() && full) {
                return Ok(VERIFICATION_FAILURE);
            }
        }
        Command::Saito { input } => {
            let g = load_graph(input, cli.format)?;
            let r = minimal_generating_set(&g, cutoff_for(cli, &g))?;
            let (basis, scalar) = if r.generators.len() == g.n() {
                let s = saito_check(&g, &r.generators).map_err(GensetError::from)?;
                (s.basis, s.scalar.to_string())
            } else {
                (false, "0".to_string())
            };
            if json {
                out.push_str(&to_json(&json!({ "basis": basis, "c": scalar, "generators": r.generators.len() })));
            } else {
                writeln!(out, "basis: {basis}, c = {scalar}").expect("string write");
            }
        }
        Command::Census { dir } => return census(cli, dir, out),
    }
    Ok(0)
}

fn render_report(r: &GenSetReport, out: &mut String) {
    for d in &r.generators {
        let coeffs: Vec<String> = d.coeffs().iter().map(|c| c.render()).collect();
        writeln!(out, "{}: ({})", d.label, coeffs.join(", ")).expect("string write");
    }
    writeln!(out, "degrees: {}", render_sequence(&r.degree_sequence)).expect("string write");
    render_bounds(&r.bounds, out);
}

fn render_bounds(b: &Bounds, out: &mut String) {
    writeln!(
        out,
        "c-1 = {}, t_max = {}, d = {}, Delta = {}: {}",
        b.c_minus_1,
        b.t_max,
        b.d,
        b.delta,
        if b.holds() { "ok" } else { "violated" }
    )
    .expect("string write");
}

fn render_subsequence(all: bool, full: bool, out: &mut String) {
    let word = |ok: bool| if ok { "ok" } else { "violated" };
    writeln!(out, "subsequence: {}", word(all)).expect("string write");
    writeln!(out, "subsequence (full components): {}", word(full)).expect("string write");
}

#[derive(Debug, Serialize)]
struct CensusRecord {
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kappa: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree_sequence: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<Bounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subsequence: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subsequence_full: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generates: Option<bool>,
}

impl CensusRecord {
    fn failed(source: String, error: String) -> Self {
        CensusRecord {
            source,
            error: Some(error),
            n: None,
            kappa: None,
            degree_sequence: None,
            bounds: None,
            subsequence: None,
            subsequence_full: None,
            generates: None,
        }
    }

    fn violated(&self) -> bool {
        self.error.is_some()
            || self.bounds.is_some_and(|b| !b.holds())
            || self.subsequence_full == Some(false)
            || self.generates == Some(false)
    }
}

fn census_record(source: String, g: &Graph, cutoff: Option<usize>) -> CensusRecord {
    let result = (|| -> Result<CensusRecord, GensetError> {
        g.require_connected()?;
        let cutoff = cutoff.unwrap_or(g.max_degree() + 2);
        let seq = minimal_degree_sequence(g, cutoff)?;
        let bounds = bounds_report(g, *seq.last().expect("theta_0"))?;
        let generates = match minimal_generating_set(g, cutoff) {
            Ok(r) => r.degree_sequence == seq,
            Err(GensetError::NotGenerating { .. }) => false,
            Err(e) => return Err(e),
        };
        Ok(CensusRecord {
            source: source.clone(),
            error: None,
            n: Some(g.n()),
            kappa: Some(g.connectivity()?),
            subsequence: Some(subsequence_check(g, &seq)?),
            subsequence_full: Some(subsequence_check_full(g, &seq)?),
            degree_sequence: Some(seq),
            bounds: Some(bounds),
            generates: Some(generates),
        })
    })();
    result.unwrap_or_else(|e| CensusRecord::failed(source, e.to_string()))
}

fn census(cli: &Cli, dir: &Path, out: &mut String) -> Result<u8, CliError> {
    let io = |source| CliError::Io { path: dir.to_path_buf(), source };
    let mut files: Vec<PathBuf> =
        fs::read_dir(dir).map_err(io)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>().map_err(io)?;
    files.retain(|p| p.is_file());
    files.sort();
    let mut inputs: Vec<(String, Result<Graph, String>)> = Vec::new();
    for path in &files {
        let text = read(path)?;
        let name = path.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        match format_for(path, cli.format) {
            GraphFormat::Graph6 => {
                for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
                    let g = parse_graph(line, GraphFormat::Graph6).map_err(|e| e.to_string());
                    inputs.push((format!("{name}:{}", i + 1), g));
                }
            }
            GraphFormat::EdgeList => {
                inputs.push((name, parse_graph(&text, GraphFormat::EdgeList).map_err(|e| e.to_string())));
            }
        }
    }
    let records: Vec<CensusRecord> = inputs
        .into_par_iter()
        .map(|(source, g)| match g {
            Ok(g) => census_record(source, &g, cli.cutoff),
            Err(e) => CensusRecord::failed(source, e),
        })
        .collect();
    let mut status = 0;
    for r in &records {
        out.push_str(&serde_json::to_string(r).expect("serializable"));
        out.push('\n');
        if r.violated() {
            status = VERIFICATION_FAILURE;
        }
    }
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<u8, CliError>, String) {
        let cli = Cli::try_parse_from(std::iter::once("sepder").chain(args.iter().copied())).unwrap();
        let mut out = String::new();
        (run(&cli, &mut out), out)
    }

    fn data(name: &str) -> String {
        format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn degrees_of_example_graph() {
        let (status, out) = run_args(&["degrees", &data("ex37.edges")]);
        assert_eq!(status.unwrap(), 0);
        assert_eq!(out, "(0,1,1,2)\n");
    }

    #[test]
    fn saito_on_complete_graph() {
        let (status, out) = run_args(&["saito", &data("k4.edges")]);
        assert_eq!(status.unwrap(), 0);
        let c = out.trim().strip_prefix("basis: true, c = ").unwrap();
        assert!(c == "1" || c == "-1", "{out}");
    }

    #[test]
    fn dot_poset_of_antihole() {
        let (status, out) = run_args(&["poset", "--output", "dot", &data("antihole6.edges")]);
        assert_eq!(status.unwrap(), 0);
        assert_eq!(out.matches("style=solid").count(), 12);
    }

    #[test]
    fn chain_subcommand() {
        let (_, out) = run_args(&["poset", &data("ex37.edges"), "--chain", "4:2,3", "--ordering", "3,2"]);
        assert_eq!(out, "[2,4],{3}\n[4],{2,3}\n");
        let (_, out) = run_args(&["poset", &data("ex37.edges"), "--chain", "4:2,3"]);
        assert_eq!(out, "[3,4],{2}\n[4],{2,3}\n");
    }

    #[test]
    fn deterministic_reports() {
        for cmd in ["separators", "generators", "bounds", "verify"] {
            let a = run_args(&[cmd, "--output", "json", &data("ex37.edges")]).1;
            let b = run_args(&[cmd, "--output", "json", &data("ex37.edges")]).1;
            assert_eq!(a, b);
            assert!(!a.is_empty());
        }
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.edges");
        fs::write(&bad, "n 3\n1 x\n").unwrap();
        assert_eq!(run_args(&["degrees", bad.to_str().unwrap()]).0.unwrap_err().exit_code(), 1);
        let split = dir.path().join("split.edges");
        fs::write(&split, "n 4\n1 2\n3 4\n").unwrap();
        assert_eq!(run_args(&["degrees", split.to_str().unwrap()]).0.unwrap_err().exit_code(), 2);
        let missing = dir.path().join("none.edges");
        assert_eq!(run_args(&["degrees", missing.to_str().unwrap()]).0.unwrap_err().exit_code(), 1);
    }

    #[test]
    fn census_lines() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.edges"), "n 4\n1 4\n2 4\n3 4\n2 3\n").unwrap();
        fs::write(dir.path().join("b.g6"), "Cr\nBw\n").unwrap();
        let (status, out) = run_args(&["census", dir.path().to_str().unwrap()]);
        assert_eq!(status.unwrap(), 0, "{out}");
        let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["source"], "a.edges");
        assert_eq!(lines[0]["degree_sequence"], json!([0, 1, 1, 2]));
        assert_eq!(lines[1]["source"], "b.g6:1");
        assert!(lines.iter().all(|l| l["generates"] == true));
    }
}
