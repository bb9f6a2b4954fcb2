//! `edgepoly`: classify edge polytopes, emit Gröbner bases and Ehrhart
//! polynomials, and cross-check everything against the oracles.
//!
//! Every command prints one JSON document. Exit codes: 0 success, 1 a
//! verification failed, 2 bad input, 3 a size guardrail was hit.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use edge_polytope::ehrhart::{ehrhart_interpolate, FamilyParams};
use edge_polytope::graph::{parse_graph_json, parse_graph_text};
use edge_polytope::oracle::{MAX_DILATION, MAX_DIM};
use edge_polytope::verify::MAX_EXHAUSTIVE_VERTICES;
use edge_polytope::{
    classify, count_lattice_points, ehrhart_closed_form, fuzz, groebner_basis, normalized_volume,
    polytope_dim, verify_graph, ClassificationReport, EdgePolytope, FuzzConfig, FuzzMode, Graph,
    OracleError, ToricError, VerifyOptions,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "edgepoly",
    version,
    about = "Edge polytopes of graphs with loops"
)]
struct Cli {
    /// Input format of the graph document.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the edge polytope: simplex, one of the simple families, or
    /// not simple.
    Classify {
        /// Graph file, or `-` for standard input.
        input: String,
    },
    /// Emit the quadratic Gröbner basis of the toric ideal.
    Groebner { input: String },
    /// Lattice-point counts, closed form, interpolant and volume.
    Ehrhart {
        input: String,
        /// Largest dilation to count.
        #[arg(long, default_value_t = 4)]
        m_max: u64,
    },
    /// Compare every combinatorial answer with the oracles.
    Verify {
        input: String,
        /// Largest dilation used by the Ehrhart comparison.
        #[arg(long, default_value_t = 4)]
        m_max: u64,
    },
    /// Verify many graphs: all graphs up to a size, or a seeded sample.
    Fuzz {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Number of random graphs.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        m_max: u64,
    },
}

/// A failed command and the exit code it maps to.
enum Failure {
    Input { kind: &'static str, message: String },
    Guardrail(String),
    Io(String),
}

impl Failure {
    fn input(kind: &'static str, message: impl ToString) -> Failure {
        Failure::Input {
            kind,
            message: message.to_string(),
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Input { .. } | Failure::Io(_) => 2,
            Failure::Guardrail(_) => 3,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            Failure::Input { kind, message } => (*kind, message.as_str()),
            Failure::Guardrail(m) => ("guardrail", m.as_str()),
            Failure::Io(m) => ("io", m.as_str()),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        match e {
            OracleError::TooLarge { .. } => Failure::Guardrail(e.to_string()),
            other => Failure::input("oracle", other),
        }
    }
}

fn read_graph(input: &str, format: Format) -> Result<Graph, Failure> {
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| Failure::Io(format!("reading {input}: {e}")))?
    };
    let parsed = match format {
        Format::Json => parse_graph_json(&text),
        Format::Text => parse_graph_text(&text),
    };
    parsed.map_err(|e| Failure::input("invalid_graph", e))
}

fn guard_graph(g: &Graph) -> Result<(), Failure> {
    if g.d() > MAX_DIM {
        return Err(Failure::Guardrail(format!(
            "graph has {} vertices; at most {MAX_DIM} are supported",
            g.d()
        )));
    }
    Ok(())
}

fn guard_m(m_max: u64) -> Result<(), Failure> {
    if m_max > MAX_DILATION {
        return Err(Failure::Guardrail(format!(
            "--m-max {m_max} exceeds the limit {MAX_DILATION}"
        )));
    }
    Ok(())
}

fn cmd_classify(g: &Graph) -> Result<(Value, u8), Failure> {
    let report = ClassificationReport::new(g);
    Ok((serde_json::to_value(report).expect("serializable"), 0))
}

fn cmd_groebner(g: &Graph) -> Result<(Value, u8), Failure> {
    match groebner_basis(g) {
        Ok(gb) => Ok((serde_json::to_value(gb).expect("serializable"), 0)),
        Err(ToricError::ZeroIdeal) => Ok((
            json!({ "ideal": "zero", "message": "I_G = (0): the toric ideal has no nonzero element", "basis": [] }),
            0,
        )),
        Err(ToricError::NotSimple) => Err(Failure::input(
            "unsupported",
            "NotSimple: the edge polytope is not simple, no quadratic Gröbner basis is available",
        )),
        Err(e) => Err(Failure::input("toric", e)),
    }
}

fn cmd_ehrhart(g: &Graph, m_max: u64) -> Result<(Value, u8), Failure> {
    guard_graph(g)?;
    guard_m(m_max)?;
    let c = classify(g);
    let dim = polytope_dim(g);
    let points = EdgePolytope::new(g).points;
    let counts = (0..=m_max)
        .map(|m| Ok((m, count_lattice_points(&points, m)?)))
        .collect::<Result<Vec<_>, OracleError>>()?;
    let interpolant = ehrhart_interpolate(&counts, dim).ok();
    let closed = ehrhart_closed_form(&c).ok();
    let agreement = closed.as_ref().map(|p| {
        counts
            .iter()
            .all(|&(m, n)| edge_polytope::ehrhart::eval_u64(p, m) == Some(n))
            && interpolant.as_ref().map_or(true, |i| i == p)
    });
    let out = json!({
        "classification": c.tag(),
        "dim": dim,
        "family": FamilyParams::from_classification(&c).ok(),
        "closed_form": closed,
        "volume": normalized_volume(&c).ok().map(|v| v.to_string()),
        "counts": counts.iter().map(|&(_, n)| n).collect::<Vec<_>>(),
        "interpolant": interpolant,
        "volume_from_interpolant": interpolant.as_ref().map(|p| p.normalized_leading().to_string()),
        "agreement": agreement,
    });
    let code = if agreement == Some(false) { 1 } else { 0 };
    Ok((out, code))
}

fn cmd_verify(g: &Graph, m_max: u64) -> Result<(Value, u8), Failure> {
    guard_graph(g)?;
    guard_m(m_max)?;
    let opts = VerifyOptions {
        ehrhart_m_max: m_max,
        ..VerifyOptions::default()
    };
    let report = verify_graph(g, &opts)?;
    let code = if report.pass { 0 } else { 1 };
    Ok((serde_json::to_value(report).expect("serializable"), code))
}

fn cmd_fuzz(
    max_vertices: usize,
    mode: Mode,
    count: usize,
    seed: u64,
    m_max: u64,
) -> Result<(Value, u8), Failure> {
    guard_m(m_max)?;
    let mode = match mode {
        Mode::Exhaustive => {
            if max_vertices > MAX_EXHAUSTIVE_VERTICES {
                return Err(Failure::Guardrail(format!(
                    "exhaustive mode supports at most {MAX_EXHAUSTIVE_VERTICES} vertices"
                )));
            }
            FuzzMode::Exhaustive
        }
        Mode::Random => {
            if max_vertices > MAX_DIM {
                return Err(Failure::Guardrail(format!(
                    "random mode supports at most {MAX_DIM} vertices"
                )));
            }
            FuzzMode::Random
        }
    };
    if max_vertices == 0 {
        return Err(Failure::input(
            "invalid_argument",
            "--max-vertices must be at least 1",
        ));
    }
    let cfg = FuzzConfig {
        max_vertices,
        mode,
        count,
        seed,
        verify: VerifyOptions {
            ehrhart_m_max: m_max,
            ..VerifyOptions::default()
        },
    };
    let summary = fuzz(&cfg).map_err(|e| Failure::Guardrail(e.to_string()))?;
    let code = if summary.failed == 0 { 0 } else { 1 };
    Ok((serde_json::to_value(summary).expect("serializable"), code))
}

fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    match &cli.command {
        Command::Classify { input } => cmd_classify(&read_graph(input, cli.format)?),
        Command::Groebner { input } => cmd_groebner(&read_graph(input, cli.format)?),
        Command::Ehrhart { input, m_max } => cmd_ehrhart(&read_graph(input, cli.format)?, *m_max),
        Command::Verify { input, m_max } => cmd_verify(&read_graph(input, cli.format)?, *m_max),
        Command::Fuzz {
            max_vertices,
            mode,
            count,
            seed,
            m_max,
        } => cmd_fuzz(*max_vertices, *mode, *count, *seed, *m_max),
    }
}

fn emit(doc: &Value, output: Option<&PathBuf>) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("serializable");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (doc, code) = match run(&cli) {
        Ok(ok) => ok,
        Err(f) => {
            eprintln!(
                "edgepoly: {}",
                f.to_json()["error"]["message"].as_str().unwrap_or("error")
            );
            (f.to_json(), f.code())
        }
    };
    if let Err(e) = emit(&doc, cli.output.as_ref()) {
        eprintln!("edgepoly: writing output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
