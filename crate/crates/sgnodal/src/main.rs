//! Command-line frontend: analyze a matrix, run randomized property
//! suites, or construct matrices with prescribed first-eigenfunction zero
//! patterns.
//!
//! Exit codes: 0 success, 1 suite failures found, 2 usage/input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use sgnodal::analysis::{analyze, render_text, to_json, AnalysisOptions};
use sgnodal::harness::{run_suite, Family, GeneratorSpec, Suite};
use sgnodal::nodal::strong_domains;
use sgnodal::spectral::{eigendecompose, zero_mask, Tolerances};
use sgnodal::theorems::{construct_nowhere_zero_first, construct_zero_at_vertex};
use sgnodal::{SignedGraph, SymMatrix};

#[derive(Parser)]
#[command(
    name = "sgnodal",
    version,
    about = "Strong and weak nodal domains of eigenfunctions on signed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a symmetric matrix: spectrum, nodal domains, checks
    Analyze {
        /// Matrix file in the text format (dense or coordinate)
        matrix: Option<PathBuf>,
        /// Analyze a signed-graph file instead, with unit edge weights
        #[arg(long, conflicts_with = "matrix")]
        graph: Option<PathBuf>,
        /// Restrict to one eigenpair (1-based position)
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Relative threshold for eigenfunction zeros
        #[arg(long)]
        zero_tol: Option<f64>,
        /// Relative threshold for eigenvalue equality
        #[arg(long)]
        cluster_tol: Option<f64>,
        #[arg(long)]
        residual_tol: Option<f64>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a randomized property suite; exit 0 only with zero failures
    Verify {
        #[arg(long)]
        suite: String,
        /// Instance family (defaults to one fitting the suite)
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Edge probability where the family uses one
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Base seed; falls back to SGNODAL_SEED, then 42
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        zero_tol: Option<f64>,
        #[arg(long)]
        cluster_tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a matrix compatible with a graph, with a chosen zero pattern
    /// of its first eigenfunction
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// First eigenvalue simple, first eigenfunction nowhere zero
    NowhereZero {
        #[arg(long)]
        graph: PathBuf,
        /// Write the matrix here (text format); default stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First eigenfunction zero exactly at --vertex
    ZeroAt {
        #[arg(long)]
        graph: PathBuf,
        /// 0-based vertex index
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn tolerances(zero: Option<f64>, cluster: Option<f64>, residual: Option<f64>) -> Tolerances {
    let mut tol = Tolerances::default();
    if let Some(z) = zero {
        tol.zero_tol = z;
    }
    if let Some(c) = cluster {
        tol.cluster_tol = c;
    }
    if let Some(r) = residual {
        tol.residual_tol = r;
    }
    tol
}

fn read_to_string(path: &Path) -> sgnodal::Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn emit(content: &str, out: Option<&PathBuf>) -> sgnodal::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn seed_or_env(seed: Option<u64>) -> u64 {
    seed.or_else(|| {
        std::env::var("SGNODAL_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(42)
}

fn run() -> sgnodal::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            matrix,
            graph,
            k,
            format,
            zero_tol,
            cluster_tol,
            residual_tol,
            out,
        } => {
            let m = match (matrix, graph) {
                (Some(path), None) => SymMatrix::parse(&read_to_string(&path)?)?,
                (None, Some(path)) => {
                    let g = SignedGraph::parse(&read_to_string(&path)?)?;
                    let mut m = SymMatrix::zeros(g.n());
                    for e in g.edges() {
                        m.set(e.u, e.v, -e.sign.value());
                    }
                    m
                }
                _ => {
                    return Err(sgnodal::Error::InvalidSpec(
                        "provide a matrix file or --graph <file>".into(),
                    ))
                }
            };
            if let Some(k) = k {
                if k == 0 || k > m.n() {
                    return Err(sgnodal::Error::InvalidSpec(format!(
                        "--k {k} outside 1..{}",
                        m.n()
                    )));
                }
            }
            let opts = AnalysisOptions {
                tolerances: tolerances(zero_tol, cluster_tol, residual_tol),
                k_filter: k,
                matrix_zero_tol: 0.0,
            };
            let report = analyze(&m, &opts)?;
            let rendered = match format {
                OutputFormat::Text => render_text(&report),
                OutputFormat::Json => to_json(&report),
            };
            emit(&rendered, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            family,
            n,
            p,
            trials,
            seed,
            zero_tol,
            cluster_tol,
            format,
            out,
        } => {
            let suite = Suite::from_str(&suite)?;
            let family = match family {
                Some(name) => Family::from_str(&name)?,
                None => suite.default_family(),
            };
            let spec = GeneratorSpec::new(family, n, p, seed_or_env(seed));
            let tol = tolerances(zero_tol, cluster_tol, None);
            let result = run_suite(suite, &spec, trials, &tol)?;
            let rendered = match format {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&result).expect("serializes");
                    s.push('\n');
                    s
                }
                OutputFormat::Text => {
                    let mut s = format!(
                        "suite {} on {} (n = {}, p = {}, seed = {}): {} trials, {} checks, {} not applicable, {} failures in {} ms\n",
                        result.suite,
                        result.family,
                        n,
                        p,
                        spec.seed,
                        result.trials,
                        result.checks_run,
                        result.not_applicable,
                        result.failures.len(),
                        result.wall_ms
                    );
                    for failure in result.failures.iter().take(5) {
                        s.push_str(&format!(
                            "  trial {}: {} -- {}\n",
                            failure.trial,
                            failure.report.theorem,
                            failure
                                .report
                                .counterexample
                                .as_ref()
                                .map(|c| c.detail.as_str())
                                .unwrap_or("")
                        ));
                    }
                    s
                }
            };
            emit(&rendered, out.as_ref())?;
            if result.ok() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Construct { kind } => {
            let tol = Tolerances::default();
            match kind {
                ConstructKind::NowhereZero { graph, out } => {
                    let g = SignedGraph::parse(&read_to_string(&graph)?)?;
                    let (m, es) = construct_nowhere_zero_first(&g, &tol)?;
                    emit(&m.to_text(), out.as_ref())?;
                    let f1 = es.vector(0);
                    println!(
                        "# compatible = {}, lambda1 = {} (simple = {}), nowhere-zero = {}, strong domains of f1 = {}",
                        g.is_compatible(&m, 0.0)?,
                        es.lambda(0),
                        es.clusters()[0].size == 1,
                        !zero_mask(f1, tol.zero_tol).iter().any(|&b| b),
                        strong_domains(&g, f1, tol.zero_tol)?.count
                    );
                    Ok(ExitCode::SUCCESS)
                }
                ConstructKind::ZeroAt { graph, vertex, out } => {
                    let g = SignedGraph::parse(&read_to_string(&graph)?)?;
                    let outcome = construct_zero_at_vertex(&g, vertex, &tol)?;
                    emit(&outcome.matrix.to_text(), out.as_ref())?;
                    let es = eigendecompose(&outcome.matrix, &tol)?;
                    let mv = outcome.matrix.matvec(&outcome.f1);
                    let residual = mv
                        .iter()
                        .zip(&outcome.f1)
                        .map(|(a, b)| (a - outcome.lambda1 * b).abs())
                        .fold(0.0, f64::max);
                    println!(
                        "# compatible = {}, lambda1 = {} (bottom = {}), f1[{vertex}] = {}, residual = {residual:e}{}",
                        g.is_compatible(&outcome.matrix, 0.0)?,
                        outcome.lambda1,
                        es.lambda(0),
                        outcome.f1[vertex],
                        if outcome.conditioning_warning {
                            ", warning: small eigenfunction entries in the remainder"
                        } else {
                            ""
                        }
                    );
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
