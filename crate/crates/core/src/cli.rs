//! The `goi` command line.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on usage and input
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::graph::{
    parse_graph, reduce, reduce_truncated, simplify, to_dot, write_graph, WeightedGraph,
};
use crate::logic::{
    check_proof, eliminate_cuts, interpret, parse_proof, switching_tests, write_proof,
};
use crate::matrix::reduce_exact;
use crate::measure::{measure_exact, measure_truncated};
use crate::project::{cut, interaction, orthogonal, parse_project, tensor, write_project, Project};
use crate::truth::is_successful;
use crate::verify::{run_suite, Suite, VerifyOptions};

#[derive(Parser, Debug)]
#[command(
    name = "goi",
    version,
    about = "Graphs, projects and proofs under execution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on weighted graph files.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Operations on project files.
    #[command(subcommand)]
    Project(ProjectCommand),
    /// Operations on located proof files.
    #[command(subcommand)]
    Proof(ProofCommand),
    /// Seeded randomized verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    /// Log-determinant and feedback equation.
    Exact,
    /// Enumeration of circuits or paths.
    Enum,
}

#[derive(Args, Debug)]
struct RouteArgs {
    #[arg(long, value_enum, default_value = "exact")]
    route: RouteArg,
    /// Length bound for enumeration. Without it, `reduce` enumerates all
    /// paths and `measure` stops at length 8.
    #[arg(long)]
    max_len: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// Merge parallel edges by summing their weights.
    Simplify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The reduction of two graphs.
    Reduce {
        g: PathBuf,
        h: PathBuf,
        #[command(flatten)]
        route: RouteArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The measurement of the circuits of two graphs.
    Measure {
        g: PathBuf,
        h: PathBuf,
        #[command(flatten)]
        route: RouteArgs,
    },
    /// DOT rendering of a graph.
    Dot { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ProjectCommand {
    Tensor {
        a: PathBuf,
        b: PathBuf,
    },
    Cut {
        a: PathBuf,
        b: PathBuf,
    },
    /// Interaction and orthogonality; fails when not orthogonal.
    Ortho {
        a: PathBuf,
        b: PathBuf,
    },
    /// Fails when the project is not successful.
    Success {
        a: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ProofCommand {
    /// Check the rules and print the conclusion.
    Check { file: PathBuf },
    /// The project interpreting the proof.
    Interpret { file: PathBuf },
    /// The cut-free normal form.
    Normalize { file: PathBuf },
    /// Interaction with every switching test; fails unless all orthogonal.
    Tests { file: PathBuf },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A suite name, `matrix` for the linear-algebra suites, or `all`.
    suite: String,
    /// Defaults to the suite's own trial count.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, env = "GOI_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    max_vertices: usize,
}

enum Outcome {
    Pass,
    CheckFailed,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Attaches the file name to parse errors.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T, String> {
    let text = read(path).map_err(|e| e.to_string())?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn graph_output(g: &WeightedGraph, format: Format) -> String {
    match format {
        Format::Text => write_graph(g),
        Format::Dot => to_dot(g),
    }
}

fn suites(name: &str) -> Option<Vec<Suite>> {
    match name {
        "all" => Some(Suite::ALL.to_vec()),
        "matrix" => Some(vec![
            Suite::Routes,
            Suite::Feedback,
            Suite::MatrixAdjunction,
        ]),
        _ => Suite::from_name(name).map(|s| vec![s]),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<Outcome, String> {
    let io = |e: std::io::Error| e.to_string();
    let lib = |e: Error| e.to_string();
    match command {
        Command::Graph(g) => {
            match g {
                GraphCommand::Simplify { file, format } => {
                    let g = load(&file, parse_graph)?;
                    let s = simplify(&g).to_multigraph().map_err(lib)?;
                    write!(out, "{}", graph_output(&s, format)).map_err(io)?;
                }
                GraphCommand::Reduce {
                    g,
                    h,
                    route,
                    format,
                } => {
                    let (g, h) = (load(&g, parse_graph)?, load(&h, parse_graph)?);
                    let r = match (route.route, route.max_len) {
                    (RouteArg::Exact, _) => reduce_exact(&g, &h).and_then(|s| s.to_multigraph()),
                    (RouteArg::Enum, None) => reduce(&g, &h),
                    (RouteArg::Enum, Some(len)) => {
                        let r = reduce_truncated(&g, &h, len);
                        if r.truncated {
                            eprintln!("warning: longer paths exist; output is truncated at length {len}");
                        }
                        Ok(r.graph)
                    }
                }
                .map_err(lib)?;
                    write!(out, "{}", graph_output(&r, format)).map_err(io)?;
                }
                GraphCommand::Measure { g, h, route } => {
                    let (g, h) = (load(&g, parse_graph)?, load(&h, parse_graph)?);
                    let m = match route.route {
                        RouteArg::Exact => measure_exact(&g, &h).map_err(lib)?,
                        RouteArg::Enum => measure_truncated(&g, &h, route.max_len.unwrap_or(8)),
                    };
                    writeln!(out, "{m}").map_err(io)?;
                }
                GraphCommand::Dot { file } => {
                    let g = load(&file, parse_graph)?;
                    write!(out, "{}", to_dot(&g)).map_err(io)?;
                }
            }
        }
        Command::Project(p) => match p {
            ProjectCommand::Tensor { a, b } => {
                let (a, b) = (load(&a, parse_project)?, load(&b, parse_project)?);
                write!(out, "{}", write_project(&tensor(&a, &b).map_err(lib)?)).map_err(io)?;
            }
            ProjectCommand::Cut { a, b } => {
                let (a, b) = (load(&a, parse_project)?, load(&b, parse_project)?);
                write!(out, "{}", write_project(&cut(&a, &b).map_err(lib)?)).map_err(io)?;
            }
            ProjectCommand::Ortho { a, b } => {
                let (a, b) = (load(&a, parse_project)?, load(&b, parse_project)?);
                let value = interaction(&a, &b).map_err(lib)?;
                let ortho = orthogonal(&a, &b).map_err(lib)?;
                writeln!(
                    out,
                    "interaction={} orthogonal={ortho}",
                    crate::graph::fmt_decimal(value)
                )
                .map_err(io)?;
                if !ortho {
                    return Ok(Outcome::CheckFailed);
                }
            }
            ProjectCommand::Success { a } => {
                let a: Project = load(&a, parse_project)?;
                let verdict = is_successful(&a);
                if verdict.successful() {
                    writeln!(out, "successful").map_err(io)?;
                } else {
                    let reasons: Vec<String> =
                        verdict.reasons.iter().map(|r| r.to_string()).collect();
                    writeln!(out, "not successful: {}", reasons.join("; ")).map_err(io)?;
                    return Ok(Outcome::CheckFailed);
                }
            }
        },
        Command::Proof(p) => {
            let file = match &p {
                ProofCommand::Check { file }
                | ProofCommand::Interpret { file }
                | ProofCommand::Normalize { file }
                | ProofCommand::Tests { file } => file.clone(),
            };
            let parsed = load(&file, parse_proof)?;
            let (proof, basis) = (parsed.proof, parsed.basis);
            let checked =
                check_proof(&proof, &basis).map_err(|e| format!("{}: {e}", file.display()));
            match p {
                ProofCommand::Check { .. } => match checked {
                    Ok(s) => writeln!(out, "{s}").map_err(io)?,
                    Err(e) => {
                        writeln!(out, "invalid: {e}").map_err(io)?;
                        return Ok(Outcome::CheckFailed);
                    }
                },
                ProofCommand::Interpret { .. } => {
                    checked?;
                    let f = interpret(&proof, &basis).map_err(lib)?;
                    write!(out, "{}", write_project(&f)).map_err(io)?;
                }
                ProofCommand::Normalize { .. } => {
                    checked?;
                    let normal = eliminate_cuts(&proof, &basis).map_err(lib)?;
                    write!(out, "{}", write_proof(&normal.proof, &basis)).map_err(io)?;
                }
                ProofCommand::Tests { .. } => {
                    let s = checked?;
                    let f = interpret(&proof, &basis).map_err(lib)?;
                    let mut all = true;
                    for t in switching_tests(&s, &basis).map_err(lib)? {
                        let bits: String = t
                            .switches
                            .iter()
                            .map(|&r| if r { 'R' } else { 'L' })
                            .collect();
                        let value = interaction(&f, &t.project).map_err(lib)?;
                        let ortho = orthogonal(&f, &t.project).map_err(lib)?;
                        all &= ortho;
                        writeln!(
                            out,
                            "switching [{bits}] interaction={} orthogonal={ortho}",
                            crate::graph::fmt_decimal(value)
                        )
                        .map_err(io)?;
                    }
                    if !all {
                        return Ok(Outcome::CheckFailed);
                    }
                }
            }
        }
        Command::Verify(v) => {
            let selected = suites(&v.suite).ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!(
                    "unknown suite `{}`; expected one of {}, matrix, all",
                    v.suite,
                    names.join(", ")
                )
            })?;
            let mut all = true;
            for suite in selected {
                let options = VerifyOptions {
                    trials: v.trials.unwrap_or(suite.default_trials()),
                    seed: v.seed,
                    max_vertices: v.max_vertices,
                };
                let report = run_suite(suite, &options);
                all &= report.passed();
                writeln!(out, "{report}").map_err(io)?;
            }
            if !all {
                return Ok(Outcome::CheckFailed);
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to stderr. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command, out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::CheckFailed) => 1,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run(std::env::args_os(), &mut lock)
}
