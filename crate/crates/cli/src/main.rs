mod commands;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graphstate::{OrbitConfig, PersistencyConfig};

/// Entanglement bounds, Pauli measurement rules and local-complementation
/// classification for graph states.
///
/// Graphs are read as graph6 strings: inline, one per line from `--input`
/// files, or from standard input (`-` or no graph argument).
#[derive(Parser, Debug)]
#[command(name = "graphstate", version)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower/upper Schmidt-measure bounds, vertex cover and rank indices.
    Bounds {
        graphs: Vec<String>,
        /// File with one graph6 string per line.
        #[arg(long)]
        input: Vec<PathBuf>,
        /// Largest graph for the exact persistency search.
        #[arg(long, default_value_t = 7)]
        max_vertices: usize,
        /// Longest measurement sequence tried by the persistency search.
        #[arg(long)]
        depth_limit: Option<usize>,
    },
    /// Classify all connected graphs with 2..=N_MAX vertices.
    Classify {
        n_max: usize,
        /// Largest graph for the exact persistency search.
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long)]
        depth_limit: Option<usize>,
    },
    /// Apply Pauli measurements such as `0:z:+ 3:x:-` and print the transcript.
    Measure {
        graph: String,
        #[arg(required = true)]
        steps: Vec<String>,
    },
    /// List the labelled local-complementation orbit of a graph.
    Orbit {
        graph: Option<String>,
        #[arg(long)]
        input: Vec<PathBuf>,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[arg(long, default_value_t = 1_000_000)]
        orbit_limit: usize,
    },
    /// Cross-check the graph rules against dense state vectors on random graphs.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest random graph.
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Library(#[from] graphstate::Error),
    #[error("{0}")]
    Io(String),
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(e) if e.is_cap_exceeded() => 2,
            CliError::VerifyFailed => 3,
            _ => 1,
        }
    }
}

fn positive(name: &str, value: usize) -> Result<(), CliError> {
    if value == 0 {
        return Err(CliError::Usage(format!("--{name} must be positive")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        positive("jobs", jobs)?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let mut verify_failed = false;
    let text = match cli.command {
        Command::Bounds {
            graphs,
            input,
            max_vertices,
            depth_limit,
        } => {
            positive("max-vertices", max_vertices)?;
            let graphs = input::read_graphs(&graphs, &input)?;
            let cfg = PersistencyConfig {
                max_vertices,
                depth_limit,
            };
            commands::bounds(&graphs, &cfg, cli.format.unwrap_or(Format::Csv))?
        }
        Command::Classify {
            n_max,
            max_vertices,
            depth_limit,
        } => {
            positive("max-vertices", max_vertices)?;
            let cfg = PersistencyConfig {
                max_vertices,
                depth_limit,
            };
            commands::classify_table(n_max, &cfg, cli.format.unwrap_or(Format::Csv))?
        }
        Command::Measure { graph, steps } => {
            let g = input::read_one_graph(Some(&graph), &[])?;
            let steps = steps.iter().map(|s| input::parse_step(s)).collect::<Result<Vec<_>, _>>()?;
            commands::measure(&g, &steps, cli.format.unwrap_or(Format::Json))?
        }
        Command::Orbit {
            graph,
            input,
            max_vertices,
            orbit_limit,
        } => {
            positive("max-vertices", max_vertices)?;
            positive("orbit-limit", orbit_limit)?;
            let g = input::read_one_graph(graph.as_deref(), &input)?;
            let cfg = OrbitConfig {
                max_vertices,
                orbit_limit,
            };
            commands::orbit(&g, &cfg, cli.format.unwrap_or(Format::Csv))?
        }
        Command::Verify {
            seed,
            max_vertices,
            trials,
        } => {
            positive("trials", trials)?;
            let (text, ok) = commands::verify(seed, max_vertices, trials, cli.format.unwrap_or(Format::Csv))?;
            verify_failed = !ok;
            text
        }
    };
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if verify_failed {
        return Err(CliError::VerifyFailed);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
