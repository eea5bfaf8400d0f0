mod commands;
mod stream;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mtgraph::GraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {source}")]
    Input { line: usize, source: GraphError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn at_line(line: usize, source: GraphError) -> Self {
        CliError::Input { line, source }
    }

    pub fn exit_code(&self) -> u8 {
        let graph = match self {
            CliError::Usage(_) | CliError::Io(_) => return 1,
            CliError::Input { source, .. } => source,
            CliError::Graph(e) => e,
        };
        match graph {
            GraphError::Capacity(_) => 3,
            GraphError::Graph6(_) | GraphError::Checkpoint(_) => 2,
            _ if matches!(self, CliError::Input { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    G6,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Exhaustive,
    MtParents,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Construct,
    Forbidden,
    Structure,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    /// Order-10 graphs on the butterfly skeleton.
    Butterfly,
    /// One claw-free MT graph of a given core type, built as the complement of its 2-core type;
    /// needs --type and --params.
    Clawfree,
    /// Minimal graphs whose line graph is not MT, other than long cycles.
    LineForbidden,
    /// Minimal graphs outside the split MT graphs.
    SplitForbidden,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Only {
    Mt,
    NonMt,
}

#[derive(Debug, Parser)]
#[command(name = "mtgraph", version, about = "Mock threshold graph toolkit")]
pub struct Cli {
    /// Worker threads; output does not depend on it.
    #[arg(short, long, global = true, env = "MTGRAPH_JOBS", default_value_t = 1,
          value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    /// Output format; graph-producing commands default to g6, the rest to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide membership for each graph6 line on stdin, with certificate or witness.
    Recognize {
        #[arg(short, long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        k: u16,
    },
    /// Class labels, claw-free and bipartite structure for each graph6 line on stdin.
    Classify,
    /// Clique, independence and chromatic numbers of each MT graph on stdin.
    Clique,
    /// Exhaustive census of minimal non-MT graphs.
    Census {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Shards per order; changes checkpoint layout, not output.
        #[arg(long, default_value_t = mtgraph::census::DEFAULT_SHARDS)]
        shards: usize,
        /// Directory for shard files; an interrupted run resumes from it.
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        /// Read candidate graphs from a graph6 file ("-" for stdin) instead of enumerating.
        #[arg(long)]
        ingest: Option<PathBuf>,
        /// Also write the catalog to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        stop_after_shards: Option<usize>,
    },
    /// Emit a named graph family.
    Family {
        #[arg(value_enum)]
        name: Family,
        /// Core type for the claw-free family (I to IX).
        #[arg(long = "type")]
        core_type: Option<String>,
        /// JSON parameters for the claw-free family, e.g. '{"r":2,"s":1}'.
        #[arg(long)]
        params: Option<String>,
        /// Search bound for the forbidden families.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Line-graph membership for each graph6 root on stdin.
    Linegraph {
        #[arg(long, value_enum, default_value_t = Method::Construct)]
        method: Method,
    },
    /// All graphs up to isomorphism with min-n to max-n vertices.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Keep only members or only non-members of the k-MT class.
        #[arg(long, value_enum)]
        only: Option<Only>,
        #[arg(short, long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        k: u16,
    },
    /// Structural checks on a catalog of graph6 lines on stdin.
    Verify,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = commands::run(cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mtgraph: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
