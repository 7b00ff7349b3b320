use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exroute::cli::{run, Mode, OracleKind, RunConfig};
use exroute::PruneMode;

/// Shortest walks avoiding forbidden subpaths.
#[derive(Parser)]
#[command(name = "exroute", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shortest avoiding walk from --source to --target.
    Route(Common),
    /// Shortest avoiding walks from --source to every vertex.
    RouteAll(Common),
    /// Same as route-all, in one Dijkstra pass that tolerates an oracle
    /// reporting any contained exception.
    RouteWeak(Common),
    /// Cross-check every router variant against the exhaustive solver.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    graph: PathBuf,
    /// Exceptions file; without it no path is forbidden.
    #[arg(long)]
    exceptions: Option<PathBuf>,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: Option<String>,
    /// Read each graph line as an edge in both directions.
    #[arg(long)]
    undirected: bool,
    /// Print iteration, oracle query and replica counts.
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value_t = OracleArg::Earliest)]
    oracle: OracleArg,
    /// How the inner vertices of a cut exception are retired.
    #[arg(long, value_enum, default_value_t = PruneArg::Freeze)]
    prune: PruneArg,
}

#[derive(Copy, Clone, ValueEnum)]
enum OracleArg {
    Earliest,
    Any,
}

#[derive(Copy, Clone, ValueEnum)]
enum PruneArg {
    Freeze,
    Delete,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, c) = match cli.command {
        Command::Route(c) => (Mode::Single, c),
        Command::RouteAll(c) => (Mode::All, c),
        Command::RouteWeak(c) => (Mode::Weak, c),
        Command::Verify(c) => (Mode::Verify, c),
    };
    let config = RunConfig {
        graph_path: c.graph,
        exceptions_path: c.exceptions,
        source: c.source,
        target: c.target,
        mode,
        oracle: match c.oracle {
            OracleArg::Earliest => OracleKind::Earliest,
            OracleArg::Any => OracleKind::Any,
        },
        stats: c.stats,
        undirected: c.undirected,
        prune: match c.prune {
            PruneArg::Freeze => PruneMode::Freeze,
            PruneArg::Delete => PruneMode::Delete,
        },
    };
    let report = run(&config);
    print!("{}", report.stdout);
    eprint!("{}", report.stderr);
    ExitCode::from(report.code as u8)
}
