use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

/// Exact analysis of extremal non-signaling boxes.
#[derive(Parser, Debug)]
#[command(name = "ensbox", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    guards: Guards,
}

/// Resource ceilings. Exceeding one exits with status 3.
#[derive(Args, Debug, Clone)]
pub struct Guards {
    /// Intermediate rays of any double-description run.
    #[arg(long, global = true, default_value_t = ens_core::polytope::Limits::default().max_rays)]
    pub max_rays: usize,
    /// Raw communication strategies per alphabet size.
    #[arg(long, global = true, default_value_t = ens_core::comm::DEFAULT_MAX_STRATEGIES)]
    pub max_strategies: u128,
    /// Vertices of an exclusivity graph.
    #[arg(long, global = true, default_value_t = ens_core::lo::DEFAULT_MAX_GRAPH_VERTICES)]
    pub max_graph_vertices: usize,
    /// Branch-and-bound nodes of a clique search.
    #[arg(long, global = true, default_value_t = ens_core::lo::DEFAULT_MAX_CLIQUE_NODES)]
    pub max_clique_nodes: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check positivity, normalization and no-signaling. Exit 1 if violated.
    Validate { path: PathBuf },
    /// Decide whether a behavior is a vertex. Exit 1 if it is not.
    Extremal {
        path: PathBuf,
        /// Where to write the perturbation direction of a non-vertex.
        #[arg(long)]
        perturbation_out: Option<PathBuf>,
    },
    /// Enumerate the vertices of a scenario's polytope up to relabeling.
    Enumerate {
        /// Scenario as `X,Y,A,B`.
        #[arg(long)]
        scenario: String,
        /// Enumeration strategy.
        #[arg(long, default_value = ens_core::polytope::DEFAULT_ENUMERATOR)]
        strategy: String,
        /// Known vertices (behavior file or generated box list).
        #[arg(long)]
        seeds: Option<PathBuf>,
        /// Where to write the JSON database.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also store every vertex, not only class representatives.
        #[arg(long)]
        all_vertices: bool,
    },
    /// Search the exclusivity graph of independent copies for a clique of
    /// weight above one. Exit 1 if there is none.
    Lo2 {
        path: PathBuf,
        /// Number of copies.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Check this clique (one event per line) instead of searching.
        #[arg(long)]
        events: Option<PathBuf>,
    },
    /// Smallest message alphabet that simulates a behavior. Exit 1 if it
    /// exceeds the cap.
    Commcheck {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        d_max: usize,
        /// Where to write the separating functional of the largest failing alphabet.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Write a behavior as a convex combination of vertices.
    Decompose {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce candidate boxes from a named generator.
    Generate {
        /// Generator name: eq1, nsdd or fixtures.
        generator: String,
        #[arg(long)]
        scenario: Option<String>,
        /// Keep only grids whose shifts are all coprime to the output count.
        #[arg(long)]
        coprime_only: bool,
        /// Single fixture name.
        #[arg(long)]
        name: Option<String>,
        /// Write one text file per box into this directory instead of JSON.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guards = cli.guards;
    let result = match cli.command {
        Command::Validate { path } => commands::validate(&path),
        Command::Extremal {
            path,
            perturbation_out,
        } => commands::extremal(&path, perturbation_out.as_deref()),
        Command::Enumerate {
            scenario,
            strategy,
            seeds,
            out,
            all_vertices,
        } => commands::enumerate(
            &scenario,
            &strategy,
            seeds.as_deref(),
            out.as_deref(),
            all_vertices,
            &guards,
        ),
        Command::Lo2 { path, k, events } => commands::lo2(&path, k, events.as_deref(), &guards),
        Command::Commcheck {
            path,
            d_max,
            witness_out,
            json,
        } => commands::commcheck(&path, d_max, witness_out.as_deref(), json, &guards),
        Command::Decompose { path, out } => commands::decompose(&path, out.as_deref()),
        Command::Generate {
            generator,
            scenario,
            coprime_only,
            name,
            out_dir,
        } => commands::generate(
            &generator,
            scenario.as_deref(),
            coprime_only,
            name,
            out_dir.as_deref(),
        ),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(report::exit_code(&err))
        }
    }
}
