use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "grzh", version, about = "Subspaces of Z_h^n and generalized Grassmann graphs")]
pub struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "GRZH_THREADS")]
    pub threads: Option<usize>,

    #[arg(long, global = true, env = "GRZH_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout. For `enumerate` this is the
    /// family file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(flatten)]
    pub caps: Caps,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Caps {
    /// Largest graph handed to an exact solver.
    #[arg(long, global = true, env = "GRZH_VERTEX_CAP", default_value_t = 2000)]
    pub vertex_cap: u64,

    /// Largest edge list written by `graph-stats --edges`.
    #[arg(long, global = true, env = "GRZH_EDGE_CAP", default_value_t = 1_000_000)]
    pub edge_cap: u64,

    /// Largest set of subspaces materialized.
    #[arg(long, global = true, env = "GRZH_ENUMERATION_CAP", default_value_t = 5_000_000)]
    pub enumeration_cap: u64,

    /// Work limit for brute-force oracles.
    #[arg(long, global = true, env = "GRZH_ORACLE_CAP", default_value_t = 1_000_000)]
    pub oracle_cap: u64,

    /// Search nodes per exact clique search.
    #[arg(long, global = true, env = "GRZH_NODE_BUDGET", default_value_t = 5_000_000)]
    pub node_budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { vertex_cap: 2000, edge_cap: 1_000_000, enumeration_cap: 5_000_000, oracle_cap: 1_000_000, node_budget: 5_000_000 }
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GraphParams {
    #[arg(long)]
    pub h: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Crt,
    Ranks,
    Dimension,
    Duality,
    Cliques,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Crt, Suite::Ranks, Suite::Dimension, Suite::Duality, Suite::Cliques];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Crt => "crt",
            Suite::Ranks => "ranks",
            Suite::Dimension => "dimension",
            Suite::Duality => "duality",
            Suite::Cliques => "cliques",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of k-subspaces of Z_h^n, and of those inside or around a fixed
    /// m-subspace.
    Count {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Write every m-subspace of Z_h^n as a family file.
    Enumerate {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Size, clique number and independence bounds of G_r(m, n, Z_h).
    GraphStats {
        #[command(flatten)]
        params: GraphParams,
        /// Also run the exact solvers (graphs up to --vertex-cap).
        #[arg(long)]
        exact: bool,
        /// Write the edge list (`i j` over enumeration order) to this file.
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Randomized and exhaustive checks of the library invariants.
    Verify {
        /// Moduli to test, comma separated.
        #[arg(long = "h", value_delimiter = ',', default_values_t = vec![2u64, 3, 4, 6, 12])]
        moduli: Vec<u64>,
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<Suite>,
        #[arg(long, env = "GRZH_SEED", default_value_t = 42)]
        seed: u64,
        /// Random cases per property.
        #[arg(long, default_value_t = 200)]
        samples: u64,
        /// Deliberately corrupt the computed side of every comparison.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Intersecting-family bound, and checks of a family against it.
    Ekr {
        #[command(flatten)]
        params: GraphParams,
        /// Family file to check.
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Search for a code of m-subspaces with minimum distance d.
    Code {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        /// Search nodes per exact search (overrides --node-budget).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Ranks, determinant and diagonal form of a matrix file.
    Rank {
        /// Matrix file (`h m n` header, then rows); `-` for stdin.
        #[arg(long)]
        matrix: PathBuf,
    },
}
