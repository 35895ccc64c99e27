use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qrg", version, about = "Quasirandomness experiments on finite groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Master seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format (each command has its own default)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Relative tolerance for numerical comparisons
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Number of random trials
    #[arg(long, global = true, default_value_t = 10)]
    pub trials: usize,
    /// Fallback candidates per solver level
    #[arg(long, global = true, default_value_t = quasirandom::solver::DEFAULT_BACKTRACK_DEPTH)]
    pub backtrack: usize,
    /// Largest group order for spectral computations
    #[arg(long = "cap-spectral", global = true, default_value_t = quasirandom::spectral::DEFAULT_SPECTRAL_CAP)]
    pub cap_spectral: usize,
    /// Write the primary output to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock runtimes in reports (output is then not reproducible)
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Spectral,
    Bounds,
    Solver,
    Productfree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Coset,
    Erdos,
    Rep,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe a group or export its Cayley table
    Group {
        /// Group descriptor, e.g. psl2:7, sym:4, cyclic:2*dihedral:5, table:FILE
        #[arg(long = "type", visible_alias = "group")]
        group: String,
        /// Print a summary (the default)
        #[arg(long)]
        describe: bool,
        /// Print the Cayley-table file instead of a summary
        #[arg(long, conflicts_with = "describe")]
        export: bool,
    },
    /// Singular values of the bipartite Cayley graph of a subset
    Spectrum {
        #[arg(long)]
        group: String,
        /// Comma-separated element indices or a subset JSON file
        #[arg(long, conflicts_with = "density")]
        subset: Option<String>,
        /// Draw a random subset of this density instead
        #[arg(long)]
        density: Option<f64>,
        /// Minimal nontrivial representation degree used for the gap bound
        #[arg(long)]
        k: Option<usize>,
    },
    /// Character table
    Chartab {
        #[arg(long)]
        group: String,
    },
    /// Count triples (a, b, c) in A × B × C with ab = c
    Triples {
        #[arg(long)]
        group: String,
        /// Comma-separated element indices or a subset JSON file
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long = "C")]
        c: String,
    },
    /// Quadruple sum and quasirandomness constant of a function
    Quadruples {
        #[arg(long)]
        group: String,
        /// Function JSON file with `re` and `im` arrays
        #[arg(long, conflicts_with_all = ["subset", "random"])]
        function: Option<PathBuf>,
        /// Use the balanced indicator of this subset
        #[arg(long, conflicts_with = "random")]
        subset: Option<String>,
        /// Use a seeded random balanced function
        #[arg(long)]
        random: bool,
    },
    /// Run a randomized verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "psl2:7")]
        group: String,
        /// Minimal nontrivial representation degree (default: closed form or computed)
        #[arg(long)]
        k: Option<usize>,
        /// Accuracy parameter of the triple lower bound
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
    },
    /// Solve a constraint system file
    Solve {
        /// Constraint-system JSON file
        #[arg(long)]
        system: PathBuf,
        /// Minimal nontrivial representation degree for the density condition
        #[arg(long)]
        k: Option<usize>,
    },
    /// Construct or search for product-free sets
    Productfree {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        group: Option<String>,
        /// Subgroup generators for the coset construction
        #[arg(long)]
        generators: Option<String>,
        /// Integers for the sum-free construction
        #[arg(long, allow_hyphen_values = true)]
        integers: Option<String>,
        /// Clustering radius for the representation construction
        #[arg(long, default_value_t = quasirandom::productfree::DEFAULT_DELTA)]
        delta: f64,
    },
    /// Spectral-gap sweep over subset densities, as CSV rows
    Sweep {
        #[arg(long)]
        group: String,
        /// Comma-separated densities
        #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
        densities: String,
        #[arg(long)]
        k: Option<usize>,
    },
}
