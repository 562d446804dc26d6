use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Toric ideals of matroids: generators, Gröbner bases and lifting constructions.
///
/// A MATROID argument is a matroid file `{"d": .., "bases": [..]}`, a graph
/// file `{"edges": [[u, v], ..]}`, or a catalog spec (MK4, W3, P6, Q6, u:r,n).
#[derive(Debug, Parser)]
#[command(name = "mtoric", version)]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel Gröbner checks.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Matroid files: validation, duals, minors, connectivity.
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// Generators and Gröbner bases of toric ideals.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Per-instance checks of White's conjectures.
    #[command(subcommand)]
    White(WhiteCmd),
    /// Series/parallel extensions and connections, 2-sums.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Minor tests against the excluded minors M(K4), W3, P6, Q6.
    #[command(subcommand)]
    Minor(MinorCmd),
    /// Print the canonical matroid file for a catalog spec or graph file.
    Catalog { spec: String },
}

#[derive(Debug, Subcommand)]
pub enum MatroidCmd {
    Validate { matroid: String },
    Info { matroid: String },
    Dual { matroid: String },
    Delete {
        matroid: String,
        #[arg(long)]
        at: usize,
    },
    Contract {
        matroid: String,
        #[arg(long)]
        at: usize,
    },
    DirectSum { first: String, second: String },
    /// Looks for a k-separation with k < n.
    Connectivity {
        matroid: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exchange,
    Oracle,
}

#[derive(Debug, Subcommand)]
pub enum IdealCmd {
    Gens {
        matroid: String,
        #[arg(long, value_enum, default_value_t = Method::Exchange)]
        method: Method,
        /// degrevlex, lex or weight:<file>
        #[arg(long)]
        order: Option<String>,
    },
    Gb {
        matroid: String,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        #[arg(long)]
        order: Option<String>,
    },
    /// Compare two binomial set files; exits 1 when the ideals differ.
    Equal { first: String, second: String },
}

#[derive(Debug, Subcommand)]
pub enum WhiteCmd {
    CheckGen { matroid: String },
    /// Searches the default order list; exits 1 if none works (inconclusive).
    CheckGb { matroid: String },
}

#[derive(Debug, Args)]
pub struct ConstructOpts {
    /// Source of the factors' generators.
    #[arg(long, value_enum, default_value_t = Method::Oracle)]
    pub method: Method,
    /// Order on each factor's canonical bases: degrevlex, lex or weight:<file>.
    #[arg(long)]
    pub order: Option<String>,
    /// Compare against the elimination oracle (default).
    #[arg(long, overrides_with = "no_verify")]
    pub verify: bool,
    #[arg(long, overrides_with = "verify")]
    pub no_verify: bool,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    SeriesExt {
        matroid: String,
        #[arg(long)]
        at: usize,
        #[command(flatten)]
        opts: ConstructOpts,
    },
    ParallelExt {
        matroid: String,
        #[arg(long)]
        at: usize,
        #[command(flatten)]
        opts: ConstructOpts,
    },
    /// `A --at c1 B --at c2`
    SeriesConn(Pair),
    ParallelConn(Pair),
    TwoSum(Pair),
    /// Steps like `s1,p3,s2` applied in order.
    SpSequence {
        matroid: String,
        #[arg(long)]
        steps: String,
        #[command(flatten)]
        opts: ConstructOpts,
    },
}

#[derive(Debug, Args)]
pub struct Pair {
    pub first: String,
    pub second: String,
    /// Basepoints, in the order of the two matroids.
    #[arg(long, num_args = 1, required = true)]
    pub at: Vec<usize>,
    #[command(flatten)]
    pub opts: ConstructOpts,
}

#[derive(Debug, Subcommand)]
pub enum MinorCmd {
    Has { matroid: String, target: String },
    ExcludedFree { matroid: String },
}
