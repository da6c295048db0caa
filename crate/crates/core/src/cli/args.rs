use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "bentkit",
    version,
    about = "Bent functions, their translation and addition designs, and EA classification"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "BENTKIT_THREADS", default_value_t = 0)]
    pub threads: usize,

    /// Node budget for each canonical-labeling search.
    #[arg(long, global = true, default_value_t = bentkit::invariants::canon::DEFAULT_NODE_BUDGET)]
    pub budget: u64,

    /// Read ANFs in digit shorthand ("12 + 34" for x1*x2 + x3*x4) and print them that way.
    #[arg(long, global = true)]
    pub paper_anf: bool,

    /// Print the machine-readable result on stdout instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write the machine-readable result to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,

    /// Number of variables, when it cannot be inferred from the input.
    #[arg(short = 'n', long = "vars", global = true)]
    pub vars: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree, bentness, nonlinearity, dual and spectrum summary of a function.
    Analyze {
        /// File, "-" for stdin, "catalog:C2_3", or an inline ANF list separated by ';'.
        input: String,
    },
    /// Build a design and validate its parameters.
    Design {
        input: String,
        #[arg(long, value_enum, default_value_t = DesignKind::Addition)]
        kind: DesignKind,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Text)]
        format: MatrixFormat,
        /// Incidence matrix destination (default stdout, with the report on stderr).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 2-rank, Smith normal form, fingerprint and optionally the automorphism group order.
    Invariants {
        /// A function or an incidence matrix file.
        input: String,
        #[arg(long, value_enum, default_value_t = DesignKind::Graph)]
        kind: DesignKind,
        /// Also compute the automorphism group order and canonical hash.
        #[arg(long)]
        aut: bool,
    },
    /// Decide EA-equivalence of two bent functions.
    Equivalent { first: String, second: String },
    /// Decide isomorphism of two designs (matrix files, or functions with --kind).
    Isomorphic {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value_t = DesignKind::Graph)]
        kind: DesignKind,
        /// Write the point and block maps of a found isomorphism here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Classify (n,m)-bent functions for all m, layer by layer. Needs -n (2, 4 or 6).
    Classify {
        /// Highest layer to build.
        #[arg(long)]
        top: Option<usize>,
        /// Directory for classes.jsonl, hasse.dot, hasse.json and report.json.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        checkpoint: CheckpointArgs,
    },
    /// Enumerate affine-free bent Boolean functions and tally them by class key. Needs -n (2, 4 or 6).
    Enumerate {
        /// Write every table (hex, one per line) to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Stop after this many checkpoint batches.
        #[arg(long)]
        max_batches: Option<u64>,
        #[command(flatten)]
        checkpoint: CheckpointArgs,
    },
    /// Run a named reproduction suite.
    Verify {
        suite: String,
        /// For counts-n6: write the classification artifacts here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        checkpoint: CheckpointArgs,
    },
    /// List the catalog of (6,m)-bent class representatives, or show one entry.
    Catalog {
        /// Class id such as C2_3.
        id: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CheckpointArgs {
    /// Directory holding resumable enumeration checkpoints.
    #[arg(long, env = "BENTKIT_CHECKPOINT_DIR")]
    pub checkpoint_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignKind {
    /// dev(D_f) of a Boolean function.
    Support,
    /// dev(G_F).
    Graph,
    /// Minimum-weight codewords of C(F).
    Addition,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Text,
    Hex,
}
