//! `cayleyrank`: classification, membership, ranks, isomorphism, corpus
//! generation and experiments for finite structures given by Cayley tables.
//!
//! Every invocation prints one JSON document on stdout. Exit status is 0
//! for a definitive answer, 2 when a search ran out of budget or only
//! produced a bound, and 1 for input or usage errors.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cayleyrank", version, about = "Rank and membership computations on Cayley tables")]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SearchOpts {
    /// Seed for randomized searches.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Candidate budget; overrides CAYLEYRANK_BUDGET.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Random tries per sequence length.
    #[arg(long, default_value_t = 1000)]
    pub tries: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Lower,
    Upper,
    Intermediate,
    Small,
    Large,
    Cube,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Closure,
    Semigroup,
    Subgroup,
    Bounded,
    Cube,
    Graph,
    ViaRank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Labels {
    Strict,
    WithUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Cube,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Chain,
    RandomCubes,
    Subring,
    Gap,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural flags and the most specific label of a table or ring.
    Classify { file: String },

    /// A rank of a table, or whether it is at most --k.
    Rank {
        file: String,
        #[arg(long, value_enum, default_value = "lower")]
        variant: VariantArg,
        #[arg(long)]
        k: Option<usize>,
        /// Longest sequence tried by the cube-rank search.
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// Largest subset size tried by exhaustive magma rank search.
        #[arg(long)]
        max_subset: Option<usize>,
        #[command(flatten)]
        search: SearchOpts,
    },

    /// Whether the target lies in the structure generated by --gens.
    Member {
        file: String,
        #[arg(long)]
        target: usize,
        /// Comma-separated generators; empty for the empty set.
        #[arg(long, default_value = "")]
        gens: String,
        #[arg(long, value_enum, default_value = "closure")]
        algo: Algo,
        /// Comma-separated sequence for --algo cube.
        #[arg(long)]
        seq: Option<String>,
        /// Parenthesization for --algo cube, e.g. "((0 1) 2)"; balanced by default.
        #[arg(long)]
        tree: Option<String>,
        /// Longest sequence for --algo bounded.
        #[arg(long)]
        k: Option<usize>,
        /// Deepest parenthesization for --algo bounded.
        #[arg(long)]
        d: Option<usize>,
        /// Edge labels for --algo graph.
        #[arg(long, value_enum, default_value = "strict")]
        labels: Labels,
        #[arg(long)]
        budget: Option<u64>,
    },

    /// Ring rank with the additive-group and multiplicative-monoid ranks.
    RingRank {
        file: String,
        #[arg(long)]
        budget: Option<u64>,
    },

    /// Quasigroup isomorphism.
    Iso {
        file_g: String,
        file_h: String,
        #[arg(long, value_enum, default_value = "cube")]
        mode: Mode,
        #[command(flatten)]
        search: SearchOpts,
    },

    /// Writes a corpus structure in the table format.
    Generate {
        family: String,
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relabel the elements with a permutation drawn from this seed.
        #[arg(long)]
        shuffle: Option<u64>,
        /// Output file; without it the table text is included in the JSON.
        #[arg(long)]
        out: Option<String>,
    },

    /// Corpus sweeps.
    Experiment {
        #[arg(value_enum)]
        name: Experiment,
        /// Largest order included (chain: 10, subring: 16, gap: 8).
        #[arg(long)]
        max_n: Option<usize>,
        /// Largest generator set for the subring comparison.
        #[arg(long, default_value_t = 2)]
        max_gens: usize,
        #[arg(long, default_value = "8,16,32")]
        orders: String,
        #[arg(long, default_value = "2,3,4")]
        factors: String,
        #[arg(long, default_value_t = 40)]
        instances: u64,
        #[arg(long, default_value_t = 1000)]
        tries: u64,
        #[arg(long, default_value_t = 16)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
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
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("cannot set up {threads} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let (doc, code) = commands::run(&cli.command);
    let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}
