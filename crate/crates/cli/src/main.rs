//! `fuzzcommit`: file-based fuzzy commitment workflow.
//!
//! setup → commit → (transmit) → open, plus `simulate` and `mindist`.
//! `open` exits 0 on accept and 1 on reject; every usage or input error exits 2.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "fuzzcommit", version, about = "Fuzzy commitments over binary codes")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Parameters file written by `setup`.
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,

    /// Seed for witness sampling and noisy channels.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Publish parameters: code and threshold z0.
    Setup {
        /// `paper7`, `hamming74`, or a code file (table or generator rows).
        #[arg(long, default_value = "hamming74")]
        code: String,
        /// Threshold as `num/den` or decimal, in [0, 1).
        #[arg(long)]
        z0: String,
    },
    /// Commit to a message; writes the commitment and the opening.
    Commit {
        #[arg(short, long)]
        message: String,
        /// Explicit witness codeword; otherwise one is drawn from --seed.
        #[arg(long)]
        witness: Option<String>,
        /// Where to write the opening (the commitment goes to --out).
        #[arg(long, default_value = "opening.txt")]
        opening_out: PathBuf,
    },
    /// Pass an artifact file through a channel.
    Transmit {
        input: PathBuf,
        #[arg(long, conflicts_with = "flip_prob")]
        mask: Option<String>,
        /// Binary symmetric channel flip probability (`num/den` or decimal).
        #[arg(long)]
        flip_prob: Option<String>,
        /// Which word of an opening file to corrupt.
        #[arg(long, value_enum)]
        field: Option<Field>,
        /// Trial index used to key the channel stream.
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
    /// Open a commitment and report the decision.
    Open {
        #[arg(long)]
        commitment: PathBuf,
        #[arg(long)]
        opening: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Fuzzy)]
        mode: Mode,
    },
    /// Measure acceptance under channel noise.
    Simulate {
        #[arg(short, long)]
        message: String,
        /// Single flip probability.
        #[arg(long, conflicts_with = "sweep")]
        flip_prob: Option<String>,
        /// Comma-separated flip probabilities.
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<String>>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Legs that carry the noise.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "commitment")]
        noise_on: Vec<Field>,
        /// Instead of sampling, open against every commitment error of this weight.
        #[arg(long, conflicts_with_all = ["flip_prob", "sweep"])]
        exhaustive_weight: Option<usize>,
        /// Witness for --exhaustive-weight (defaults to the all-zeros word when it is a codeword).
        #[arg(long, requires = "exhaustive_weight")]
        witness: Option<String>,
    },
    /// Print the minimum distance of the code.
    Mindist {
        /// Code selector; defaults to the code in --params.
        #[arg(long)]
        code: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Crisp,
    Fuzzy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Commitment,
    EncodedMessage,
    Witness,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
