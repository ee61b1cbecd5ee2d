//! `translit`: train, inspect and run the English to Punjabi
//! transliteration pipeline from the shell. Payload goes to the
//! output stream, diagnostics to the error stream; exit code 0 on
//! success, 1 on usage errors, 2 on data or model errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use translit_core::corpus::EntityCategory;

#[derive(Parser)]
#[command(name = "translit", version, about = "Syllable-based English to Punjabi transliteration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ProfileArgs {
    /// Vowel letters, e.g. "aeiou"
    #[arg(long)]
    vowels: Option<String>,
    /// Comma-separated consonant digraphs, e.g. "bh,ch,dh"
    #[arg(long)]
    digraphs: Option<String>,
}

#[derive(Args)]
struct DecodeArgs {
    /// Language-model interpolation weight in [0, 1]
    #[arg(long = "lm-weight", default_value_t = 0.0)]
    lm_weight: f64,
    /// Candidates kept per syllable
    #[arg(long, default_value_t = 5)]
    beam: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TagArg {
    Person,
    Location,
    Other,
}

impl From<TagArg> for EntityCategory {
    fn from(tag: TagArg) -> Self {
        match tag {
            TagArg::Person => EntityCategory::Person,
            TagArg::Location => EntityCategory::Location,
            TagArg::Other => EntityCategory::Other,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Train translation tables and the language model from a corpus
    Train {
        /// Parallel corpus file (source<TAB>target<TAB>category)
        #[arg(long)]
        corpus: PathBuf,
        /// Where to write the trained model
        #[arg(long)]
        out: PathBuf,
        /// Person list; entries found here train as PERSON
        #[arg(long)]
        persons: Option<PathBuf>,
        /// Location list; entries found here train as LOCATION
        #[arg(long)]
        locations: Option<PathBuf>,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Print words as hyphen-joined syllables, one per line
    Syllabify {
        /// Input file; standard input when absent
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Tag sentence tokens as PERSON, LOCATION or OTHER
    Tag {
        #[arg(long)]
        persons: PathBuf,
        #[arg(long)]
        locations: PathBuf,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transliterate words or sentences, one per line
    Transliterate {
        /// Trained model file
        #[arg(long, env = "TRANSLIT_MODEL")]
        model: PathBuf,
        #[arg(long)]
        persons: Option<PathBuf>,
        #[arg(long)]
        locations: Option<PathBuf>,
        #[command(flatten)]
        decode: DecodeArgs,
        /// Emit the k best candidates with scores (word mode only)
        #[arg(long)]
        nbest: Option<usize>,
        /// Treat each line as a single word, skipping tagging
        #[arg(long, conflicts_with = "sentences")]
        words: bool,
        /// Treat each line as a sentence (the default)
        #[arg(long)]
        sentences: bool,
        /// Entity tag for word mode
        #[arg(long, value_enum)]
        tag: Option<TagArg>,
        /// Print the per-syllable or per-token trace
        #[arg(long = "show-syllables")]
        show_syllables: bool,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a model against a test corpus
    Evaluate {
        #[arg(long, env = "TRANSLIT_MODEL")]
        model: PathBuf,
        /// Test corpus file
        #[arg(long)]
        test: PathBuf,
        /// Tag rows with the tagger instead of their gold category
        #[arg(long = "predicted-tags")]
        predicted_tags: bool,
        #[arg(long)]
        persons: Option<PathBuf>,
        #[arg(long)]
        locations: Option<PathBuf>,
        /// Write per-row outcomes as TSV to this file
        #[arg(long)]
        rows: Option<PathBuf>,
        #[command(flatten)]
        decode: DecodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Usage errors exit 1, data/model errors exit 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<translit_cli::formats::corpus::CorpusError> for CliError {
    fn from(e: translit_cli::formats::corpus::CorpusError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<translit_cli::formats::model::ModelError> for CliError {
    fn from(e: translit_cli::formats::model::ModelError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<translit_core::corpus::TrainError> for CliError {
    fn from(e: translit_core::corpus::TrainError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<translit_core::eval::EvalError> for CliError {
    fn from(e: translit_core::eval::EvalError) -> Self {
        CliError::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
