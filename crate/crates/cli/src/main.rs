use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lexidist_core::{DenominatorMode, MetricId, OutputFormat, VariantPolicy};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "lexidist", version, about = "Jaro-based dialect comparison over Swadesh-style wordlists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check wordlists against the concept list and report coverage.
    Validate(Options),
    /// Compare every pair of varieties and print the aggregate tables.
    Compare(Options),
    /// Build a UPGMA tree from pairwise distances and print it as Newick.
    Classify(Options),
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Wordlist files (long format, or wide format with --columns).
    pub inputs: Vec<PathBuf>,

    /// Concept list TSV (`concept_id<TAB>gloss`); defaults to the bundled 207-entry Swadesh list.
    #[arg(long, value_name = "PATH")]
    pub concepts: Option<PathBuf>,

    #[arg(long, default_value = "jaro", value_name = "jaro|jaro_winkler|levenshtein_norm")]
    pub metric: MetricId,

    /// How concepts with several variants are scored.
    #[arg(long, default_value = "max", value_name = "max|mean|first")]
    pub policy: VariantPolicy,

    /// Denominator of the percentage table.
    #[arg(long, default_value = "full", value_name = "full|aligned")]
    pub denominator: DenominatorMode,

    #[arg(long, default_value = "markdown", value_name = "csv|json|markdown")]
    pub format: OutputFormat,

    /// Decimal places shown in tables.
    #[arg(long = "round", default_value_t = 2, value_name = "N")]
    pub round: usize,

    /// Write the report (or Newick tree) to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Pre-computed distance matrix CSV (header row of labels, then labeled rows).
    #[arg(long = "matrix-file", value_name = "PATH")]
    pub matrix_file: Option<PathBuf>,

    /// Wide-format column mapping, e.g. `id=1,gloss=2,Zaza=3,Hawrami=4`.
    #[arg(long, value_name = "MAPPING")]
    pub columns: Option<String>,

    #[arg(long = "no-case-fold")]
    pub no_case_fold: bool,

    #[arg(long = "keep-punctuation")]
    pub keep_punctuation: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(opts) => commands::validate(opts),
        Command::Compare(opts) => commands::compare(opts),
        Command::Classify(opts) => commands::classify(opts),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
