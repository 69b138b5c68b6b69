//! `skillvet`: vet voice-assistant skill catalogs for squatting names and
//! conversation transcripts for masquerading skills.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::{Context_, Outcome};
use config::Config;

const EXIT_FLAGGED: u8 = 2;
const EXIT_PARTIAL: u8 = 3;
const EXIT_USAGE: u8 = 64;

const AFTER_HELP: &str = "\
Exit codes: 0 clean, 1 error, 2 findings or alarms present, 3 partial scan
(some skills could not be phonemized), 64 usage error.

Logs go to standard error; JSON output goes to --out (written atomically) or
standard output. Set paths and thresholds once in a TOML/JSON file passed with
--config; flags override it.

Input schemas
  dictionary   CMU format: `WORD  PH PH ...`, alternatives as `WORD(2)`,
               `;;;` comments; stress digits ignored.
  catalog      JSONL, one skill per line:
               {\"id\", \"invocation_name\", \"display_name\"?, \"author\"?,
                \"category\"?, \"description\"?: string or [sentence, ...]}
  labels       JSONL: {\"utterance\", \"prior_response\"?, \"skill_id\",
                \"label\": \"switch\" | \"no-switch\"}
  transcripts  JSONL: {\"session_id\", \"skill\": <catalog record>,
                \"turns\": [{\"role\": \"user\" | \"skill\", \"text\", \"timestamp\"?}]}
  blacklist    text, one response per line, `<silence>` for the silent one
  syscmds      text, one command per line; `<name>` expands to every
               catalog invocation name
  variants     JSON/TOML {\"prefixes\": [...], \"suffixes\": [...]}";

#[derive(Parser)]
#[command(name = "skillvet", version, about, after_help = AFTER_HELP)]
struct Cli {
    /// Configuration file (TOML, or JSON by extension).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// More logging (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    /// Only log errors.
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn the phoneme edit-cost matrix from a dictionary's alternative pronunciations.
    BuildMatrix(BuildMatrixArgs),
    /// Weighted phonetic distance between two phrases.
    Distance(DistanceArgs),
    /// Prefix/suffix paraphrases (and optionally homophones) of an invocation name.
    Variants(VariantsArgs),
    /// Find competitive invocation names across a catalog.
    Scan(ScanArgs),
    /// Train the user-intention random forest.
    TrainUic(TrainUicArgs),
    /// Cross-validate the user-intention classifier.
    EvalUic(EvalUicArgs),
    /// Run the masquerading detector over transcripts.
    Detect(DetectArgs),
    /// Check that the SRC threshold separates legitimate responses from blacklist paraphrases.
    CalibrateSrc(CalibrateSrcArgs),
}

#[derive(Args)]
pub struct BuildMatrixArgs {
    #[arg(long, value_name = "FILE")]
    pub dict: Option<PathBuf>,
    /// Reject malformed dictionary lines instead of skipping them.
    #[arg(long)]
    pub strict: bool,
    /// Matrix TSV destination; standard output if omitted.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct DistanceArgs {
    pub left: String,
    pub right: String,
    #[arg(long, value_name = "FILE")]
    pub dict: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
    /// Unit costs instead of a learned matrix.
    #[arg(long, conflicts_with = "matrix")]
    pub uniform: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VariantsArgs {
    pub name: String,
    /// Prefix/suffix configuration; built-in defaults otherwise.
    #[arg(long, value_name = "FILE")]
    pub variants: Option<PathBuf>,
    /// Also list single-word homophone substitutions from the dictionary.
    #[arg(long)]
    pub homophones: bool,
    /// Homophone distance bound.
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long, value_name = "FILE")]
    pub dict: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
    #[arg(long, conflicts_with = "matrix")]
    pub uniform: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScanArgs {
    #[arg(long, value_name = "FILE")]
    pub catalog: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub dict: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
    #[arg(long, conflicts_with = "matrix")]
    pub uniform: bool,
    #[arg(long, value_name = "FILE")]
    pub variants: Option<PathBuf>,
    /// Distance threshold (0 = identical pronunciation); default 1.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Print the summary table to standard error.
    #[arg(long)]
    pub table: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ForestArgs {
    #[arg(long)]
    pub trees: Option<usize>,
    #[arg(long)]
    pub max_features: Option<usize>,
    #[arg(long)]
    pub min_leaf: Option<usize>,
    #[arg(long)]
    pub max_depth: Option<usize>,
}

#[derive(Args)]
pub struct TrainUicArgs {
    /// Labelled utterances (JSONL).
    #[arg(long, value_name = "FILE")]
    pub data: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub catalog: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub syscmds: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub forest: ForestArgs,
    /// Model destination (JSON); standard output if omitted.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct EvalUicArgs {
    #[arg(long, value_name = "FILE")]
    pub data: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub catalog: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub syscmds: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    pub folds: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub forest: ForestArgs,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct DetectArgs {
    #[arg(long, value_name = "FILE")]
    pub transcripts: PathBuf,
    /// Trained forest from `train-uic`.
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub catalog: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub syscmds: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub blacklist: Option<PathBuf>,
    /// Mimicry threshold in (0, 1].
    #[arg(long)]
    pub src_threshold: Option<f64>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CalibrateSrcArgs {
    /// Transcript or labelled-utterance JSONL files holding legitimate skill responses.
    #[arg(long, value_name = "FILE", required = true, num_args = 1..)]
    pub legit: Vec<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub blacklist: Option<PathBuf>,
    /// Paraphrase rules for blacklist entries (JSON/TOML: prefixes, suffixes, synonyms).
    #[arg(long, value_name = "FILE")]
    pub response_variants: Option<PathBuf>,
    #[arg(long)]
    pub src_threshold: Option<f64>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let level = match (cli.quiet, cli.verbose) {
        (true, _) => log::LevelFilter::Error,
        (false, 0) => log::LevelFilter::Info,
        (false, _) => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_env("SKILLVET_LOG")
        .target(env_logger::Target::Stderr)
        .init();

    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Flagged) => ExitCode::from(EXIT_FLAGGED),
        Ok(Outcome::Partial) => ExitCode::from(EXIT_PARTIAL),
        Err(e) => {
            log::error!("{e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(n) = cli.threads.or(config.threads) {
        if n == 0 {
            anyhow::bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let ctx = Context_ { config };
    match cli.command {
        Command::BuildMatrix(a) => commands::build_matrix_cmd(&ctx, a),
        Command::Distance(a) => commands::distance_cmd(&ctx, a),
        Command::Variants(a) => commands::variants_cmd(&ctx, a),
        Command::Scan(a) => commands::scan_cmd(&ctx, a),
        Command::TrainUic(a) => commands::train_uic_cmd(&ctx, a),
        Command::EvalUic(a) => commands::eval_uic_cmd(&ctx, a),
        Command::Detect(a) => commands::detect_cmd(&ctx, a),
        Command::CalibrateSrc(a) => commands::calibrate_src_cmd(&ctx, a),
    }
}
