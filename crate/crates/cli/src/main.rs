mod commands;
mod render;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grcat::models::Theory;

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "grcat", version, about = "Finite graphs, free categories and presented categories")]
struct Cli {
    /// Print a JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BoundArgs {
    /// Longest path kept by the congruence closure.
    #[arg(long = "max-len", default_value_t = 6)]
    pub max_len: usize,
    /// Most morphisms accepted in a presented category.
    #[arg(long = "max-morphisms", default_value_t = 10000)]
    pub max_morphisms: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free category on an acyclic graph.
    Free { graph: PathBuf },
    /// Check a model file against the category or groupoid axioms.
    CheckModel {
        #[arg(long, default_value = "cat")]
        theory: Theory,
        model: PathBuf,
    },
    /// List every model structure on a graph.
    EnumerateModels {
        #[arg(long, default_value = "cat")]
        theory: Theory,
        /// Largest raw search space to attempt.
        #[arg(long, default_value_t = 1 << 24)]
        cap: u128,
        graph: PathBuf,
    },
    /// Coequalizer of a presentation.
    Coeq {
        #[command(flatten)]
        bounds: BoundArgs,
        presentation: PathBuf,
    },
    /// Rewrite a presentation over its vertex quotient and print a section.
    SectionNormalize {
        #[command(flatten)]
        bounds: BoundArgs,
        presentation: PathBuf,
    },
    /// Decide whether two paths are equal in a presented category.
    WordEq {
        #[command(flatten)]
        bounds: BoundArgs,
        presentation: PathBuf,
        left: String,
        right: String,
    },
    /// Count graph morphisms.
    HomCount { dom: PathBuf, cod: PathBuf },
    /// Pushout of two morphisms with a common domain from a diagram file.
    Pushout {
        diagram: PathBuf,
        left: String,
        right: String,
    },
    /// Hom-set stabilization along a chain of categories.
    FpProbe {
        /// `discrete-inclusion`, `collapse` or `constant:<category file>`.
        #[arg(long)]
        chain: String,
        #[arg(long, default_value_t = 8)]
        cap: usize,
        /// Presentation of the probed category; defaults to the point.
        #[arg(long, conflicts_with = "free")]
        model: Option<PathBuf>,
        /// Probe the free category on this graph, comparing both hom routes.
        #[arg(long)]
        free: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Run the built-in verification checks over the sample corpus.
    VerifySuite,
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Free { graph } => commands::free(&graph),
        Command::CheckModel { theory, model } => commands::check_model(theory, &model),
        Command::EnumerateModels { theory, cap, graph } => commands::enumerate_models(theory, cap, &graph),
        Command::Coeq { bounds, presentation } => commands::coeq(bounds, &presentation),
        Command::SectionNormalize { bounds, presentation } => commands::section_normalize(bounds, &presentation),
        Command::WordEq {
            bounds,
            presentation,
            left,
            right,
        } => commands::word_eq(bounds, &presentation, &left, &right),
        Command::HomCount { dom, cod } => commands::hom_count(&dom, &cod),
        Command::Pushout { diagram, left, right } => commands::pushout(&diagram, &left, &right),
        Command::FpProbe {
            chain,
            cap,
            model,
            free,
            bounds,
        } => commands::fp_probe(&chain, cap, model.as_deref(), free.as_deref(), bounds),
        Command::VerifySuite => Ok(suite::run()),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Free { .. } => "free",
        Command::CheckModel { .. } => "check-model",
        Command::EnumerateModels { .. } => "enumerate-models",
        Command::Coeq { .. } => "coeq",
        Command::SectionNormalize { .. } => "section-normalize",
        Command::WordEq { .. } => "word-eq",
        Command::HomCount { .. } => "hom-count",
        Command::Pushout { .. } => "pushout",
        Command::FpProbe { .. } => "fp-probe",
        Command::VerifySuite => "verify-suite",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", render::json_envelope(name, &outcome));
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.status.code())
        }
        Err(e) => {
            if cli.json {
                println!("{}", render::json_error(name, &e));
            }
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
