mod commands;
mod input;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use closure_form::instances::CorpusKind;
use serde_json::Value;

/// Closure operators on congruence lattices of finite algebras.
#[derive(Parser, Debug)]
#[command(name = "closure-form", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Also write the JSON result to this file.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// Algebra JSON file; the universe is its closure under quotients.
    #[arg(long, value_name = "PATH")]
    pub algebra: Option<PathBuf>,

    /// Built-in corpus used as the universe.
    #[arg(long, value_name = "KIND")]
    pub corpus: Option<CorpusKind>,

    /// Largest carrier size in the corpus.
    #[arg(long, value_name = "N", default_value_t = 4)]
    pub max_size: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Morphism {
    /// Domain algebra JSON file.
    #[arg(long, value_name = "PATH")]
    pub algebra: PathBuf,

    /// Codomain algebra JSON file.
    #[arg(long, value_name = "PATH")]
    pub codomain: PathBuf,

    /// The map as a JSON array, e.g. "[0,1,0,1]".
    #[arg(long, value_name = "JSON")]
    pub map: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate an algebra.
    Validate {
        #[arg(long, value_name = "PATH")]
        algebra: PathBuf,
    },
    /// List every congruence, top first, with the covering relation.
    ConLattice {
        #[arg(long, value_name = "PATH")]
        algebra: PathBuf,
    },
    /// Close a congruence under an operator.
    Close {
        #[arg(long, value_name = "NAME|PATH")]
        operator: String,
        #[arg(long, value_name = "PATH")]
        algebra: PathBuf,
        /// Blocks as JSON, e.g. "[[0,2],[1,3]]"; unlisted elements are singletons.
        #[arg(long, value_name = "JSON")]
        congruence: String,
    },
    /// Whether the map sends R-related pairs to S-related pairs.
    Lift {
        #[command(flatten)]
        morphism: Morphism,
        /// R, on the domain.
        #[arg(long, value_name = "JSON")]
        congruence: String,
        /// S, on the codomain.
        #[arg(long, value_name = "JSON")]
        target: String,
    },
    /// Image of a congruence along a surjection.
    Push {
        #[command(flatten)]
        morphism: Morphism,
        #[arg(long, value_name = "JSON")]
        congruence: String,
    },
    /// Preimage of a codomain congruence.
    Pull {
        #[command(flatten)]
        morphism: Morphism,
        /// Congruence on the codomain.
        #[arg(long, value_name = "JSON")]
        target: String,
    },
    /// Reflection kernels of the subcategory fixed by an operator.
    Reflect {
        #[arg(long, value_name = "NAME|PATH")]
        operator: String,
        #[command(flatten)]
        source: Source,
    },
    /// Report which axioms an operator satisfies.
    CheckOperator {
        #[arg(long, value_name = "NAME|PATH")]
        operator: String,
        #[command(flatten)]
        source: Source,
    },
    /// Operator to reflector and back, in both directions.
    Roundtrip {
        #[arg(long, value_name = "NAME|PATH")]
        operator: String,
        #[command(flatten)]
        source: Source,
    },
    /// Minimality against closure of the subcategory under quotients.
    Birkhoff {
        #[arg(long, value_name = "NAME|PATH")]
        operator: String,
        #[command(flatten)]
        source: Source,
    },
    /// Operator order against reverse subcategory inclusion.
    Antitone {
        /// Given twice: C1 then C2.
        #[arg(long, value_name = "NAME|PATH", num_args = 1, required = true)]
        operator: Vec<String>,
        #[command(flatten)]
        source: Source,
    },
    /// Print a corpus manifest.
    Corpus {
        #[arg(long, value_name = "KIND")]
        corpus: CorpusKind,
        #[arg(long, value_name = "N", default_value_t = 4)]
        max_size: usize,
    },
    /// Run every check on a corpus.
    VerifyAll {
        #[arg(long, value_name = "KIND")]
        corpus: CorpusKind,
        #[arg(long, value_name = "N", default_value_t = 4)]
        max_size: usize,
    },
}

/// What a command produced: JSON for stdout, a line for stderr, and whether
/// the mathematical check passed.
pub struct Outcome {
    pub value: Value,
    pub summary: String,
    pub pass: bool,
}

impl Outcome {
    pub fn pass(value: Value, summary: impl Into<String>) -> Self {
        Outcome {
            value,
            summary: summary.into(),
            pass: true,
        }
    }

    pub fn verdict(value: Value, summary: impl Into<String>, pass: bool) -> Self {
        Outcome {
            value,
            summary: summary.into(),
            pass,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Check(closure_form::Error),
}

impl From<closure_form::Error> for Failure {
    fn from(e: closure_form::Error) -> Self {
        Failure::Check(e)
    }
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate { algebra } => commands::validate(&algebra),
        Command::ConLattice { algebra } => commands::con_lattice(&algebra),
        Command::Close {
            operator,
            algebra,
            congruence,
        } => commands::close(&operator, &algebra, &congruence),
        Command::Lift {
            morphism,
            congruence,
            target,
        } => commands::lift(&morphism, &congruence, &target),
        Command::Push {
            morphism,
            congruence,
        } => commands::push(&morphism, &congruence),
        Command::Pull { morphism, target } => commands::pull(&morphism, &target),
        Command::Reflect { operator, source } => commands::reflect(&operator, &source),
        Command::CheckOperator { operator, source } => commands::check_operator(&operator, &source),
        Command::Roundtrip { operator, source } => commands::roundtrip(&operator, &source),
        Command::Birkhoff { operator, source } => commands::birkhoff(&operator, &source),
        Command::Antitone { operator, source } => commands::antitone(&operator, &source),
        Command::Corpus { corpus, max_size } => commands::corpus(corpus, max_size),
        Command::VerifyAll { corpus, max_size } => verify::verify_all(corpus, max_size),
    }
}

fn print_json(value: &Value, report: Option<&PathBuf>) -> bool {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    // a closed pipe downstream is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{text}");
    if let Some(path) = report {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write report {}: {e}", path.display());
            return false;
        }
    }
    true
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = cli.report.clone();
    match dispatch(cli.command) {
        Ok(outcome) => {
            if !print_json(&outcome.value, report.as_ref()) {
                return ExitCode::from(2);
            }
            eprintln!("{}", outcome.summary);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(message)) => {
            print_json(
                &serde_json::json!({ "error": "input", "message": message }),
                report.as_ref(),
            );
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Check(e)) => {
            let witness = e
                .witness()
                .map(|w| serde_json::to_value(w).expect("serializable"));
            let value = serde_json::json!({
                "error": e.kind(),
                "message": e.to_string(),
                "witness": witness,
            });
            print_json(&value, report.as_ref());
            eprintln!("error: {e}");
            if witness.is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
