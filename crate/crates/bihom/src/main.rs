use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bihom::catalog;
use bihom::dsl::{self, ModeSpec, RunOptions, RunReport};

#[derive(Parser)]
#[command(name = "bihom", version, about = "Run checks on BiHom-algebras and bimodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a .bihom document.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Mode for checks that do not name one.
        #[arg(long, value_enum, default_value_t = Mode::Linearized)]
        mode: Mode,
        /// Seed for sampled mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Points for sampled mode.
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the built-in acceptance document.
    ReplicatePaper {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the catalog entries.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Linearized,
    Symbolic,
    Sampled,
}

fn emit(report: &RunReport, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Structured => println!("{}", report.to_structured()),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run_source(source: &str, opts: RunOptions, format: Format) -> ExitCode {
    match dsl::parse(source).and_then(|doc| dsl::run_with(&doc, opts)) {
        Ok(report) => emit(&report, format),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            file,
            format,
            mode,
            seed,
            points,
        } => {
            let source = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::FAILURE;
                }
            };
            let mode = match mode {
                Mode::Linearized => ModeSpec::Linearized,
                Mode::Symbolic => ModeSpec::Symbolic,
                Mode::Sampled => ModeSpec::Sampled,
            };
            run_source(&source, RunOptions { mode, seed, points }, format)
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            for e in catalog::entries() {
                println!("{:<12} dim {:<2} {}", e.name, e.dim, e.description);
            }
            ExitCode::SUCCESS
        }
        Command::ReplicatePaper { format } => run_source(dsl::REPLICATE_PAPER, RunOptions::default(), format),
    }
}
