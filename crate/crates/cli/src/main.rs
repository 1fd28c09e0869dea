use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use commands::{CliError, Context};
use report::RunReport;

#[derive(Debug, Parser)]
#[command(
    name = "shirshov",
    version,
    about = "Gröbner–Shirshov rewriting, Minsky machine algebras and Pell varieties"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write every rewrite step to this file.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a polynomial.
    Nf { pres: String, poly: String },
    /// Checks whether the rules form a Gröbner–Shirshov basis.
    Check { pres: String },
    /// Bounded completion.
    Complete {
        pres: String,
        #[arg(long = "max-deg")]
        max_deg: usize,
    },
    /// Ideal membership via normal form.
    Member { pres: String, poly: String },
    /// Minsky machine utilities.
    #[command(subcommand)]
    Tm(TmCommand),
    /// Pell pair (X_n, Y_n).
    Pell { n: u32 },
    /// Variety systems and their solutions.
    #[command(subcommand)]
    Variety(VarietyCommand),
}

#[derive(Debug, Args)]
pub struct TmArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Nil)]
    pub mode: ModeArg,
    /// Configuration such as `state:2 current:3 left:[3] right:[]`.
    #[arg(long)]
    pub config: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Nil,
    Zd,
}

#[derive(Debug, Subcommand)]
pub enum TmCommand {
    /// Runs the machine.
    Simulate {
        #[command(flatten)]
        args: TmArgs,
        #[arg(long, default_value_t = 100)]
        bound: usize,
    },
    /// Prints the main word of a configuration.
    Encode {
        #[command(flatten)]
        args: TmArgs,
    },
    /// Compares NF(t·enc(c)) against the machine step.
    StepCheck {
        #[command(flatten)]
        args: TmArgs,
    },
    /// Bounded search for the algebraic halting certificate.
    Witness {
        #[command(flatten)]
        args: TmArgs,
        #[arg(long, default_value_t = 50)]
        bound: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum VarietyCommand {
    /// Generates a system.
    Gen {
        #[arg(
            long,
            value_name = "D",
            conflicts_with = "complex",
            required_unless_present = "complex"
        )]
        real: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["D", "E"])]
        complex: Option<Vec<usize>>,
        /// JSON file `{"q": "...", "sigma": {...}, "slots": [...]}`.
        #[arg(long)]
        dioph: Option<PathBuf>,
    },
    /// Builds the solution attached to integer data.
    Solve {
        /// Comma-separated integers; rows separated by `;` with `--complex`.
        #[arg(long = "N", allow_hyphen_values = true)]
        n: String,
        #[arg(long)]
        complex: bool,
    },
    /// Checks an assignment against a system (text or JSON files).
    Verify {
        system: PathBuf,
        assignment: PathBuf,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let mut ctx = Context::new(cli.trace.clone());
    match commands::run(&cli.command, &mut ctx) {
        Ok(outcome) => {
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let body = match cli.format {
                Format::Text => outcome.text.clone(),
                Format::Json => {
                    let report = RunReport::new(argv[1..].to_vec(), ctx.inputs, &outcome, elapsed);
                    serde_json::to_string_pretty(&report).expect("report serializes")
                }
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 1,
                CliError::Engine(_) => 2,
            })
        }
    }
}
