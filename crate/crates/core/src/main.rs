use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use tube_dynamo::cli::{self, Command, Invocation, OutputFormat};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Action {
    /// Evaluate a scenario config (with its sweep) and write one row per point.
    Run { config: PathBuf },
    /// Compare stated closed forms against independent oracles.
    Report { config: PathBuf },
}

#[derive(Debug, Parser)]
#[command(name = "tube-dynamo", version, about = "Kinematic dynamo scenarios on twisted flux tubes")]
struct Args {
    #[command(subcommand)]
    action: Action,

    /// Output file; defaults to the config's `output` key, then stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format; defaults to the config's `format` key, then csv.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Classification and report tolerance.
    #[arg(long, global = true, default_value_t = tube_dynamo::classification::DEFAULT_TOLERANCE)]
    tolerance: f64,
}

fn main() {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { cli::EXIT_CONFIG } else { cli::EXIT_OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let (command, config) = match args.action {
        Action::Run { config } => (Command::Run, config),
        Action::Report { config } => (Command::Report, config),
    };
    let inv = Invocation {
        command,
        config,
        output: args.output,
        format: args.format.map(|f| match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }),
        jobs: args.jobs,
        tolerance: args.tolerance,
    };
    std::process::exit(cli::execute(&inv));
}
