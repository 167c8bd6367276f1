use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gausslab_cli::config::{Config, Experiment};
use gausslab_cli::error::{exit, CliError};
use gausslab_cli::{execute, experiments};

#[derive(Parser)]
#[command(name = "gauss-lab", version, about = "Gaussian channel simulation and error-correction experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment named in a key=value config file.
    Run {
        config: PathBuf,
        /// Override a config entry, e.g. --set chi=0.6
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Print the parameters, columns and checks of an experiment.
    Describe { experiment: String },
}

fn run(config: &PathBuf, set: &[String]) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", config.display())))?;
    let cfg = Config::from_text(&text, set)?;
    let report = execute(&cfg)?;
    print!("{}", report.summary(&cfg));
    Ok(report.all_checks_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, set } => run(config, set),
        Command::Describe { experiment } => experiment.parse::<Experiment>().map(|e| {
            print!("{}", experiments::describe(e));
            true
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: figure check failed");
            ExitCode::from(exit::CHECK_FAILED)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
