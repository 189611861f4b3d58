use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use improvelearn_cli::{cmd_list, cmd_run, cmd_teach, EXIT_ERROR};

#[derive(Parser)]
#[command(name = "improvelearn", version, about = "Run learning-with-improvements scenarios")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario: `run ID [--config FILE] [--out DIR] [--jobs N] [--seed N] [--KEY VALUE ...]`.
    Run {
        scenario: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Print the scenario registry.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Teaching set for a graph and a labeling.
    Teach { graph: PathBuf, labeling: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("error: bad arguments"));
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let code = match cli.cmd {
        Cmd::Run { scenario, args } => cmd_run(&scenario, &args),
        Cmd::List { json } => cmd_list(json),
        Cmd::Teach { graph, labeling } => cmd_teach(&graph, &labeling),
    };
    ExitCode::from(code as u8)
}
