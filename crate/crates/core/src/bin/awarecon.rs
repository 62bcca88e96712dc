use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use awarecon::commands::{self, Command, OutputFormat};
use awarecon::scenario::parse_scenario;

use clap::Parser;

#[derive(Parser)]
#[command(
    name = "awarecon",
    about = "Consumption-leisure allocations under bounded environmental awareness",
    disable_help_subcommand = true
)]
struct Cli {
    /// solve | nash | efficient | figure1 | sweep | extended | trajectory | selftest
    command: String,

    /// Scenario file (section.key = value lines); optional for selftest.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, default_value = "csv")]
    format: String,
}

fn fail(msg: &str, code: u8) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are a clean exit.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };

    if cli.command == "selftest" {
        let (report, ok) = commands::run_selftest();
        print!("{report}");
        return if ok { ExitCode::SUCCESS } else { ExitCode::from(3) };
    }

    let command: Command = match cli.command.parse() {
        Ok(c) => c,
        Err(e) => return fail(&e.to_string(), 1),
    };
    let format: OutputFormat = match cli.format.parse() {
        Ok(f) => f,
        Err(e) => return fail(&e.to_string(), 1),
    };
    let config = match &cli.config {
        Some(path) => path,
        None => return fail("--config <path> is required", 1),
    };
    let text = match fs::read_to_string(config) {
        Ok(t) => t,
        Err(e) => return fail(&format!("cannot read {}: {e}", config.display()), 1),
    };
    let scenario = match parse_scenario(&text) {
        Ok(s) => s,
        Err(e) => return fail(&e.to_string(), 1),
    };
    let output = match commands::run(command, &scenario, format) {
        Ok(o) => o,
        Err(e) => return fail(&e.to_string(), e.exit_code() as u8),
    };

    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, output) {
                return fail(&format!("cannot write {}: {e}", path.display()), 1);
            }
        }
        None => {
            let mut stdout = std::io::stdout();
            if stdout.write_all(output.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::SUCCESS
}
