use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use torus_link_cli::config::parse_count;
use torus_link_cli::{parse_input, run, CliError, Command, RunOptions};
use torus_link_core::TermCount;

/// Linking numbers of geodesic multi-curves on the flat 3-torus.
#[derive(Parser)]
#[command(name = "torus-link", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// JSON configuration file (default: stdin)
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Heat time for the spectral series; repeat for several
    #[arg(long = "t", global = true, value_name = "FLOAT")]
    t: Vec<f64>,

    /// Terms per pair series: a positive integer or "auto"
    #[arg(long, global = true, value_name = "N|auto", value_parser = parse_count)]
    kmax: Option<TermCount>,

    /// Spectral-vs-closed-form tolerance for verify
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,

    /// Reject homologically non-trivial collections
    #[arg(long, global = true)]
    require_trivial: bool,

    /// Human-readable summary instead of JSON
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Exact rational closed form
    ClosedForm,
    /// Heat-regularized spectral series
    Spectral,
    /// Signed crossings with a bounding chain
    Oracle,
    /// All three methods over a decreasing heat-time schedule
    Verify,
    /// Geodesic-flow orbits of the flat 2-torus
    T2,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::ClosedForm => Command::ClosedForm,
            Cmd::Spectral => Command::Spectral,
            Cmd::Oracle => Command::Oracle,
            Cmd::Verify => Command::Verify,
            Cmd::T2 => Command::T2,
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            Ok(text)
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    let text = read_input(cli.input.as_ref())?;
    let config = parse_input(&text)?;
    let opts = RunOptions {
        t: cli.t.clone(),
        kmax: cli.kmax,
        tol: cli.tol,
        require_trivial: cli.require_trivial,
    };
    let report = run(cli.command.into(), &config, &opts)?;
    if cli.pretty {
        print!("{}", report.to_text());
    } else {
        println!("{}", report.to_json());
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim_end().to_owned());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code());
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code())
        }
    }
}
