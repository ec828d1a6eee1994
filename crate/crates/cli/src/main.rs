use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use embcomp_cli::CliError;

/// Compose immersive visualization views from interaction traces.
#[derive(Debug, Parser)]
#[command(name = "embcomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Apply a trace to a manifest and write every committed composite.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        /// Output file; composites go to standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Threshold overrides, replacing the manifest's.
        #[arg(long)]
        thresholds: Option<PathBuf>,
    },
    /// Print the relationship resolved for every table pair.
    Infer {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Print which composite types each relationship kind admits.
    Matrix,
    /// Replay a bundled demo case and check its result.
    Demo {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(embcomp_cli::demos::CASES))]
        case: String,
        #[arg(long)]
        thresholds: Option<PathBuf>,
    },
    /// Check that a manifest and/or trace parse and validate.
    Validate {
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Serve the WebSocket session endpoint at /session.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

fn serve(port: u16) -> Result<String, CliError> {
    tracing_subscriber::fmt::init();
    let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Engine(e.to_string()))?;
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    rt.block_on(embcomp_server::serve(addr))
        .map_err(|e| CliError::Input(format!("cannot serve on {addr}: {e}")))?;
    Ok(String::new())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Replay {
            manifest,
            trace,
            out,
            thresholds,
        } => embcomp_cli::run_replay(&manifest, &trace, out.as_deref(), thresholds.as_deref()),
        Cmd::Infer { manifest } => embcomp_cli::run_infer(&manifest),
        Cmd::Matrix => Ok(embcomp_cli::run_matrix()),
        Cmd::Demo { case, thresholds } => embcomp_cli::run_demo(&case, thresholds.as_deref()),
        Cmd::Validate { manifest, trace } => {
            embcomp_cli::run_validate(manifest.as_deref(), trace.as_deref())
        }
        Cmd::Serve { port } => serve(port),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("embcomp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
