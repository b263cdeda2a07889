use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fsexp2_cli::Report;

#[derive(Parser)]
#[command(name = "fsexp2", version, about = "Exact GF(2) quadratic forms, EM cocycles and pointed modular data")]
struct Cli {
    /// Emit JSON (the only format; accepted for explicitness).
    #[arg(long, global = true)]
    json: bool,
    /// Lower the dimension cap of the command (never above the compiled cap).
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arf invariant, Gauss sum and prime decomposition of a form.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Cocycle, restriction and Frobenius-Schur checks for a 3-cochain, plus
    /// hexagons and trace when a braiding is given.
    VerifyCocycle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        input2: Option<PathBuf>,
    },
    /// Braided equivalence of the categories of two forms.
    Equiv {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        input2: PathBuf,
    },
    /// Arf census of the forms with standard polar on Z_2^dim.
    Enumerate {
        #[arg(long)]
        dim: usize,
    },
    /// Full modular data report of a form.
    Smatrix {
        #[arg(long)]
        input: PathBuf,
    },
}

fn read(command: &'static str, path: &Path) -> Result<String, Report> {
    fs::read_to_string(path).map_err(|e| Report::invalid(command, format!("cannot read {}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Report, Report> {
    let max_n = cli.max_n;
    Ok(match &cli.command {
        Command::Classify { input } => fsexp2_cli::classify(&read("classify", input)?, max_n),
        Command::VerifyCocycle { input, input2 } => {
            let cocycle = read("verify-cocycle", input)?;
            let braiding = input2.as_deref().map(|p| read("verify-cocycle", p)).transpose()?;
            fsexp2_cli::verify_cocycle(&cocycle, braiding.as_deref(), max_n)
        }
        Command::Equiv { input, input2 } => fsexp2_cli::equiv(&read("equiv", input)?, &read("equiv", input2)?, max_n),
        Command::Enumerate { dim } => fsexp2_cli::enumerate(*dim, max_n),
        Command::Smatrix { input } => fsexp2_cli::smatrix(&read("smatrix", input)?, max_n),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli).unwrap_or_else(|r| r);
    print!("{}", report.render());
    if let Some(err) = report.result.get("error").and_then(|e| e.as_str()) {
        eprintln!("fsexp2: {err}");
    }
    ExitCode::from(report.exit_code() as u8)
}
