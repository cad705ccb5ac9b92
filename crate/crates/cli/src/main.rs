use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use hodgegauge_cli::commands;
use hodgegauge_cli::{CliError, GeometryKind, Outcome, OUTPUT_DIR_VAR};
use hodgegauge_core::Profile;

/// Exact multicomplex toolkit: homotopy transfer, spectral pages, gauges and
/// polynomial de Rham complexes.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on bad
/// input.
#[derive(Parser)]
#[command(name = "hodgegauge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the relations Σ Δᵢ Δₙ₋ᵢ = 0 of a multicomplex file.
    Validate {
        file: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Homology, transfer, spectral pages and gauge search, with the
    /// three-way agreement check.
    Analyze {
        file: PathBuf,
        /// Last spectral page to compute (default: until stable).
        #[arg(long)]
        pages: Option<usize>,
        /// Use a randomized deformation retract with this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Build and check the de Rham multicomplex of a Poisson or Jacobi structure.
    Geometry {
        #[arg(long, value_enum)]
        kind: GeometryKind,
        /// Dimension m of ℝᵐ.
        #[arg(long)]
        dim: usize,
        /// Keep forms x^α dx_I with |α| + |I| ≤ D.
        #[arg(long)]
        trunc: u32,
        /// Structure file with the bivector (and vector field).
        #[arg(long)]
        structure: PathBuf,
        /// Where to write the exported multicomplex.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Emit a seeded random multicomplex.
    Generate {
        #[arg(long)]
        profile: Profile,
        #[arg(long)]
        seed: u64,
        /// Where to write the file (default: standard output).
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn path_str(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path_str(path), source })
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let out_dir = std::env::var_os(OUTPUT_DIR_VAR).map(PathBuf::from);
    let (outcome, json, output, stem, document_to_stdout): (Outcome, bool, Option<PathBuf>, String, bool) =
        match cli.command {
            Command::Validate { file, json } => {
                let stem = file_stem(&file);
                (commands::validate(&path_str(&file))?, json, None, format!("{stem}.validate"), false)
            }
            Command::Analyze { file, pages, seed, json } => {
                let stem = file_stem(&file);
                (commands::analyze(&path_str(&file), pages, seed)?, json, None, format!("{stem}.analyze"), false)
            }
            Command::Geometry { kind, dim, trunc, structure, output, json } => {
                let outcome = commands::geometry(kind, dim, trunc, &path_str(&structure))?;
                (outcome, json, output, format!("geometry-{kind}-m{dim}-D{trunc}"), false)
            }
            Command::Generate { profile, seed, output, json } => {
                (commands::generate(profile, seed)?, json, output, format!("generate-{profile}-{seed}"), true)
            }
        };

    let destination = match (&outcome.document, output, &out_dir) {
        (Some(_), Some(path), _) => Some(path),
        (Some((name, _)), None, Some(dir)) => Some(dir.join(name)),
        _ => None,
    };
    let report_text = if json { outcome.report.to_json() } else { outcome.report.to_text() };
    match (&outcome.document, destination) {
        (Some((_, text)), Some(path)) => {
            write(&path, text)?;
            eprintln!("wrote {}", path.display());
            print!("{report_text}");
        }
        (Some((_, text)), None) if document_to_stdout => {
            print!("{text}");
            if !outcome.report.passed {
                eprint!("{}", outcome.report.to_text());
            }
        }
        _ => print!("{report_text}"),
    }
    if let Some(dir) = out_dir {
        write(&dir.join(format!("{stem}.report.json")), &outcome.report.to_json())?;
    }
    Ok(outcome.report.passed)
}

fn file_stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "input".to_string(), |s| s.to_string_lossy().into_owned())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli);
    eprintln!("elapsed: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
