use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;

use commands::Artifact;

/// Environment variable overriding the ball enumeration budget.
pub const BUDGET_ENV: &str = "LENGTHLAB_BALL_CAP";

#[derive(Parser)]
#[command(name = "lengthlab", version, about = "Length functions on groups: tables, Cayley graphs, witness searches")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Seed for every randomized choice.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Also write the artifact into this directory.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Length table of a weight function or a word length on a ball.
    Length(commands::LengthArgs),
    /// Cayley graph of a word length on a ball.
    Cayley(commands::CayleyArgs),
    /// Search a graph for a vertex at prescribed distances from a tuple.
    Ep(commands::EpArgs),
    /// Bounded approximant of the universal graph.
    Moss(commands::MossArgs),
    /// Search for an element on which no word of I evaluates to 1.
    Mif(commands::MifArgs),
    /// Density witness for a window and a distance constraint.
    #[command(name = "lemD")]
    LemD(commands::LemdArgs),
    /// Transitivity witness for two windows.
    Tt(commands::TtArgs),
    /// Compare two length tables up to a factor.
    Compare(commands::CompareArgs),
    /// Exhaustive checks of the two counterexample groups.
    Examples(commands::ExamplesArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        seed: cli.seed,
        ball_cap: match input::ball_cap() {
            Ok(c) => c,
            Err(e) => return config_error(&e),
        },
    };
    let result = match &cli.command {
        Command::Length(a) => commands::length(&ctx, a),
        Command::Cayley(a) => commands::cayley(&ctx, a),
        Command::Ep(a) => commands::ep(&ctx, a),
        Command::Moss(a) => commands::moss(&ctx, a),
        Command::Mif(a) => commands::mif(&ctx, a),
        Command::LemD(a) => commands::lemd(&ctx, a),
        Command::Tt(a) => commands::tt(&ctx, a),
        Command::Compare(a) => commands::compare(&ctx, a),
        Command::Examples(a) => commands::examples(&ctx, a),
    };
    match result.and_then(|art| emit(&cli, art)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => config_error(&e),
    }
}

fn config_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(cli: &Cli, art: Artifact) -> Result<bool, String> {
    let (body, ext) = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&art.json).map_err(|e| e.to_string())?;
            s.push('\n');
            (s, "json")
        }
        Format::Text => (art.text, "txt"),
        Format::Dot => (
            art.dot.ok_or_else(|| format!("{} has no dot rendering", art.name))?,
            "dot",
        ),
    };
    if let Some(dir) = &cli.out_dir {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        let path = dir.join(format!("{}.{ext}", art.name));
        fs::write(&path, &body).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    print!("{body}");
    Ok(art.success)
}
