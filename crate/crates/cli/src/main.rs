use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

mod commands;

use commands::{Command, Overrides};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LinkSource {
    /// Explicit links from the project, else Coxeter nerves of the gluing.
    Auto,
    /// Links of the local developments, every edge of length pi/2.
    Development,
}

/// Combinatorics of reflection-group gluings.
#[derive(Debug, Parser)]
#[command(name = "gluing", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Project file (JSON).
    project: PathBuf,
    /// Directory for artifacts; created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Word-length radius for enumerations.
    #[arg(long)]
    radius: Option<usize>,
    /// Cap on enumerated group elements.
    #[arg(long)]
    max_elements: Option<usize>,
    /// Radius of the Davis complex ball for `sigma`.
    #[arg(long)]
    sigma_radius: Option<usize>,
    /// Maximum Tietze eliminations.
    #[arg(long)]
    tietze_budget: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    links: LinkSource,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let overrides = Overrides {
        radius: cli.radius,
        max_elements: cli.max_elements,
        sigma_radius: cli.sigma_radius,
        tietze_budget: cli.tietze_budget,
        links: cli.links,
    };
    match commands::execute(cli.command, &cli.project, &cli.out, &overrides) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
