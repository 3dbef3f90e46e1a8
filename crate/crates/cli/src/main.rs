//! `projpair`: construct, verify and enumerate dual pairs in PGL(n, ℂ).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use projpair::abelian::FinAbGroup;

#[derive(Parser, Debug)]
#[command(name = "projpair", version, about = "Dual pairs in PGL(n, C) with exact arithmetic")]
struct Cli {
    /// Largest cyclotomic conductor allowed in arithmetic.
    #[arg(long, global = true, env = "PROJPAIR_CONDUCTOR_CAP")]
    conductor_cap: Option<u32>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a dual pair from single-orbit ingredients or a gluing spec.
    Construct(ConstructArgs),
    /// Check that a pair file is a dual pair.
    Verify {
        file: PathBuf,
    },
    /// List classification rows for an ambient dimension.
    Enumerate(EnumerateArgs),
    /// Print the component pairing table of a pair file.
    Pairing {
        file: PathBuf,
    },
    /// Hyperbolic decomposition of an alternating pairing.
    Symplectic {
        file: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_parser = positive, conflicts_with = "glue")]
    pub b: Option<usize>,
    #[arg(long, value_parser = positive, conflicts_with = "glue")]
    pub e: Option<usize>,
    /// Invariant factors such as "2,4"; "1" is the trivial group.
    #[arg(long = "L", conflicts_with = "glue")]
    pub l: Option<FinAbGroup>,
    #[arg(long = "J", conflicts_with = "glue")]
    pub j: Option<FinAbGroup>,
    #[arg(long = "K", conflicts_with = "glue")]
    pub k: Option<FinAbGroup>,
    /// Multi-orbit gluing spec (JSON).
    #[arg(long)]
    pub glue: Option<PathBuf>,
    /// Write the pair here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long, value_parser = positive)]
    pub n: usize,
    /// Largest number of orbits in glued rows (defaults to n).
    #[arg(long, value_parser = positive)]
    pub max_parts: Option<usize>,
    /// Construct and verify every row.
    #[arg(long)]
    pub check: bool,
    /// Refuse to produce more rows than this.
    #[arg(long, default_value_t = projpair::classify::DEFAULT_ROW_CAP)]
    pub max_rows: usize,
    /// Canonicalize rows and drop duplicates of the (G, H) swap.
    #[arg(long)]
    pub normalize_orientation: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.conductor_cap {
        projpair::cyclo::set_conductor_cap(cap);
    }
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Construct(args) => commands::construct(args, cli.format),
        Command::Verify { file } => commands::verify(file, cli.format),
        Command::Enumerate(args) => commands::enumerate(args, cli.format),
        Command::Pairing { file } => commands::pairing(file, cli.format),
        Command::Symplectic { file } => commands::symplectic(file, cli.format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
