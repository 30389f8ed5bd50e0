use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gitstrata_cli as cli;

/// Exact instability stratifications: index sets, strata, HN types and blow-up traces.
#[derive(Parser)]
#[command(name = "gitstrata", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Index set of optimal destabilising directions of a weight system.
    IndexSet {
        #[arg(long)]
        input: PathBuf,
        /// Recompute even if a cached result exists, and do not write one.
        #[arg(long)]
        no_cache: bool,
    },
    /// Stratum, semistability and limit data of a point given by its support.
    Stratify {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated coordinate indices, e.g. "0,1,3".
        #[arg(long)]
        support: String,
    },
    /// Stratum of a configuration of points on P^1.
    P1 {
        #[arg(long)]
        n: usize,
        /// Comma-separated values with "inf", e.g. "inf,inf,inf,0,1".
        #[arg(long)]
        points: String,
        /// Number of points at infinity to test Y/Z and total stability against.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Cocharacter data beta(n, m, tau) of a Harder-Narasimhan type.
    BetaType {
        /// Semicolon-separated polynomials, e.g. "t+2;t+1".
        #[arg(long)]
        tau: String,
        /// Total Hilbert polynomial.
        #[arg(long = "P")]
        total: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// HN filtration of a split bundle on P^1.
    Hn {
        /// Degrees of the line bundle summands, e.g. "2,0,0".
        #[arg(long, allow_hyphen_values = true)]
        splitting: String,
    },
    /// Run the blow-up simulator on a cell graph.
    Blowup {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the weight-system file of SL(2) acting on Sym^n(P^1).
    SymPower {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = match args.command {
        Command::IndexSet { input, no_cache } => {
            let dir = (!no_cache).then(cli::default_cache_dir);
            cli::cmd_index_set(&input, dir.as_deref()).map(|r| r.render())
        }
        Command::Stratify { input, support } => cli::cmd_stratify(&input, &support).map(|r| r.render()),
        Command::P1 { n, points, i } => cli::cmd_p1(n, &points, i).map(|r| r.render()),
        Command::BetaType { tau, total, n, m } => cli::cmd_beta_type(&tau, &total, n, m).map(|r| r.render()),
        Command::Hn { splitting } => cli::cmd_hn(&splitting).map(|r| r.render()),
        Command::Blowup { input } => cli::cmd_blowup(&input).map(|r| r.render()),
        Command::SymPower { n } => Ok(cli::sym_power_file(n)),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
