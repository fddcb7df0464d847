use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kyfan_cli::commands;

#[derive(Parser)]
#[command(name = "kyfan", version, about = "Verify nice colorings of triangulated sphere bundles")]
struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the complex, involution and coloring axioms.
    Validate { path: PathBuf },
    /// Histogram of simplices by dimension and alternating number.
    AltStats {
        path: PathBuf,
        /// Count each antipodal pair once.
        #[arg(long)]
        paired: bool,
    },
    /// Parity of alternating n-simplices on a colored n-sphere.
    KyfanCheck {
        path: PathBuf,
        /// Sphere dimension; defaults to the dimension of the complex.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Build the zero-set complex Z_i and check its dimension and count bounds.
    Zset {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Draw random evaluation points for the flag from this seed.
        #[arg(long)]
        xseed: Option<u64>,
    },
    /// Stiefel-Whitney classes, the W table and powers of t.
    Sw {
        /// `rp:m` or `cp:m`.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        space: Option<String>,
        /// TOML file with `ring`, `w`, `rank` and optional `k`.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Highest power of t to reduce; defaults to n + k + 1.
        #[arg(long)]
        powers: Option<u32>,
    },
    /// Write a fixture complex.
    Generate {
        /// `crosspoly:n`, `trivial:<base>,n`, `klein:m` or `hopf`.
        #[arg(long)]
        kind: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Search for a nice coloring with this seed (klein only).
        #[arg(long)]
        search_seed: Option<u64>,
        /// Number of colors for the search.
        #[arg(long, default_value_t = 3)]
        colors: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { path } => commands::validate_cmd(path),
        Command::AltStats { path, paired } => commands::alt_stats(path, *paired),
        Command::KyfanCheck { path, n } => commands::kyfan_check(path, *n),
        Command::Zset { path, i, xseed } => commands::zset(path, *i, *xseed),
        Command::Sw { space, file, powers } => commands::sw(space.as_deref(), file.as_deref(), *powers),
        Command::Generate { kind, output, search_seed, colors } => {
            commands::generate(kind, output, *search_seed, *colors)
        }
    };
    match result {
        Ok(report) => {
            let text = if cli.json { report.render_json() } else { report.render_text() };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(report.exit_code())
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
