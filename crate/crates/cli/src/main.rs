use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand};
use tilesmith_cli::commands::{self, Outcome, SynthEmit};
use tilesmith_cli::ExitCode;
use tilesmith_core::Pos;

#[derive(Parser)]
#[command(name = "tilesmith", version, about = "Tile assembly system toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow a system from its seed and print the result.
    Simulate {
        system: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_cells: usize,
        /// Print every attachment.
        #[arg(long)]
        trace: bool,
    },
    /// Find strengths and a temperature realizing a strength-free system.
    Synth {
        system: PathBuf,
        /// Extra output: `rows` (the inequality system) and/or `relaxation`
        /// (least rational temperature).
        #[arg(long, value_delimiter = ',')]
        emit: Vec<Emit>,
    },
    /// Rewrite a system to temperature at most about 2|T|+2, keeping 1- and
    /// 2-sided binding.
    Compress { system: PathBuf },
    /// Decide whether a system uniquely assembles a shape.
    CheckUnique {
        system: PathBuf,
        shape: PathBuf,
        /// Shape cell holding the seed, as `x,y`.
        #[arg(long, default_value = "0,0", value_parser = parse_pos)]
        seed_at: Pos,
    },
    /// Search for a minimal system uniquely assembling the n×n square.
    MinSquare {
        n: u32,
        #[arg(long, default_value_t = 1)]
        c: u64,
        #[arg(long)]
        k_max_override: Option<usize>,
    },
    /// Print a system whose binding rules force temperature at least 2ⁿ.
    Witness {
        n: usize,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Emit {
    Rows,
    Relaxation,
}

fn parse_pos(s: &str) -> Result<Pos, String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let p = |t: &str| t.trim().parse::<i32>().map_err(|e| e.to_string());
    Ok(Pos::new(p(x)?, p(y)?))
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome {
        stdout: String::new(),
        stderr: format!("{}: {e}\n", path.display()),
        code: ExitCode::Parse,
    })
}

fn system(path: &Path) -> Result<tilesmith_cli::SystemDoc, Outcome> {
    commands::load_system(&path.display().to_string(), &read(path)?)
}

fn run(cli: Cli) -> Result<Outcome, Outcome> {
    Ok(match cli.command {
        Command::Simulate {
            system: p,
            max_cells,
            trace,
        } => commands::cmd_simulate(&system(&p)?, max_cells, trace),
        Command::Synth { system: p, emit } => {
            let emit = SynthEmit {
                rows: emit.iter().any(|e| matches!(e, Emit::Rows)),
                relaxation: emit.iter().any(|e| matches!(e, Emit::Relaxation)),
            };
            commands::cmd_synth(&system(&p)?, emit)
        }
        Command::Compress { system: p } => commands::cmd_compress(&system(&p)?),
        Command::CheckUnique { system: p, shape, seed_at } => {
            let s = commands::load_shape(&shape.display().to_string(), &read(&shape)?)?;
            commands::cmd_check_unique(&system(&p)?, &s, seed_at)
        }
        Command::MinSquare { n, c, k_max_override } => commands::cmd_min_square(n, c, k_max_override),
        Command::Witness { n, verify } => commands::cmd_witness(n, verify),
    })
}

fn main() {
    if let Some(n) = std::env::var("TILESMITH_WORKERS").ok().and_then(|v| v.parse().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let out = run(Cli::parse()).unwrap_or_else(|e| e);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    process::exit(out.code as i32);
}
