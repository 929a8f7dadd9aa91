use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use leja_energy::cli::{
    conjecture_rows, run_constants, run_oracle, run_verify, sweep_rows, write_conjecture_csv, write_oracle_csv,
    write_sweep_csv, SequenceFamily, GREEDY_TOL,
};
use leja_energy::Error;

#[derive(Parser)]
#[command(name = "leja-energy", version, about = "Energies of greedy (Leja) sequences on the unit circle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural and energy invariants up to --max-n.
    Verify {
        #[arg(long, default_value_t = 2048)]
        max_n: u64,
        /// Comma-separated exponents.
        #[arg(long = "s", value_delimiter = ',', default_values_t = [0.0, 0.5, 1.0, 2.0])]
        s: Vec<f64>,
        /// Number of randomized sections checked next to the canonical one.
        #[arg(long, visible_alias = "seed", default_value_t = 3)]
        seeds: u64,
    },
    /// Write N, tau(N), E_s and the normalized statistic for 2 <= N <= max-n as CSV.
    Sweep {
        #[arg(long = "s")]
        s: f64,
        #[arg(long)]
        max_n: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report limit targets and extremal estimates of the block functionals.
    Constants {
        #[arg(long = "s")]
        s: f64,
        #[arg(long, default_value_t = 12)]
        p_max: usize,
        #[arg(long, default_value_t = 24)]
        t_max: u32,
    },
    /// Normalized energies of a point family with their running maximum, as CSV.
    Conjecture {
        /// greedy, vdc, random or custom-file.
        #[arg(long, default_value = "greedy")]
        family: String,
        /// Angle file for the custom-file family, in half-turns, one per line.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long = "s")]
        s: f64,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grow a greedy sequence numerically and compare with the bit-reversal structure.
    Oracle {
        /// Number of greedy steps.
        #[arg(long = "max-n", visible_alias = "n")]
        n: usize,
        #[arg(long = "s", default_value_t = 0.0)]
        s: f64,
        #[arg(long, default_value_t = 16384)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Verify { max_n, s, seeds } => {
            let report = run_verify(max_n, &s, seeds)?;
            writeln!(io::stdout().lock(), "{report}").map_err(io_failure)?;
            if !report.passed() {
                return Err(Failure::Invariant("verification failed".into()));
            }
        }
        Command::Sweep { s, max_n, out } => {
            let mut w = open_out(out.as_deref())?;
            let rows = sweep_rows(s, max_n)?;
            write_sweep_csv(&rows, &mut w).map_err(io_failure)?;
        }
        Command::Constants { s, p_max, t_max } => {
            let report = run_constants(s, p_max, t_max)?;
            write!(io::stdout().lock(), "{report}").map_err(io_failure)?;
        }
        Command::Conjecture { family, input, s, max_n, seed, out } => {
            let family = SequenceFamily::parse(&family, input.as_deref())?;
            let mut w = open_out(out.as_deref())?;
            let points = family.points(max_n, seed)?;
            let rows = conjecture_rows(&points, s)?;
            write_conjecture_csv(&rows, &mut w).map_err(io_failure)?;
            if let Some(last) = rows.last() {
                eprintln!("{}: running max at N = {} is {:.16e}", family.name(), last.n_value, last.running_max);
            }
        }
        Command::Oracle { n, s, grid, out } => {
            let mut w = open_out(out.as_deref())?;
            let steps = run_oracle(n, s, grid)?;
            write_oracle_csv(&steps, &mut w).map_err(io_failure)?;
            let worst = steps.iter().map(|st| st.rel_deviation).fold(0.0, f64::max);
            eprintln!("max relative deviation {worst:.3e} over {n} steps");
            if worst > GREEDY_TOL {
                return Err(Failure::Invariant(format!("deviation {worst:.3e} exceeds {GREEDY_TOL:.0e}")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
