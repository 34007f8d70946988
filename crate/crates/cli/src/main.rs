use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use boolstab::TruthTable;
use boolstab_cli::{self as cmd, CliError, Format, FunctionSpec, SpectrumOptions};
use clap::{Args, Parser, Subcommand};

/// Exact Fourier analysis and noise stability of Boolean functions.
///
/// Functions are given as maj:<n>, g:<n>, h:<n>, f:<n>:<w>,
/// 'ltf:<w0>;<w1>,...,<wn>' or tt:<file>.
#[derive(Parser)]
#[command(name = "boolstab", version)]
struct Cli {
    /// Suppress progress messages on standard error.
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficients or level weights.
    Spectrum {
        spec: FunctionSpec,
        /// Print W^(k) for every level instead of coefficients.
        #[arg(long)]
        levels: bool,
        /// Print only the cumulative weight W^(<=K).
        #[arg(long, value_name = "K")]
        cumulative: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Decimals instead of exact fractions.
        #[arg(long)]
        float: bool,
    },
    /// Noise stability at one rho or on a grid.
    Stab(StabArgs),
    /// Compare against majority on n variables (JSON report).
    Compare {
        spec: FunctionSpec,
        #[arg(long, default_value_t = 100)]
        grid: usize,
    },
    /// Stability polynomials of all locally monotone 3-variable functions.
    Search3 {
        #[arg(long)]
        json: bool,
    },
    /// Whether g_n is less stable than majority for small rho.
    Counterexample {
        #[arg(long, conflicts_with = "n_max", required_unless_present = "n_max")]
        n: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Level-one weights of g_n against their 2/pi limit.
    Asymptotics {
        #[arg(long, default_value_t = 201)]
        n_max: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Monte Carlo estimate of noise stability.
    Mc {
        spec: FunctionSpec,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the truth table in the format read by tt:<file>.
    Table { spec: FunctionSpec },
}

#[derive(Args)]
struct StabArgs {
    spec: FunctionSpec,
    /// A decimal or p/q in [0, 1].
    #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
    rho: Option<String>,
    /// Tabulate rho = k/N for k = 0..=N.
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// Print the single value as a float.
    #[arg(long)]
    float: bool,
}

/// Tables at or above this size get a progress note.
const LARGE_TABLE: usize = 20;

fn realize(spec: &FunctionSpec, quiet: bool) -> Result<TruthTable, CliError> {
    if !quiet && spec.arity().is_some_and(|n| n >= LARGE_TABLE) {
        eprintln!("building the 2^{} truth table of {spec}", spec.arity().unwrap());
    }
    spec.realize()
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let quiet = cli.quiet;
    match cli.command {
        Command::Spectrum { spec, levels, cumulative, format, float } => {
            let opts = SpectrumOptions { levels, cumulative, format, float };
            cmd::spectrum(&realize(&spec, quiet)?, opts, out)
        }
        Command::Stab(a) => {
            let tt = realize(&a.spec, quiet)?;
            match (a.rho, a.grid) {
                (Some(rho), _) => cmd::stab_at(&tt, &rho, a.float, out),
                (None, Some(grid)) => cmd::stab_grid(&tt, grid, out),
                (None, None) => unreachable!("clap requires one of --rho and --grid"),
            }
        }
        Command::Compare { spec, grid } => cmd::compare_report(&realize(&spec, quiet)?, grid, out),
        Command::Search3 { json } => cmd::search3(json, out),
        Command::Counterexample { n, n_max } => match (n, n_max) {
            (Some(n), _) => cmd::counterexample(n, out),
            (None, Some(m)) => cmd::counterexample_range(m, out),
            (None, None) => unreachable!("clap requires one of --n and --n-max"),
        },
        Command::Asymptotics { n_max, csv } => cmd::asymptotics(n_max, csv, out),
        Command::Mc { spec, rho, samples, seed } => {
            cmd::monte_carlo(&realize(&spec, quiet)?, rho, samples, seed, out)
        }
        Command::Table { spec } => cmd::table(&realize(&spec, quiet)?, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            drop(out);
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
