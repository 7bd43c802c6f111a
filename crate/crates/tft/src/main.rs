use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use tft::cli::{cmd_invtft, cmd_mul, cmd_schedule, cmd_sweep, cmd_tft, ScheduleMode};
use tft::PrimeField;

#[derive(Parser)]
#[command(
    name = "tft",
    about = "Truncated Fourier transforms over prime fields, with operation counting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Forward truncated transform of a coefficient file.
    Tft {
        /// Coefficient file (modulus line, optional n line, residues).
        #[arg(long)]
        input: PathBuf,
        /// Where to write the transformed values.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Number of outputs to compute; defaults to the input length.
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Inverse truncated transform; the input tail past ell must be zero.
    Invtft {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Multiply two polynomials given as coefficient files.
    Mul {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Cross-check the product against the quadratic method.
        #[arg(long)]
        verify: bool,
    },
    /// Round-trip and cost-bound verification over every ell in 1..=n.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = PrimeField::DEFAULT_MODULUS)]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Corrupt one row to exercise the failure reporting.
        #[arg(long)]
        inject_failure: bool,
    },
    /// Draw the executed-butterfly grid for a transform size.
    Schedule {
        #[arg(long)]
        n: usize,
        /// Output count for tft mode; defaults to n.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, value_enum, default_value_t = ScheduleMode::Dft)]
        mode: ScheduleMode,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Usage problems are contract violations (exit 1); help and
            // version output are not errors.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Tft { input, output, ell } => cmd_tft(&input, output.as_deref(), ell),
        Command::Invtft { input, output, ell } => cmd_invtft(&input, output.as_deref(), ell),
        Command::Mul {
            lhs,
            rhs,
            output,
            verify,
        } => cmd_mul(&lhs, &rhs, output.as_deref(), verify),
        Command::Sweep {
            n,
            modulus,
            seed,
            inject_failure,
        } => cmd_sweep(n, modulus, seed, inject_failure),
        Command::Schedule { n, ell, mode } => cmd_schedule(n, ell, mode),
    };
    match result {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
