mod commands;
mod emit;

use clap::{Args, Parser, Subcommand};
use emit::Format;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "p4hermite",
    version,
    about = "Rational Painleve-IV solutions from generalized Hermite polynomials: \
             zero clouds, elliptic-region boundaries, phase charts, asymptotic \
             comparisons, and the exact verification suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Working precision in significand bits
    #[arg(long, default_value_t = 192, value_parser = clap::value_parser!(u32).range(64..=4096))]
    precision_bits: u32,
}

#[derive(Subcommand)]
enum Command {
    /// All zeros of a scaled generalized Hermite polynomial
    Zeros {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Scaling variable: roots of H_{m,n} divided by sqrt(m) or sqrt(n)
        #[arg(long, default_value = "m")]
        scale: String,
        /// Seed for the deterministic initial-guess perturbation
        #[arg(long, default_value_t = p4hermite::rootfinder::DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Trace the boundary of the elliptic region for one r
    Boundary {
        #[arg(long)]
        r: f64,
        /// Rays per quadrant
        #[arg(long, default_value_t = 180, value_parser = clap::value_parser!(u32).range(4..))]
        samples: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Compare exact scaled solutions against the genus-zero formulas on a
    /// real-axis range
    Compare {
        /// Solution family: I, II, or III
        #[arg(long)]
        family: String,
        #[arg(long)]
        r: f64,
        /// Index pair m,n (repeatable)
        #[arg(long = "mn", value_name = "M,N", required = true)]
        mn: Vec<String>,
        /// Sample window; the first two components are the real x range
        #[arg(long, default_value = "1.1,3,0,0")]
        window: String,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(4..))]
        samples: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Signature chart of the phase function over a z-plane window
    Phase {
        /// Evaluation point x as re,im
        #[arg(long, value_name = "RE,IM")]
        x: String,
        #[arg(long)]
        r: f64,
        /// z-plane window x0,x1,y0,y1
        #[arg(long, default_value = "-2.5,2.5,-2.5,2.5")]
        window: String,
        /// Grid resolution per side
        #[arg(long, default_value_t = 121, value_parser = clap::value_parser!(u32).range(4..=4096))]
        grid: u32,
        /// Also trace and append the band-level line
        #[arg(long)]
        with_sigma: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Trace the level line of the phase joining the band endpoints
    Sigma {
        /// Evaluation point x as re,im
        #[arg(long, value_name = "RE,IM")]
        x: String,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 4000)]
        max_steps: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the exact identity suites and emit a pass/fail report
    Verify {
        /// Largest m and n checked
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=12))]
        max_mn: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Zeros { m, n, scale, seed, output } => {
            commands::zeros(m, n, &scale, seed, &output)
        }
        Command::Boundary { r, samples, output } => commands::boundary(r, samples, &output),
        Command::Compare { family, r, mn, window, samples, output } => {
            commands::compare(&family, r, &mn, &window, samples, &output)
        }
        Command::Phase { x, r, window, grid, with_sigma, output } => {
            commands::phase(&x, r, &window, grid, with_sigma, &output)
        }
        Command::Sigma { x, r, max_steps, output } => commands::sigma(&x, r, max_steps, &output),
        Command::Verify { max_mn, output } => commands::verify(max_mn, &output),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            if err.is::<commands::BadArguments>() {
                eprintln!("error: {err}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {err:#}");
                ExitCode::from(1)
            }
        }
    }
}
