use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use selberg_lab::commands::{self, Lemma1Params, RadialGrid, Spacing, UniquenessParams};
use selberg_lab::config::Registry;
use selberg_lab::output::Outcome;
use selberg_lab::suite;
use selberg_lab::LabError;

const TARGET_HELP: &str = "\
Targets (--target):
  hm[:m=M][:L1=NAME][:L2=NAME][:radius=R]   (L2 - L1 exp(s^m)) / (1 - exp(s^m))
  h1[:radius=R]                             hm with m = 1, L1 = E1, L2 = E3
  hinf[:L1=NAME][:L2=NAME][:height=H]       e^s in place of s^m, valid on |Re s| <= 5
  expr:EXPR[:poles=Z@K;Z@K...][:radius=R]   meromorphic expression with declared poles
  NAME                                      an L-function from the catalog or --config
  EXPR                                      an entire expression such as exp(s^2)
Expressions use s, i, pi, e, + - * / ^, exp(), log() and catalog names
(zeta(s), E1(2*s), or bare E1 meaning E1(s)).

L-functions (--l1, --l2, --config): E1, E2, E3, zeta, chi4, or a TOML file
with fields name, coefficients, pole_order_k, fe, coeff_growth.

Exit codes: 0 pass, 1 a check failed, 2 bad input, 3 numerical failure.";

#[derive(Parser)]
#[command(name = "selberg-lab", version, about = "Value-distribution experiments for L-functions", after_help = TARGET_HELP)]
struct Cli {
    /// Extra L-function definitions (TOML), may be repeated.
    #[arg(long, global = true)]
    config: Vec<PathBuf>,
    /// Write the table here instead of after the record on stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GridArgs {
    #[arg(long = "r-min")]
    r_min: Option<f64>,
    #[arg(long = "r-max")]
    r_max: Option<f64>,
    #[arg(long = "r-steps")]
    r_steps: Option<usize>,
}

impl GridArgs {
    fn grid(&self, default: (f64, f64, usize), spacing: Spacing) -> RadialGrid {
        RadialGrid {
            r_min: self.r_min.unwrap_or(default.0),
            r_max: self.r_max.unwrap_or(default.1),
            steps: self.r_steps.unwrap_or(default.2),
            spacing,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compare the zeros of L1 - h and L2 - h in a box.
    UniquenessCheck {
        #[arg(long, default_value = "E1")]
        l1: String,
        #[arg(long, default_value = "E3")]
        l2: String,
        #[arg(long, default_value = "hm:m=1")]
        target: String,
        /// re_min,re_max,im_min,im_max
        #[arg(long = "box", allow_hyphen_values = true, default_value = "-5,5,-15,15")]
        rect: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run every worked example.
    ExampleSuite,
    /// m, N, T over a radial grid with order and degree fits.
    Growth {
        #[arg(long, default_value = "zeta")]
        target: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Linear instead of geometric spacing.
        #[arg(long)]
        linear: bool,
    },
    /// The left-half-plane asymptotic of log|L| along rays.
    Lemma2 {
        #[arg(long, default_value = "zeta")]
        l1: String,
        /// Comma-separated ray angles.
        #[arg(long, allow_hyphen_values = true, default_value = "2.356194490192345,3.9269908169872414")]
        theta: String,
        #[arg(long, default_value_t = selberg_core::asymptotics::DEFAULT_DELTA)]
        delta: f64,
        #[command(flatten)]
        grid: GridArgs,
        /// Training radii are those up to this value.
        #[arg(long)]
        split: Option<f64>,
    },
    /// Q > 1 and the left-half-plane bound for a degree-zero L-function.
    Prop1 {
        #[arg(long, default_value = "E1")]
        l1: String,
        #[arg(long, default_value = "2,5,10")]
        sigma: String,
        #[arg(long, default_value_t = 20.0)]
        height: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Measure of transcendental directions against the lower bound.
    Lemma1 {
        #[arg(long, default_value = "exp(s)")]
        target: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long = "n-theta", default_value_t = 64)]
        n_theta: usize,
        #[arg(long = "ray-min", default_value_t = 10.0)]
        ray_min: f64,
        #[arg(long = "ray-max", default_value_t = 1e4)]
        ray_max: f64,
    },
    /// First Main Theorem residual T(r, 1/(f-c)) - T(r, f).
    Fmt {
        #[arg(long, default_value = "exp(s)")]
        target: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,2")]
        c: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long = "slope-tol", default_value_t = 0.05)]
        slope_tol: f64,
    },
    /// Second Main Theorem table (report only).
    Smt {
        #[arg(long, default_value = "exp(s)")]
        target: String,
        /// At least three distinct values; "inf" is allowed.
        #[arg(long, allow_hyphen_values = true, default_value = "0,1,inf")]
        values: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// List the available L-functions.
    Catalog,
}

fn run(cli: &Cli) -> Result<Outcome, LabError> {
    let mut reg = Registry::default();
    for p in &cli.config {
        reg.load_file(p)?;
    }
    match &cli.command {
        Command::UniquenessCheck { l1, l2, target, rect, tol } => {
            let l1 = reg.resolve(l1)?;
            let l2 = reg.resolve(l2)?;
            let rect = commands::parse_box(rect)?;
            commands::uniqueness_check(&reg, &UniquenessParams { l1: &l1, l2: &l2, target, rect, tol: *tol })
        }
        Command::ExampleSuite => Ok(suite::example_suite(&reg)),
        Command::Growth { target, grid, linear } => {
            let spacing = if *linear { Spacing::Linear } else { Spacing::Geometric };
            commands::growth(&reg, target, &grid.grid((20.0, 200.0, 16), spacing))
        }
        Command::Lemma2 { l1, theta, delta, grid, split } => {
            let l = reg.resolve(l1)?;
            let thetas = commands::parse_reals(theta)?;
            commands::lemma2(&reg, &l, &thetas, *delta, &grid.grid((50.0, 500.0, 19), Spacing::Linear), *split)
        }
        Command::Prop1 { l1, sigma, height, samples } => {
            let l = reg.resolve(l1)?;
            commands::prop1(&reg, &l, &commands::parse_reals(sigma)?, *height, *samples)
        }
        Command::Lemma1 { target, grid, n_theta, ray_min, ray_max } => {
            let p = Lemma1Params {
                target,
                growth_grid: grid.grid((10.0, 300.0, 16), Spacing::Geometric),
                ray_grid: RadialGrid { r_min: *ray_min, r_max: *ray_max, steps: 16, spacing: Spacing::Geometric },
                n_theta: *n_theta,
            };
            commands::lemma1(&reg, &p)
        }
        Command::Fmt { target, c, grid, slope_tol } => {
            let cs = commands::parse_values(c, &reg)?;
            commands::fmt(&reg, target, &cs, &grid.grid((10.0, 60.0, 11), Spacing::Linear), *slope_tol)
        }
        Command::Smt { target, values, grid } => commands::smt(&reg, target, values, &grid.grid((5.0, 30.0, 6), Spacing::Linear)),
        Command::Catalog => Ok(commands::catalog(&reg)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(outcome) => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            match outcome.emit(&mut out, cli.out.as_deref()) {
                Ok(()) => outcome.exit_code(),
                Err(e) => {
                    let _ = out.flush();
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
