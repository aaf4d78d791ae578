//! `dirac-hydro`: identities, polar decomposition, Gordon residuals,
//! guidance and trajectories from the command line.
//!
//! Exit codes: 0 all within tolerance, 1 tolerance violation (worst
//! offender on stderr), 2 usage or configuration error.

// `!(x <= tol)` is deliberate: a NaN residual must count as a violation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dirac_hydro::{OutputFormat, VelocityMode};

use commands::{Outcome, TrajectoryArgs};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Table,
    Records,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => OutputFormat::Table,
            FormatArg::Records => OutputFormat::Records,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Kinematic,
    Guidance,
}

#[derive(Parser, Debug)]
#[command(name = "dirac-hydro", version, about = "Hydrodynamic (polar) Dirac field toolkit")]
struct Cli {
    /// Output format; overrides the `format` key of a config file.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clifford, Lorentz and Fierz identities over random draws.
    Identities {
        #[arg(long, default_value_t = 1000)]
        random: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Print the matrix and sign conventions first.
        #[arg(long)]
        conventions: bool,
    },
    /// Polar decomposition of one spinor given as re0,im0,...,re3,im3.
    Polar {
        #[arg(long, allow_hyphen_values = true)]
        spinor: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Bilinear Gordon, polar-group and Dirac residuals at random points.
    Gordon {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Defaults to the config `seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Stencil spacing; defaults to the config `h`.
        #[arg(long)]
        h: Option<f64>,
        /// Points are drawn from [-box, box]^4 (ignored for grids).
        #[arg(long = "box", default_value_t = 1.0)]
        half_width: f64,
    },
    /// Momentum, compact forms and both velocities at one point.
    Guidance {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// RK4 trajectories from a file of seed points (one x0,x1,x2,x3 per line).
    Trajectory {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seeds: PathBuf,
        #[arg(long, value_enum, default_value = "kinematic")]
        mode: ModeArg,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Proper-time step; defaults to the config `h_tau`.
        #[arg(long)]
        htau: Option<f64>,
        /// Sample table destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also evaluate the other velocity mode along each trajectory.
        #[arg(long)]
        compare: bool,
    },
    /// Samples the configured field on a grid file.
    Grid {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        origin: String,
        #[arg(long)]
        spacing: String,
        #[arg(long)]
        dims: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> anyhow::Result<(String, Outcome)> {
    Ok(match cli.command {
        Command::Identities {
            random,
            seed,
            tol,
            conventions,
        } => commands::identities(random, seed, tol, conventions)?,
        Command::Polar { spinor, tol } => (String::new(), commands::polar(&spinor, tol)?),
        Command::Gordon {
            config,
            points,
            seed,
            h,
            half_width,
        } => (String::new(), commands::gordon(&config, points, seed, h, half_width)?),
        Command::Guidance { config, at } => (String::new(), commands::guidance(&config, &at)?),
        Command::Trajectory {
            config,
            seeds,
            mode,
            steps,
            htau,
            out,
            compare,
        } => commands::trajectory(&TrajectoryArgs {
            config,
            seeds,
            mode: match mode {
                ModeArg::Kinematic => VelocityMode::Kinematic,
                ModeArg::Guidance => VelocityMode::Guidance,
            },
            steps,
            h_tau: htau,
            out,
            compare,
        })?,
        Command::Grid {
            config,
            origin,
            spacing,
            dims,
            out,
        } => (String::new(), commands::grid_export(&config, &origin, &spacing, &dims, &out)?),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format_flag = cli.format.map(OutputFormat::from);
    match run(cli) {
        Ok((preface, outcome)) => {
            let format = format_flag.or(outcome.format).unwrap_or(OutputFormat::Table);
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(preface.as_bytes());
            let _ = stdout.write_all(output::render(&outcome.records, format).as_bytes());
            match outcome.violation {
                Some(v) => {
                    eprintln!("tolerance violation: {v}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
