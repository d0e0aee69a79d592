use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Exact Riemann solver for the Chaplygin-pressure Aw-Rascle model with
/// Coulomb-like friction: closed-form solutions plus four independent
/// verifiers.
#[derive(Debug, Parser)]
#[command(name = "riemann-awr", version, disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Riemann data and run options shared by every subcommand.  Flags
/// override values from `--config`; the `RIEMANN_AWR_OUT_DIR`
/// environment variable provides the default output root.
#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// Left density rho_l > 0.
    #[arg(long = "rho-l", global = true)]
    pub rho_l: Option<f64>,
    /// Left velocity u_l.
    #[arg(long = "u-l", global = true, allow_negative_numbers = true)]
    pub u_l: Option<f64>,
    /// Right density rho_r > 0.
    #[arg(long = "rho-r", global = true)]
    pub rho_r: Option<f64>,
    /// Right velocity u_r.
    #[arg(long = "u-r", global = true, allow_negative_numbers = true)]
    pub u_r: Option<f64>,
    /// Chaplygin pressure coefficient A >= 0 (A = 0 is the transport limit).
    #[arg(long = "A", global = true)]
    pub a: Option<f64>,
    /// Friction constant beta.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Config file (JSON object or key=value lines); flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (default: $RIEMANN_AWR_OUT_DIR, then ".").
    #[arg(long = "out-dir", global = true)]
    pub out_dir: Option<PathBuf>,
    /// RNG seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// End time (grh, fv, sample horizons).
    #[arg(long = "t-end", global = true, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    /// Finite-volume cell count.
    #[arg(long, global = true)]
    pub cells: Option<usize>,
    /// Finite-volume CFL number in (0, 0.9].
    #[arg(long, global = true)]
    pub cfl: Option<f64>,
    /// Gauss-Legendre points per axis for weak residuals.
    #[arg(long = "quad-level", global = true)]
    pub quad_level: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the Riemann problem and write the solution summary.
    Solve {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sample the solution on a space-time grid and export plot data.
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated sample times, all positive.
        #[arg(long = "t-list", default_value = "0.5,1.0")]
        t_list: String,
        /// Left edge of the sampling grid (default: from the wave paths).
        #[arg(long = "x-min", allow_negative_numbers = true)]
        x_min: Option<f64>,
        /// Right edge of the sampling grid.
        #[arg(long = "x-max", allow_negative_numbers = true)]
        x_max: Option<f64>,
        /// Number of sample points per time.
        #[arg(long, default_value_t = 201)]
        nx: usize,
    },
    /// Evaluate weak-form residuals against randomized test functions.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of test functions.
        #[arg(long = "n-psi", default_value_t = 10)]
        n_psi: usize,
        /// Normalized-residual pass threshold.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Integrate the generalized Rankine-Hugoniot ODE system and compare
    /// with the closed forms.
    Grh {
        #[command(flatten)]
        common: CommonArgs,
        /// Integration step.
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Relative-deviation pass threshold.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Sweep the pressure coefficient down to the delta-formation
    /// threshold A0 (requires u_r < u_l).
    #[command(name = "sweep-a0")]
    SweepA0 {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of geometric sweep steps.
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Sweep the pressure coefficient down to zero: delta convergence
    /// for u_r < u_l, vacuum formation otherwise.
    #[command(name = "sweep-zero")]
    SweepZero {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of geometric sweep steps.
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Run the finite-volume reference scheme and compare wave positions
    /// and delta concentration against the exact solution.
    Fv {
        #[command(flatten)]
        common: CommonArgs,
        /// Left domain edge.
        #[arg(long = "x-min", default_value_t = -2.0, allow_negative_numbers = true)]
        x_min: f64,
        /// Right domain edge.
        #[arg(long = "x-max", default_value_t = 4.0, allow_negative_numbers = true)]
        x_max: f64,
        /// Comma-separated snapshot times (default: t_end/2 and t_end).
        #[arg(long = "snap-times")]
        snap_times: Option<String>,
        /// Concentration window half-width in cells.
        #[arg(long, default_value_t = 10)]
        window: usize,
    },
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Solve { common }
            | Command::Sample { common, .. }
            | Command::Verify { common, .. }
            | Command::Grh { common, .. }
            | Command::SweepA0 { common, .. }
            | Command::SweepZero { common, .. }
            | Command::Fv { common, .. } => common,
        }
    }
}
