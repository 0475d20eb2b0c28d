use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "pjacobi", version, about = "Kernel limits and Painlevé checks for the perturbed Jacobi ensemble")]
pub struct Cli {
    /// Output directory (default: $PJACOBI_OUT_DIR, else the current directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Fail with exit code 4 when the reported metric exceeds this tolerance.
    #[arg(long = "assert", global = true, value_name = "TOL")]
    pub assert_tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub beta: f64,
    /// Singularity location t ≥ 1.
    #[arg(long)]
    pub t: Option<f64>,
    /// Double-scaling variable; sets t = cosh(s/(4n)).
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, default_value_t = 120)]
    pub n: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct TrajectoryArgs {
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = -0.25, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub s0: f64,
    #[arg(long, default_value_t = 10.0)]
    pub s1: f64,
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub b0: f64,
    #[arg(long, default_value_t = 1.2, allow_negative_numbers = true)]
    pub y0: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recurrence coefficients a_k, b_k² and leading coefficients γ_k.
    Recurrence {
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// (1/n) K_n(x, x) against the arcsine density on [lo, hi].
    Density {
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Bulk scaling at x0 against the sine kernel on a square (u, v) grid.
    Sine {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x0: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Hard-edge scaling against the Bessel kernel.
    Edge {
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Ψ-kernel proxy at n against the proxy at 2n.
    DoubleScaling {
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Bessel-scaled proxy against J_β and J_{α+β} for several s.
    Transition {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 120)]
        n: usize,
        /// Comma-separated ascending s values.
        #[arg(long, value_delimiter = ',', default_value = "0.1,1,3,10,30")]
        s: Vec<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Integrate the Schlesinger system and export the trajectory.
    PainleveIntegrate {
        #[command(flatten)]
        traj: TrajectoryArgs,
    },
    /// Residuals of the scalar equations along a trajectory.
    PainleveResiduals {
        #[command(flatten)]
        traj: TrajectoryArgs,
        /// Evaluation points per integration step.
        #[arg(long, default_value_t = 4)]
        refine: usize,
    },
    /// Bäcklund transformation γ → −γ ± 1 along a trajectory.
    Backlund {
        #[command(flatten)]
        traj: TrajectoryArgs,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[arg(long, default_value_t = 4)]
        refine: usize,
    },
    /// Stokes multiplier, connection matrices and the cyclic relation.
    Monodromy {
        #[arg(long, default_value_t = -0.3, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Self-consistency checks of the special functions.
    SpecfunCheck,
    /// Draw configurations of the determinantal process.
    Sample {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Recurrence { .. } => "recurrence",
            Command::Density { .. } => "density",
            Command::Sine { .. } => "sine",
            Command::Edge { .. } => "edge",
            Command::DoubleScaling { .. } => "double-scaling",
            Command::Transition { .. } => "transition",
            Command::PainleveIntegrate { .. } => "painleve-integrate",
            Command::PainleveResiduals { .. } => "painleve-residuals",
            Command::Backlund { .. } => "backlund",
            Command::Monodromy { .. } => "monodromy",
            Command::SpecfunCheck => "specfun-check",
            Command::Sample { .. } => "sample",
        }
    }
}
