use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Liouville-type analysis of -Δu = f(u) and two-component systems.
///
/// Every command prints a JSON report (keys sorted, floats with 17
/// significant digits). Numeric options accept constant expressions such as
/// `pS(3)`, `theta(2)` or `2/3`, evaluated with the `--param` bindings.
#[derive(Debug, Parser)]
#[command(name = "ellab", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Write CSV tables and profiles into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub csv: Option<PathBuf>,
    /// Worker threads for sweeps over independent items.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Record wall-clock time in `duration_ms` (0 otherwise, keeping output byte-stable).
    #[arg(long, global = true)]
    pub timing: bool,
}

/// Nonlinearity given as text, as a preset, or as a system template.
#[derive(Debug, Args, Clone, Default)]
pub struct NonlinArgs {
    /// Scalar nonlinearity f(u).
    #[arg(long, value_name = "EXPR")]
    pub f: Option<String>,
    /// Named family (see `ellab analyze --list-presets`).
    #[arg(long, value_name = "NAME")]
    pub preset: Option<String>,
    /// Potential F(u, v) of a gradient system f = ∇F.
    #[arg(long, value_name = "EXPR")]
    pub potential: Option<String>,
    /// First component f1(u, v) of a two-component system.
    #[arg(long, value_name = "EXPR", requires = "f2")]
    pub f1: Option<String>,
    /// Second component f2(u, v).
    #[arg(long, value_name = "EXPR", requires = "f1")]
    pub f2: Option<String>,
    /// Structure of an `--f1/--f2` pair: `lane-emden` needs f1 = f1(v), f2 = f2(u).
    #[arg(long, value_enum, default_value_t = PairKind::Auto)]
    pub pair: PairKind,
    /// Bind a parameter: `--param p=3 --param K="theta(2)"`. Repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Diffusion coefficients d1[,d2] for systems.
    #[arg(long, value_name = "LIST")]
    pub diffusion: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum PairKind {
    #[default]
    Auto,
    LaneEmden,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Whole,
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EndArg {
    Zero,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    /// Pure power below the Sobolev exponent.
    #[value(name = "A")]
    A,
    /// s^(-pS) f(s) nonincreasing and nonconstant.
    #[value(name = "B")]
    B,
    /// Growth window and the φ-ratio condition.
    #[value(name = "GS")]
    Gs,
    /// Integral-estimate conditions with free parameters (q, k, m1, m2, γ1, γ2).
    #[value(name = "GS-general")]
    GsGeneral,
    /// Growth and Pohozaev-sign conditions (scalar or gradient system).
    #[value(name = "thm1")]
    Thm1,
    /// Parameter window of the log-modified gradient family.
    #[value(name = "cor0")]
    Cor0,
    /// Proportional-components structure.
    #[value(name = "proportional")]
    Proportional,
    /// Position of (p, q) relative to the Lane-Emden hyperbola.
    #[value(name = "lane-emden-region")]
    LaneEmdenRegion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    /// (1 + λr²)^(-1/(p-1)) for the benchmark at K = K0.
    Benchmark,
    /// Critical bubble (1 + r²/(n(n-2)))^(-(n-2)/2).
    Bubble,
    /// Explicit solutions u_k of -Δu = u^p_k + u^(2p_k - 1).
    Uk,
    /// The zero solution.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GuessArg {
    Zero,
    Constant,
    Bump,
    /// Shooting solution whose first zero is the ball radius (scalar only).
    Shooting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundModeArg {
    Auto,
    Scalar,
    System,
    LaneEmden,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical exponents pS, p*, p** and n/(n-2) in dimension n.
    Exponents {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = GeometryArg::Whole)]
        geometry: GeometryArg,
    },
    /// Regular-variation profile: indices, slowly varying factors and
    /// rescaling limits f0, f∞ (plus the h-calculus for Lane-Emden pairs).
    Analyze {
        #[command(flatten)]
        nonlin: NonlinArgs,
        /// Print the preset catalogue and exit.
        #[arg(long)]
        list_presets: bool,
        /// Evaluate the boundary maximum f⁺(λ) of a system at these λ.
        #[arg(long, value_name = "LIST")]
        f_plus: Option<String>,
    },
    /// Hypothesis checkers of the Liouville-type nonexistence results.
    Check(CheckArgs),
    /// Thresholds K0 < K3 < K2 < K1 of the benchmark (K + min(1, u^(p-1))) u^p.
    Benchmark {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: String,
    },
    /// The bijection θ (inverse of s ↦ e^(s-1)/s) and the minimum of
    /// φ_K(s) = (1 + K/s) log(K + s).
    Theta {
        /// Values of K ≥ 1.
        #[arg(long = "K", value_name = "LIST", default_value = "1,2,5,10")]
        k: String,
    },
    /// Radial shooting u(0) = s0, u'(0) = 0 with first-zero / positive /
    /// blow-up classification.
    Shoot {
        #[command(flatten)]
        nonlin: NonlinArgs,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s0: String,
        /// Integration horizon.
        #[arg(long, default_value = "1000")]
        rmax: String,
        /// Local error budget of the integrator.
        #[arg(long, default_value = "1e-12")]
        tol: String,
        /// Blow-up is declared once u exceeds this multiple of s0.
        #[arg(long, default_value = "1e8")]
        blowup: String,
        /// Continue past the first zero with f extended by 0.
        #[arg(long)]
        past_zero: bool,
    },
    /// Residual of explicit radial solutions in the radial ODE.
    Verify {
        #[arg(long, value_enum)]
        form: FormArg,
        #[arg(long)]
        n: u32,
        /// Exponent of the benchmark.
        #[arg(long)]
        p: Option<String>,
        /// Index of the u_k family.
        #[arg(long)]
        k: Option<u32>,
        /// Nonlinearity for `--form zero`.
        #[command(flatten)]
        nonlin: NonlinArgs,
        #[arg(long, default_value = "0")]
        rmin: String,
        #[arg(long, default_value = "50")]
        rmax: String,
        #[arg(long, default_value_t = 5001)]
        points: usize,
        /// Acceptance threshold for the residual.
        #[arg(long, default_value = "1e-8")]
        tol: String,
    },
    /// Pohozaev function ψ(s) = s f(s) - (pS + 1) F(s) and the
    /// Rellich-Pohozaev identity on a shooting solution.
    Pohozaev {
        #[command(flatten)]
        nonlin: NonlinArgs,
        #[arg(long)]
        n: u32,
        /// Centre value of the shooting solution used for the identity.
        #[arg(long)]
        s0: Option<String>,
        /// Ball radius for the identity (default: the first zero).
        #[arg(long)]
        radius: Option<String>,
        /// Integrator tolerance of the shooting solution.
        #[arg(long, default_value = "1e-8")]
        tol: String,
        /// Acceptance threshold for the relative identity residual.
        #[arg(long, default_value = "1e-6")]
        residual_tol: String,
    },
    /// Finite-difference Newton solve of the Dirichlet problem on a ball.
    SolveBall {
        #[command(flatten)]
        nonlin: NonlinArgs,
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        radius: String,
        /// Boundary values b1[,b2].
        #[arg(long, default_value = "0")]
        boundary: String,
    },
    /// Universal-estimate quantities f(u) d²/u (or their system analogues)
    /// on ground states of several balls.
    Bound {
        #[command(flatten)]
        nonlin: NonlinArgs,
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long, default_value = "1,2,4,8")]
        radii: String,
        #[arg(long, value_enum, default_value_t = BoundModeArg::Auto)]
        mode: BoundModeArg,
        /// Region |U| ≥ Λ in system mode.
        #[arg(long, default_value = "1")]
        threshold: String,
    },
    /// Centre values of small solutions with boundary value b as the ball
    /// grows (empirical proxy for the decay of η(R)).
    Decay {
        #[command(flatten)]
        nonlin: NonlinArgs,
        #[arg(long)]
        n: u32,
        /// Cap Λ on the sup norm of admissible solutions.
        #[arg(long)]
        cap: String,
        #[arg(long, default_value = "0")]
        b: String,
        #[arg(long, default_value = "0.5,1,2,4,8")]
        radii: String,
        #[arg(long, default_value_t = 256)]
        intervals: usize,
    },
    /// Unbounded semitrivial solutions (w, 0) of proportional systems with
    /// k = s^p, g = s^q, p + q ≤ 1.
    Counterexample {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, value_enum, default_value_t = GeometryArg::Whole)]
        geometry: GeometryArg,
    },
    /// Rescaling constructions: uniform convergence to f0/f∞, the discrete
    /// doubling lemma, and the critical limit of u_k.
    #[command(subcommand)]
    Rescale(RescaleCommand),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    #[command(flatten)]
    pub nonlin: NonlinArgs,
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = GeometryArg::Whole)]
    pub geometry: GeometryArg,
    /// Exponents p ≥ q (thm1 on systems, lane-emden-region).
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    /// Box [0, M]² sampled by the system checks.
    #[arg(long = "M", default_value = "10")]
    pub m_box: String,
    /// ε of the proportional check.
    #[arg(long, default_value = "0")]
    pub eps: String,
    /// Fixed GS-general parameters; all four must be given, otherwise they are searched.
    #[arg(long)]
    pub gs_q: Option<String>,
    #[arg(long)]
    pub gs_k: Option<String>,
    #[arg(long, value_name = "M1,M2")]
    pub gs_m: Option<String>,
    #[arg(long, value_name = "G1,G2")]
    pub gs_gamma: Option<String>,
    /// cor0: base exponent, shift K ≥ 1, sign σ, log exponent a, coupling λ.
    #[arg(long)]
    pub p0: Option<String>,
    #[arg(long = "K")]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<i8>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct BallArgs {
    #[arg(long)]
    pub n: u32,
    /// Mesh intervals on [0, R].
    #[arg(long, default_value_t = 256)]
    pub intervals: usize,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
    /// Newton starting iterate (default: shooting for scalar, bump for systems).
    #[arg(long, value_enum)]
    pub guess: Option<GuessArg>,
    /// Value of a constant guess.
    #[arg(long, default_value = "1")]
    pub guess_value: String,
    /// Amplitude of a bump guess.
    #[arg(long, default_value = "10")]
    pub amplitude: String,
    /// Width of a bump guess (default: the radius).
    #[arg(long)]
    pub width: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum RescaleCommand {
    /// sup over [0, S] of |f(λs)/f(λ) - s^p| (max norm against the limit for systems).
    Convergence {
        #[command(flatten)]
        nonlin: NonlinArgs,
        #[arg(long, value_enum, default_value_t = EndArg::Infinity)]
        end: EndArg,
        #[arg(long, default_value = "1e3,1e6,1e9,1e12")]
        lambdas: String,
        #[arg(long, default_value = "2")]
        s_max: String,
        /// Index of the limit (default: detected).
        #[arg(long)]
        index: Option<String>,
    },
    /// Discrete doubling lemma on a single-peak field over the unit disk.
    Doubling {
        #[arg(long, default_value_t = 81)]
        per_axis: usize,
        #[arg(long, default_value = "400")]
        amplitude: String,
        #[arg(long, default_value = "0.05")]
        width: String,
        #[arg(long, default_value = "0.2,-0.1", allow_hyphen_values = true)]
        centre: String,
        #[arg(long, default_value = "2")]
        k: String,
    },
    /// Rescaled u_k against the critical equation -Δv = v^pS.
    Critical {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value = "10,30,100,300")]
        ks: String,
    },
}
