use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "mahlercf",
    version,
    about = "Exact continued fractions of g(x) = x^-1 prod P(x^(-d^t))"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand g into a continued fraction
    Expand(ExpandArgs),
    /// Classify by the coefficient recurrence (d = 2 or 3)
    Classify(ClassifyArgs),
    /// Hankel determinants, direct and from the continued fraction
    Hankel(HankelArgs),
    /// Irrationality-exponent bounds for g(b)
    Bound(BoundArgs),
    /// Enclose g(b) in a rational interval
    Eval(EvalArgs),
    /// Scan the integer grid [-R, R]^2 for d = 3
    Scan(ScanArgs),
    /// Run a finite-horizon verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Degree base d >= 2
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Coefficients u_1,...,u_{d-1} of P as rationals ("p/q"), comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub u: Vec<String>,
    /// Second coefficient when d = 3 (same as a second --u entry)
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbolic {
    /// d = 2 with u an indeterminate
    U,
    /// d = 3 with u = 0 and v an indeterminate
    V,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of partial quotients after a_0
    #[arg(long, default_value_t = 10)]
    pub terms: usize,
    /// Coefficients of g to use (default: enough for linear quotients)
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Treat one coefficient as the indeterminate t
    #[arg(long, value_enum)]
    pub symbolic: Option<Symbolic>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_enum)]
    pub symbolic: Option<Symbolic>,
}

#[derive(Args, Debug)]
pub struct HankelArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Largest determinant order
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
    /// Gaps used for the heuristic upper bound
    #[arg(long, default_value_t = 10)]
    pub window: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Integer argument with |b| >= 2
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Largest allowed interval width, as a rational
    #[arg(long, default_value = "1/1000000000000")]
    pub eps: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Half-width R of the grid
    #[arg(long, default_value_t = 50)]
    pub range: i64,
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads (0 = one per core)
    #[arg(long, env = "MAHLERCF_JOBS", default_value_t = 0)]
    pub jobs: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// d = 2, P = 1 + ux for integer u in [-range, range] minus {0, 1}
    Linear,
    /// d = 3 on the axes (u, 0) and (0, v) with 0 < |c| <= range
    Axes,
    /// d = 3 block bounds on a grid of admissible (u, v)
    Envelope,
    /// Continuant block identities for the given parameters
    Blocks,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of terms checked
    #[arg(long)]
    pub horizon: Option<usize>,
    #[arg(long, default_value_t = 5)]
    pub range: i64,
    /// Largest block index for the identities
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    #[arg(long, env = "MAHLERCF_JOBS", default_value_t = 0)]
    pub jobs: usize,
}
