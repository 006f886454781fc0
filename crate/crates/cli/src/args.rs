use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "wsc", version, about = "Weak systolicity and isometry checks on flag complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run local and global curvature checks on each input.
    Check(CheckArgs),
    /// Classify automorphisms and check their minimal displacement sets.
    Isometry(IsometryArgs),
    /// Embedding, systolicity and geodesic checks around Min(h).
    Theorems(TheoremArgs),
    /// Write a generated complex in the text format.
    Generate(GenerateArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Graph,
    Sd,
    Composite,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum CheckName {
    Flag,
    FullCycles,
    Systole,
    KLarge,
    LocallyKLarge,
    Tc,
    Qc,
    WeaklyModular,
    W5hat,
    Sd,
    WeaklySystolic,
    Systolic,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::Flag,
        CheckName::FullCycles,
        CheckName::Systole,
        CheckName::KLarge,
        CheckName::LocallyKLarge,
        CheckName::Tc,
        CheckName::Qc,
        CheckName::WeaklyModular,
        CheckName::W5hat,
        CheckName::Sd,
        CheckName::WeaklySystolic,
        CheckName::Systolic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Flag => "flag",
            CheckName::FullCycles => "full-cycles",
            CheckName::Systole => "systole",
            CheckName::KLarge => "k-large",
            CheckName::LocallyKLarge => "locally-k-large",
            CheckName::Tc => "tc",
            CheckName::Qc => "qc",
            CheckName::WeaklyModular => "weakly-modular",
            CheckName::W5hat => "w5hat",
            CheckName::Sd => "sd",
            CheckName::WeaklySystolic => "weakly-systolic",
            CheckName::Systolic => "systolic",
        }
    }
}

/// Options shared by the checking verbs.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Complex files in the text format.
    pub inputs: Vec<PathBuf>,

    /// Generator spec, e.g. `lattice:R=10,m=4`; repeatable.
    #[arg(long = "generate", short = 'g', value_name = "SPEC")]
    pub generate: Vec<String>,

    /// Characterization used for weak systolicity.
    #[arg(long, value_enum, default_value_t = ModeArg::Graph)]
    pub mode: ModeArg,

    /// Trust margin for windows (overrides the input's).
    #[arg(long)]
    pub margin: Option<u32>,

    /// Window radius (overrides the input's).
    #[arg(long)]
    pub radius: Option<u32>,

    /// Search steps for the simple-connectivity oracle.
    #[arg(long, default_value_t = 100_000)]
    pub oracle_budget: usize,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Checks whose No answer makes the exit status 1; `all` for every one.
    #[arg(long, value_delimiter = ',', value_name = "CHECK,...")]
    pub require: Vec<String>,

    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,

    /// Checks to run, comma separated.
    #[arg(long, short = 'c', value_enum, value_delimiter = ',', required = true)]
    pub checks: Vec<CheckName>,

    /// k for k-large and locally-k-large.
    #[arg(short, default_value_t = 6)]
    pub k: usize,

    /// Longest cycle enumerated by full-cycles.
    #[arg(long, default_value_t = 8)]
    pub max_len: usize,
}

#[derive(Args, Debug, Clone)]
pub struct IsometryArgs {
    #[command(flatten)]
    pub common: Common,

    /// Automorphism names from the input; `identity` and `enumerate` (all
    /// automorphisms of a finite complex) are built in. Default: every
    /// automorphism the input carries.
    #[arg(long = "automorphism", short = 'a', value_delimiter = ',')]
    pub automorphisms: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct TheoremArgs {
    #[command(flatten)]
    pub common: Common,

    #[arg(long = "automorphism", short = 'a', value_delimiter = ',')]
    pub automorphisms: Vec<String>,

    /// Use the span of these vertices in place of Min(h).
    #[arg(long, value_delimiter = ',', value_name = "V,...")]
    pub subcomplex: Vec<u32>,

    /// Power n for the h^n-invariant geodesic search.
    #[arg(long, default_value_t = 1)]
    pub power: i64,
}

#[derive(Args, Debug, Clone)]
pub struct GenerateArgs {
    /// Generator spec, e.g. `torus:p=4,q=4`.
    pub spec: String,

    #[arg(long)]
    pub radius: Option<u32>,

    #[arg(long)]
    pub margin: Option<u32>,

    /// Output file (default: stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
