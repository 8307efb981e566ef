use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fixcofe::checkers::{DEFAULT_RNG_SEED, DEFAULT_SAMPLES};
use fixcofe::instances::NatFun;
use fixcofe::Value;

#[derive(Debug, Parser)]
#[command(
    name = "fixcofe",
    version,
    about = "Step-indexed fixed points of recursive definitions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Observe the fixed point of a definition to a given depth.
    Solve(SolveArgs),
    /// Run a checker on a definition (or on an instance, for ofe-laws).
    Check(CheckArgs),
    /// Run a built-in scenario.
    Demo(DemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Definition file.
    #[arg(long = "def", value_name = "FILE")]
    pub def: PathBuf,
    /// Number of iterations, which is also the observation level.
    #[arg(long)]
    pub depth: usize,
    #[arg(
        long = "seed-fn",
        default_value = "zero",
        value_name = "zero|id|const:C"
    )]
    pub seed_fn: SeedFn,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Starting function for the iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedFn {
    Zero,
    Id,
    Const(Value),
}

impl SeedFn {
    pub fn build(self) -> NatFun {
        match self {
            SeedFn::Zero => NatFun::zero(),
            SeedFn::Id => NatFun::identity(),
            SeedFn::Const(c) => NatFun::constant(c),
        }
    }
}

impl std::fmt::Display for SeedFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeedFn::Zero => f.write_str("zero"),
            SeedFn::Id => f.write_str("id"),
            SeedFn::Const(c) => write!(f, "const:{c}"),
        }
    }
}

impl FromStr for SeedFn {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "zero" => Ok(SeedFn::Zero),
            "id" => Ok(SeedFn::Id),
            _ => {
                let c = s
                    .strip_prefix("const:")
                    .ok_or_else(|| format!("expected zero, id or const:C, got `{s}`"))?;
                c.parse::<Value>()
                    .map(SeedFn::Const)
                    .map_err(|e| format!("bad constant `{c}`: {e}"))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    OfeLaws,
    Contractive,
    Cfp,
    Lemma,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::OfeLaws => "ofe-laws",
            CheckKind::Contractive => "contractive",
            CheckKind::Cfp => "cfp",
            CheckKind::Lemma => "lemma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InstanceKind {
    Natfun,
    Stream,
    Discrete,
    /// natfun × stream
    Product,
    /// later natfun
    Later,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub kind: CheckKind,
    /// Definition file (not needed for ofe-laws).
    #[arg(long = "def", value_name = "FILE")]
    pub def: Option<PathBuf>,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub samples: usize,
    #[arg(long = "rng-seed", default_value_t = DEFAULT_RNG_SEED)]
    pub rng_seed: u64,
    /// Prefix length of exhaustively enumerated tables.
    #[arg(long = "enum-len", default_value_t = 4)]
    pub enum_len: usize,
    /// Largest value in exhaustively enumerated tables.
    #[arg(long = "enum-max", default_value_t = 3)]
    pub enum_max: Value,
    /// Instance for ofe-laws.
    #[arg(long, value_enum, default_value_t = InstanceKind::Natfun)]
    pub instance: InstanceKind,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Re-verify the counterexample stored in a JSON report instead of searching.
    #[arg(long, value_name = "FILE")]
    pub replay: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// nested-zero, naturals-stream, fib-stream or cauchy-coherent
    pub name: String,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}
