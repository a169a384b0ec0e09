use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use design_forge::{FamilyKind, DEFAULT_BUDGET};

/// An inclusive integer range written `a..b`, `a..=b`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: u64,
    pub end: u64,
}

impl Span {
    pub fn iter(&self) -> RangeInclusive<u64> {
        self.start..=self.end
    }

    pub fn is_single(&self) -> bool {
        self.start == self.end
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad integer {t:?}: {e}"))
        };
        let span = match s.split_once("..") {
            Some((a, b)) => Span {
                start: parse(a)?,
                end: parse(b.strip_prefix('=').unwrap_or(b))?,
            },
            None => {
                let x = parse(s)?;
                Span { start: x, end: x }
            }
        };
        if span.start > span.end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(span)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
pub enum Family {
    W,
    Wpair,
    I,
    J,
    L,
    U,
    U2,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> FamilyKind {
        match f {
            Family::W => FamilyKind::W,
            Family::Wpair => FamilyKind::WPair,
            Family::I => FamilyKind::I,
            Family::J => FamilyKind::J,
            Family::L => FamilyKind::L,
            Family::U => FamilyKind::U,
            Family::U2 => FamilyKind::U2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "design-forge", version, about = "Zero-sum BIBDs and GDDs over binary fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a block family as JSONL (summary on stderr)
    Enumerate(FamilyArgs),
    /// Write a block family to a file
    Export(FamilyArgs),
    /// Check the BIBD property of W_k, live or from a JSONL file
    VerifyBibd(VerifyArgs),
    /// Check the GDD property of (V_alpha, U_{alpha,2}, U_{alpha,k})
    VerifyGdd(VerifyArgs),
    /// Print the parameter table computed from the recurrences
    Params(ParamsArgs),
    /// Compare enumerated designs with the recurrences over a sweep
    Crosscheck(CrosscheckArgs),
}

#[derive(Debug, Args)]
pub struct BudgetArg {
    /// Enumeration node budget
    #[arg(long, env = "DESIGN_FORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Base field exponent (U and U2 live in F_{2^{m+1}})
    #[arg(long)]
    pub m: u32,
    /// Block size, or an inclusive range a..b
    #[arg(long)]
    pub k: Option<Span>,
    #[arg(long, value_enum, default_value = "W")]
    pub family: Family,
    #[arg(long)]
    pub alpha: Option<u32>,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub j: Option<u32>,
    #[command(flatten)]
    pub budget: BudgetArg,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, required_unless_present = "input")]
    pub m: Option<u32>,
    #[arg(long, required_unless_present = "input")]
    pub k: Option<usize>,
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Read blocks from a JSONL export instead of enumerating
    #[arg(long, conflicts_with_all = ["m", "k"])]
    pub input: Option<PathBuf>,
    /// Read GDD groups from a JSONL export (default: the pairs {x, x + alpha})
    #[arg(long, requires = "input")]
    pub groups: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    /// Exponent or inclusive range of exponents
    #[arg(long)]
    pub m: Span,
    /// Block sizes (default: every k in 3..=2^m-4 that fits the budget)
    #[arg(long)]
    pub k: Option<Span>,
    /// Also check the lifted GDDs
    #[arg(long)]
    pub gdd: bool,
    /// Shift for the GDD rows (default 1)
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Compare against this parameter CSV instead of the recurrences
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
