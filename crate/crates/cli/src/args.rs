use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclocode_core::characters::DEFAULT_TOLERANCE;
use cyclocode_core::code::DEFAULT_ENUMERATION_BUDGET;
use cyclocode_core::field::DEFAULT_MAX_ORDER;
use cyclocode_core::ghw::Method;
use cyclocode_core::subspace::DEFAULT_SUBSPACE_BUDGET;

#[derive(Debug, Parser)]
#[command(
    name = "cyclocode",
    version,
    about = "Weights, generalized Hamming weights and character sums of cyclotomic trace codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Field, classes and semi-primitive parameters of one code
    Info(RunConfig),
    /// Weight distribution by exhaustive enumeration, with the two-weight table
    Wdist(RunConfig),
    /// Generalized Hamming weights by one or all methods
    Ghw(RunConfig),
    /// Gaussian periods, exponential sums and Gauss sums
    Periods(RunConfig),
    /// Singleton, Griesmer and Plotkin bounds against the computed d_r
    Bounds(RunConfig),
    /// Full cross-check battery over a grid of specifications
    VerifyGrid(RunConfig),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Info(_) => "info",
            Command::Wdist(_) => "wdist",
            Command::Ghw(_) => "ghw",
            Command::Periods(_) => "periods",
            Command::Bounds(_) => "bounds",
            Command::VerifyGrid(_) => "verify-grid",
        }
    }

    pub fn config(&self) -> &RunConfig {
        match self {
            Command::Info(c)
            | Command::Wdist(c)
            | Command::Ghw(c)
            | Command::Periods(c)
            | Command::Bounds(c)
            | Command::VerifyGrid(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Characteristic
    #[arg(long)]
    pub p: Option<u32>,
    /// q = p^e
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Q = q^m
    #[arg(long)]
    pub m: Option<u32>,
    /// Number of cyclotomic classes
    #[arg(long)]
    pub h: Option<u32>,
    /// Class indices t_1 < ... < t_s, comma separated
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<u32>,
    /// A single r or a range R1..R2 (default 1..m)
    #[arg(long)]
    pub r: Option<RRange>,
    /// direct, thm1, gauss, period or all
    #[arg(long, default_value = "all")]
    pub method: MethodSel,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Grid file for verify-grid (default: the built-in grid)
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest field order Q to tabulate
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    pub field_cap: u64,
    /// Largest number of subspaces to enumerate per sweep
    #[arg(long, default_value_t = DEFAULT_SUBSPACE_BUDGET)]
    pub subspace_budget: u128,
    /// Largest number of messages to enumerate for a weight distribution
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub enum_budget: u64,
    /// Snap tolerance for character-sum arithmetic
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Largest m at which verify-grid checks the duality identity per subspace
    #[arg(long, default_value_t = 4)]
    pub identity_max_m: u32,
}

/// Inclusive range of `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RRange {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for RRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad r {x:?}: {e}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let r = num(s)?;
                (r, r)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("r range {s:?} must satisfy 1 <= R1 <= R2"));
        }
        Ok(RRange { lo, hi })
    }
}

impl fmt::Display for RRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSel {
    All,
    One(Method),
}

impl MethodSel {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodSel::All => Method::ALL.to_vec(),
            MethodSel::One(m) => vec![m],
        }
    }
}

impl FromStr for MethodSel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            Ok(MethodSel::All)
        } else {
            s.parse().map(MethodSel::One)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_ranges() {
        assert_eq!("3".parse::<RRange>(), Ok(RRange { lo: 3, hi: 3 }));
        assert_eq!("1..6".parse::<RRange>(), Ok(RRange { lo: 1, hi: 6 }));
        assert_eq!("2..=4".parse::<RRange>(), Ok(RRange { lo: 2, hi: 4 }));
        assert!("0".parse::<RRange>().is_err());
        assert!("5..2".parse::<RRange>().is_err());
        assert!("a..2".parse::<RRange>().is_err());
        assert_eq!(RRange { lo: 1, hi: 6 }.to_string(), "1..6");
    }

    #[test]
    fn method_selection() {
        assert_eq!("all".parse::<MethodSel>().unwrap().methods().len(), 4);
        assert_eq!(
            "thm1".parse::<MethodSel>(),
            Ok(MethodSel::One(Method::Thm1))
        );
        assert!("everything".parse::<MethodSel>().is_err());
    }

    #[test]
    fn parses_a_full_command_line() {
        let cli = Cli::try_parse_from([
            "cyclocode",
            "ghw",
            "--p",
            "2",
            "--e",
            "1",
            "--m",
            "6",
            "--h",
            "3",
            "--t",
            "0,1",
            "--r",
            "1..3",
            "--method",
            "gauss",
            "--format",
            "csv",
            "--threads",
            "2",
        ])
        .unwrap();
        let c = cli.command.config();
        assert_eq!(cli.command.name(), "ghw");
        assert_eq!(
            (c.p, c.m, c.h, c.t.clone()),
            (Some(2), Some(6), Some(3), vec![0, 1])
        );
        assert_eq!(c.r, Some(RRange { lo: 1, hi: 3 }));
        assert_eq!(c.method, MethodSel::One(Method::Thm2Gauss));
        assert_eq!((c.format, c.threads), (Format::Csv, Some(2)));
    }
}
