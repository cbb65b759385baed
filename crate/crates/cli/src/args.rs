use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Parser)]
#[command(
    name = "neron",
    version,
    about = "Component groups, critical groups and Jacobians of decorated dual graphs"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Edge orientation policy. Only `keep` (file order) is supported.
    #[arg(long, global = true, value_enum, default_value_t = Orient::Keep)]
    pub orient: Orient,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Orient {
    Keep,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validity, stability, genus and Betti number.
    Check(GraphArg),
    /// Weighted spanning-tree complexity.
    Complexity(OracleArgs),
    /// Critical group K_t and the order formula.
    Critical(GraphArg),
    /// Component group and the extension by the character kernel.
    Components(OracleArgs),
    /// Character kernel at level ℓ.
    Kernel {
        #[command(flatten)]
        input: OracleArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        ell: u64,
    },
    /// Gram matrix, graph Jacobian and the Abel check.
    Jacobian(OracleArgs),
    /// Component labels of the level-ℓ special fibre.
    Decompose {
        #[command(flatten)]
        input: OracleArgs,
        /// A positive level or `min` for the minimal level.
        #[arg(long)]
        ell: LevelArg,
    },
    /// Divisor membership and class coordinates.
    Class {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        divisor: DivisorArg,
    },
    /// Fire one vertex.
    Fire {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        divisor: DivisorArg,
        #[arg(long)]
        at: String,
    },
}

#[derive(Debug, Args)]
pub struct GraphArg {
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub file: PathBuf,
    /// Cross-check against brute-force enumeration and fail on mismatch.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelArg {
    Min,
    Value(u64),
}

impl FromStr for LevelArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "min" {
            return Ok(LevelArg::Min);
        }
        match s.parse::<u64>() {
            Ok(0) | Err(_) => Err(format!("`{s}` is neither a positive integer nor `min`")),
            Ok(n) => Ok(LevelArg::Value(n)),
        }
    }
}

/// `v1=p/q,v2=r,...`; unnamed vertices are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorArg(pub Vec<(String, BigRational)>);

impl FromStr for DivisorArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut entries = Vec::new();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (id, value) = part
                .split_once('=')
                .ok_or_else(|| format!("`{part}` is not of the form vertex=value"))?;
            entries.push((id.trim().to_string(), parse_rational(value.trim())?));
        }
        Ok(DivisorArg(entries))
    }
}

/// Exact `p` or `p/q`; decimal and exponent notation are refused.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let is_integer = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
    };
    if !is_integer(num) || !is_integer(den) {
        return Err(format!("`{s}` is not an exact rational p/q"));
    }
    let num = BigInt::from_str(num).map_err(|e| e.to_string())?;
    let den = BigInt::from_str(den).map_err(|e| e.to_string())?;
    if den == BigInt::from(0) {
        return Err(format!("`{s}` has a zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert_eq!(
            parse_rational("4").unwrap(),
            BigRational::from_integer(4.into())
        );
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn divisors_and_levels() {
        let d: DivisorArg = "v1=-1/2, v2=1/2".parse().unwrap();
        assert_eq!(d.0.len(), 2);
        assert!("v1".parse::<DivisorArg>().is_err());
        assert_eq!("min".parse::<LevelArg>().unwrap(), LevelArg::Min);
        assert_eq!("4".parse::<LevelArg>().unwrap(), LevelArg::Value(4));
        assert!("0".parse::<LevelArg>().is_err());
    }
}
