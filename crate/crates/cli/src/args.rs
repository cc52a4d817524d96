use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use qnorm_core::diagrams::PairingFamily;
use qnorm_core::exact::{HighComplex, DEFAULT_PRECISION};
use qnorm_core::norms::{Branch, TaylorMethod};

/// Crossing statistics of pairings and 2n-norms of q-Gaussian operators.
#[derive(Debug, Parser)]
#[command(name = "qnorm", version)]
pub struct Cli {
    /// Worker threads for enumeration (default: available parallelism).
    #[arg(long, global = true, env = "QNORM_THREADS")]
    pub threads: Option<usize>,

    /// Working precision of floating renderings, in bits.
    #[arg(long, global = true, env = "QNORM_PRECISION_BITS", default_value_t = DEFAULT_PRECISION)]
    pub precision_bits: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Crossing histogram of a pairing family by exhaustive enumeration.
    Enumerate(EnumerateArgs),
    /// Connected-diagram counts b(n, k).
    Btable(BtableArgs),
    /// Crossing polynomial of all pairings, from the alternating sum.
    Tr(PolyArgs),
    /// Directed-crossing polynomial of permutations, from the q-integer sum.
    Corteel(PolyArgs),
    /// Parity-reversing pairings with n chords and k crossings.
    Rnk(RnkArgs),
    /// A 2n-norm at a complex point.
    Norm(NormArgs),
    /// Taylor coefficients of the circular 2n-norm about the origin.
    Taylor(TaylorArgs),
    /// Large-n sequences of Taylor coefficients and norm errors.
    Probe(ProbeArgs),
    /// Least-modulus roots of the crossing polynomials.
    Roots(RootsArgs),
    /// Runs the internal consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    All,
    Parity,
    Connected,
}

impl From<FamilyArg> for PairingFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::All => PairingFamily::All,
            FamilyArg::Parity => PairingFamily::ParityReversing,
            FamilyArg::Connected => PairingFamily::ConnectedParityReversing,
        }
    }
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BtableArgs {
    #[arg(long, default_value_t = 11)]
    pub max_k: usize,
    /// Recompute every entry by enumeration.
    #[arg(long)]
    pub regenerate: bool,
    /// Emit the enumerated constants instead of the published ones.
    #[arg(long, conflicts_with = "regenerate")]
    pub corrected: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long)]
    pub n: usize,
    /// Evaluate at `RE` (exact) or `RE,IM` (floating).
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RnkMethod {
    Closed,
    Convolution,
    Enumerate,
}

impl RnkMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RnkMethod::Closed => "closed",
            RnkMethod::Convolution => "convolution",
            RnkMethod::Enumerate => "enumerate",
        }
    }
}

#[derive(Debug, Args)]
pub struct RnkArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: RnkMethod,
    /// Compute with every available method and require agreement.
    #[arg(long)]
    pub verify: bool,
    /// Use the published closed forms and table.
    #[arg(long)]
    pub printed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    Semicircular,
    Circular,
}

impl Operator {
    pub fn as_str(self) -> &'static str {
        match self {
            Operator::Semicircular => "semicircular",
            Operator::Circular => "circular",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Principal,
    Factored,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Principal => Branch::Principal,
            BranchArg::Factored => Branch::Factored,
        }
    }
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long, value_enum)]
    pub op: Operator,
    #[arg(long)]
    pub n: usize,
    /// `RE` or `RE,IM`.
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Root branch for the semicircular norm.
    #[arg(long, value_enum, default_value = "principal")]
    pub branch: BranchArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TaylorMethodArg {
    Faa,
    Series,
    Both,
}

impl TaylorMethodArg {
    pub fn methods(self) -> Vec<TaylorMethod> {
        match self {
            TaylorMethodArg::Faa => vec![TaylorMethod::FaaDiBruno],
            TaylorMethodArg::Series => vec![TaylorMethod::SeriesLog],
            TaylorMethodArg::Both => vec![TaylorMethod::FaaDiBruno, TaylorMethod::SeriesLog],
        }
    }
}

#[derive(Debug, Args)]
pub struct TaylorArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub max_k: usize,
    #[arg(long, value_enum, default_value = "both")]
    pub method: TaylorMethodArg,
    /// Use the published closed forms for the counts.
    #[arg(long)]
    pub printed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProbeKind {
    A3,
    A11,
    Limit,
}

impl ProbeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProbeKind::A3 => "a3",
            ProbeKind::A11 => "a11",
            ProbeKind::Limit => "limit",
        }
    }
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long, value_enum)]
    pub which: ProbeKind,
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<usize>,
    /// Point for the limit probe, `RE` or `RE,IM`.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub q: String,
    /// Use the published closed forms for the a11 probe.
    #[arg(long)]
    pub printed: bool,
    #[arg(long, value_enum, default_value = "principal")]
    pub branch: BranchArg,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub n_from: usize,
    #[arg(long)]
    pub n_to: usize,
    #[arg(long, value_enum, default_value = "circular")]
    pub operator: Operator,
    /// Allow the circular case past n = 10 (enumerates up to 12!).
    #[arg(long)]
    pub extended: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: Level,
}

/// Parses `[-]digits[.digits][e[-]digits]` or `a/b` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.contains('/') {
        return s
            .parse::<BigRational>()
            .map_err(|e| format!("bad rational {s:?}: {e}"));
    }
    let bad = || format!("bad decimal {s:?}");
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mantissa: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(mantissa);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// A point given as `RE` or `RE,IM`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub re: BigRational,
    pub im: BigRational,
}

impl Point {
    pub fn parse(s: &str) -> Result<Self, String> {
        let (re, im) = match s.split_once(',') {
            Some((a, b)) => (parse_rational(a)?, parse_rational(b)?),
            None => (parse_rational(s)?, BigRational::zero()),
        };
        Ok(Point { re, im })
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn to_complex(&self, precision: usize) -> HighComplex {
        HighComplex::from_rationals(&self.re, &self.im, precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), rat(250, 1));
        assert_eq!(parse_rational("3/7").unwrap(), rat(3, 7));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        for bad in ["", "-", "1.2.3", "abc", "1e", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn points() {
        let p = Point::parse("0,0.5").unwrap();
        assert_eq!(p.re, rat(0, 1));
        assert_eq!(p.im, rat(1, 2));
        assert!(!p.is_real());
        assert!(Point::parse("1").unwrap().is_one());
        assert!(Point::parse("1,2,3").is_err());
    }

    proptest::proptest! {
        #[test]
        fn fractions_and_decimals_round_trip(num in -10_000i64..10_000, den in 1i64..10_000, scale in 0u32..6) {
            proptest::prop_assert_eq!(parse_rational(&format!("{num}/{den}")).unwrap(), rat(num, den));
            let ten = 10i64.pow(scale);
            let text = format!("{}{}.{:0width$}", if num < 0 { "-" } else { "" }, num.abs() / ten, num.abs() % ten, width = scale as usize);
            let text = if scale == 0 { text.trim_end_matches('.').to_owned() } else { text };
            proptest::prop_assert_eq!(parse_rational(&text).unwrap(), rat(num, ten));
        }
    }
}
