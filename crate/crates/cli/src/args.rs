use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "xxring",
    version,
    about = "Thermal entanglement and two-receiver teleportation in the three-qubit XX ring"
)]
pub struct Cli {
    /// Report temperatures and fields in units of |J| or in the input units.
    #[arg(long, value_enum, default_value_t = Units::J, global = true)]
    pub units: Units,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analytic energy levels, sorted ascending.
    Spectrum(SpectrumArgs),
    /// Quantities at a single (J, B, T) point.
    Point(PointArgs),
    /// Recompute the reference critical-temperature tables.
    Tables(TablesArgs),
    /// Evaluate quantities over a (B, T) grid.
    Sweep(SweepArgs),
    /// Critical temperatures T1 and T2.
    Critical(CriticalArgs),
    /// Cross-check closed forms against the numerical oracles.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Units {
    #[value(name = "J")]
    J,
    Absolute,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Concurrence,
    #[value(name = "avg_fidelity")]
    AvgFidelity,
    Advantage,
    Probabilities,
}

impl Quantity {
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Quantity::Concurrence => &["concurrence"],
            Quantity::AvgFidelity => &["avg_fidelity"],
            Quantity::Advantage => &["advantage"],
            Quantity::Probabilities => &["p1", "p2", "p3", "p4"],
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Concurrence => "concurrence",
            Quantity::AvgFidelity => "avg_fidelity",
            Quantity::Advantage => "advantage",
            Quantity::Probabilities => "probabilities",
        })
    }
}

/// `start:stop:count`, inclusive at both ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridRange {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self, String> {
        if !start.is_finite() || !stop.is_finite() {
            return Err("range bounds must be finite".into());
        }
        if count == 0 {
            return Err("range count must be at least 1".into());
        }
        if start > stop {
            return Err(format!("range start {start} exceeds stop {stop}"));
        }
        Ok(Self { start, stop, count })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i == self.count - 1 { self.stop } else { self.start + step * i as f64 }).collect()
    }
}

impl FromStr for GridRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected START:STOP:COUNT, got {s:?}"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
        let count = parts[2].trim().parse::<usize>().map_err(|e| format!("{:?}: {e}", parts[2]))?;
        GridRange::new(num(parts[0])?, num(parts[1])?, count)
    }
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long = "J", allow_negative_numbers = true)]
    pub j: f64,
    #[arg(long = "B", allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PointArgs {
    #[arg(long = "J", allow_negative_numbers = true)]
    pub j: f64,
    #[arg(long = "B", allow_negative_numbers = true)]
    pub b: f64,
    /// Temperature; 0 selects the exact ground-state limits.
    #[arg(long = "T", allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "concurrence,avg_fidelity,advantage")]
    pub q: Vec<Quantity>,
    /// Polar angle of the input state, used for outcome probabilities.
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    /// Also print the numerical oracle value and the difference.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("field").required(true).args(["b", "eta"])))]
pub struct CriticalArgs {
    #[arg(long = "J", allow_negative_numbers = true)]
    pub j: f64,
    #[arg(long = "B", allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Field as a multiple of |J|.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Relative tolerance of the root finder.
    #[arg(long, default_value_t = xxring::criticality::ROOT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    /// TOML file with sweep settings; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long = "J", allow_negative_numbers = true)]
    pub j: Option<f64>,
    /// Field grid START:STOP:COUNT.
    #[arg(long = "B-range", allow_hyphen_values = true)]
    pub b_range: Option<GridRange>,
    /// Temperature grid START:STOP:COUNT.
    #[arg(long = "T-range")]
    pub t_range: Option<GridRange>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub q: Option<Vec<Quantity>>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridSize {
    Small,
    Standard,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = GridSize::Standard)]
    pub grid: GridSize,
    /// Offset added to the closed-form average fidelity, to exercise failure reporting.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub perturb: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_range_parsing() {
        let r: GridRange = "0:4:81".parse().unwrap();
        let v = r.values();
        assert_eq!(v.len(), 81);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[80], 4.0);
        assert_eq!(v[20], 1.0);
        assert_eq!("-1:1:1".parse::<GridRange>().unwrap().values(), vec![-1.0]);
        assert!("1:0:3".parse::<GridRange>().is_err());
        assert!("0:1:0".parse::<GridRange>().is_err());
        assert!("0:1".parse::<GridRange>().is_err());
        assert!("a:1:2".parse::<GridRange>().is_err());
    }

    #[test]
    fn negative_couplings_parse() {
        let cli = Cli::try_parse_from(["xxring", "point", "--J", "-1", "--B", "0", "--T", "1"]).unwrap();
        match cli.command {
            Command::Point(p) => {
                assert_eq!(p.j, -1.0);
                assert_eq!(p.q, vec![Quantity::Concurrence, Quantity::AvgFidelity, Quantity::Advantage]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn critical_needs_a_field() {
        assert!(Cli::try_parse_from(["xxring", "critical", "--J", "1"]).is_err());
        assert!(Cli::try_parse_from(["xxring", "critical", "--J", "1", "--B", "1", "--eta", "1"]).is_err());
        assert!(Cli::try_parse_from(["xxring", "critical", "--J", "-1", "--eta", "1.2"]).is_ok());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
