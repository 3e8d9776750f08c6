use std::path::PathBuf;

use casimir_core::{EnergyMode, Environment, Metal, Mirror, Spec};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "casimir",
    version,
    about = "Casimir force and free-energy correction factors for plasma-model mirrors at finite temperature"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Correction factors at a single distance.
    Factors {
        /// Mirror separation, with unit (e.g. 0.5um, 300nm).
        #[arg(long = "L", value_parser = parse_length)]
        gap: f64,
        #[command(flatten)]
        physics: Physics,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// One row of correction factors per distance over a range.
    Sweep {
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        physics: Physics,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Write the datasets behind the force, energy, deviation and rescaled-deviation figures.
    Figures {
        #[command(flatten)]
        range: Range,
        /// Temperature in kelvin; 0 selects the zero-temperature limit.
        #[arg(long = "T", value_parser = parse_temperature, default_value = "300")]
        temperature: f64,
        /// Output format of the dataset files.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Directory receiving fig1..fig4.
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Run the reproduction checks and print a pass/fail table.
    Validate {
        /// Only run these criteria (0 is the ideal-value reference check).
        #[arg(long = "criterion", value_delimiter = ',')]
        criteria: Vec<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Validation)]
        mode: ModeArg,
        #[arg(long, allow_negative_numbers = true)]
        abs_tol: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        rel_tol: Option<f64>,
        /// Multiplies hbar in the reference check; negative control for the suite.
        #[arg(long, hide = true)]
        tamper_hbar: Option<f64>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "mirror")]
pub struct MirrorArgs {
    /// Named plasma wavelength: Al (107 nm), Cu or Au (136 nm).
    #[arg(long)]
    pub metal: Option<Metal>,
    /// Plasma wavelength with unit; 0 selects perfect mirrors.
    #[arg(long = "lambda-P", value_parser = parse_length)]
    pub lambda_p: Option<f64>,
}

#[derive(Args, Debug)]
pub struct Physics {
    #[command(flatten)]
    pub mirror: MirrorArgs,
    /// Temperature in kelvin; 0 selects the zero-temperature limit.
    #[arg(long = "T", value_parser = parse_temperature, default_value = "300")]
    pub temperature: f64,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Numerics {
    #[arg(long, value_enum, default_value_t = ModeArg::Fast)]
    pub mode: ModeArg,
    /// Absolute tolerance of every integral and series.
    #[arg(long, allow_negative_numbers = true)]
    pub abs_tol: Option<f64>,
    /// Relative tolerance of every integral and series.
    #[arg(long, allow_negative_numbers = true)]
    pub rel_tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct Range {
    #[arg(long = "L-min", value_parser = parse_length)]
    pub l_min: Option<f64>,
    #[arg(long = "L-max", value_parser = parse_length)]
    pub l_max: Option<f64>,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Log)]
    pub scale: Scale,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Log,
    Linear,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Fast,
    Validation,
}

impl ModeArg {
    pub fn energy_mode(self) -> EnergyMode {
        match self {
            ModeArg::Fast => EnergyMode::Fast,
            ModeArg::Validation => EnergyMode::Validation,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModeArg::Fast => "fast",
            ModeArg::Validation => "validation",
        }
    }
}

/// Parses a length such as `0.5um`, `107nm`, `1e-6m` or `3µm` into metres.
/// A bare number is only accepted for zero.
pub fn parse_length(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let units: [(&str, i32); 5] = [("nm", -9), ("um", -6), ("µm", -6), ("mm", -3), ("m", 0)];
    for (suffix, exp) in units {
        if let Some(num) = s.strip_suffix(suffix) {
            let num = num.trim();
            // folding the unit into the decimal exponent keeps 5um == 5e-6 exactly
            let v: f64 = if num.contains(['e', 'E']) {
                num.parse::<f64>().map(|v| v * 10f64.powi(exp))
            } else {
                format!("{num}e{exp}").parse()
            }
            .map_err(|_| format!("invalid length `{s}`"))?;
            if !v.is_finite() || v < 0.0 {
                return Err(format!("length must be non-negative and finite, got `{s}`"));
            }
            return Ok(v);
        }
    }
    match s.parse::<f64>() {
        Ok(0.0) => Ok(0.0),
        Ok(_) => Err(format!("length `{s}` needs a unit (nm, um, mm or m)")),
        Err(_) => Err(format!("invalid length `{s}`")),
    }
}

/// Parses a temperature in kelvin, with or without a trailing `K`.
pub fn parse_temperature(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let t = t.strip_suffix('K').unwrap_or(t).trim();
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!(
            "temperature must be a non-negative number of kelvin, got `{s}`"
        )),
    }
}

impl MirrorArgs {
    pub fn resolve(&self) -> Result<Mirror, CliError> {
        match (self.metal, self.lambda_p) {
            (Some(m), _) => Ok(m.mirror()),
            (None, Some(0.0)) => Ok(Mirror::perfect()),
            (None, Some(l)) => Mirror::new(l).map_err(CliError::from_core),
            (None, None) => Err(CliError::Usage("one of --metal or --lambda-P is required".into())),
        }
    }
}

pub fn environment(temperature: f64) -> Result<Environment, CliError> {
    if temperature == 0.0 {
        Ok(Environment::zero_temperature())
    } else {
        Environment::new(temperature).map_err(CliError::from_core)
    }
}

pub fn spec(abs_tol: Option<f64>, rel_tol: Option<f64>) -> Result<Spec, CliError> {
    let default = Spec::default();
    let spec = Spec {
        abs_tol: abs_tol.unwrap_or(default.abs_tol),
        rel_tol: rel_tol.unwrap_or(default.rel_tol),
        ..default
    };
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(spec)
}

impl Range {
    /// Distances in ascending order. `default` fills in a missing bound.
    pub fn grid(&self, default: Option<(f64, f64)>) -> Result<Vec<f64>, CliError> {
        let (lo, hi) = match (self.l_min, self.l_max, default) {
            (Some(a), Some(b), _) => (a, b),
            (a, b, Some((da, db))) => (a.unwrap_or(da), b.unwrap_or(db)),
            _ => return Err(CliError::Usage("--L-min and --L-max are required".into())),
        };
        if !(lo > 0.0) || hi < lo {
            return Err(CliError::Usage(format!(
                "distance range must satisfy 0 < L-min <= L-max, got [{lo:e}, {hi:e}] m"
            )));
        }
        let n = self.points;
        if n == 0 {
            return Err(CliError::Usage("--points must be at least 1".into()));
        }
        if n == 1 {
            return Ok(vec![lo]);
        }
        let last = (n - 1) as f64;
        let mut grid: Vec<f64> = (0..n)
            .map(|i| {
                let s = i as f64 / last;
                match self.scale {
                    Scale::Log => (lo.ln() + s * (hi / lo).ln()).exp(),
                    Scale::Linear => lo + s * (hi - lo),
                }
            })
            .collect();
        grid[0] = lo;
        grid[n - 1] = hi;
        Ok(grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(parse_length("107nm").unwrap(), 107e-9);
        assert_eq!(parse_length("5um").unwrap(), 5e-6);
        assert_eq!(parse_length("0.5um").unwrap(), 0.5e-6);
        assert_eq!(parse_length("3µm").unwrap(), 3e-6);
        assert_eq!(parse_length("1e-6m").unwrap(), 1e-6);
        assert_eq!(parse_length("0").unwrap(), 0.0);
        assert!(parse_length("3").is_err());
        assert!(parse_length("-1um").is_err());
        assert!(parse_length("abcnm").is_err());
    }

    #[test]
    fn temperatures() {
        assert_eq!(parse_temperature("300").unwrap(), 300.0);
        assert_eq!(parse_temperature("4.2K").unwrap(), 4.2);
        assert!(parse_temperature("-1").is_err());
        assert!(parse_temperature("hot").is_err());
    }

    #[test]
    fn log_grid_hits_endpoints() {
        let r = Range {
            l_min: Some(1e-7),
            l_max: Some(1e-5),
            points: 5,
            scale: Scale::Log,
        };
        let g = r.grid(None).unwrap();
        assert_eq!(g, vec![1e-7, g[1], g[2], g[3], 1e-5]);
        assert!((g[2] - 1e-6).abs() < 1e-18);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bad_ranges() {
        let mut r = Range {
            l_min: Some(2e-6),
            l_max: Some(1e-6),
            points: 3,
            scale: Scale::Linear,
        };
        assert!(r.grid(None).is_err());
        r.l_min = None;
        assert!(r.grid(None).is_err());
        r.l_min = Some(1e-6);
        r.l_max = Some(2e-6);
        r.points = 0;
        assert!(r.grid(None).is_err());
    }
}
