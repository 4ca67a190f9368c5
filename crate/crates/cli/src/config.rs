//! Run configuration and parsing of genus selections.

use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Build,
    Verify,
    Volume,
    Slopes,
    Symmetry,
    Canonical,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Genera given as `7`, `2,5,9`, `2..10` (inclusive) or a comma list mixing both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusSpec(pub Vec<usize>);

impl FromStr for GenusSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = |part: &str| CliError::Usage(format!("cannot parse genus selection '{part}'"));
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some((lo, hi)) = part.split_once("..") {
                let lo: usize = lo.trim().parse().map_err(|_| bad(part))?;
                let hi: usize = hi.trim().parse().map_err(|_| bad(part))?;
                out.extend(lo..=hi);
            } else {
                out.push(part.parse().map_err(|_| bad(part))?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(GenusSpec(out))
    }
}

/// Genera added to volume checks by `--deep`.
pub const DEEP_VOLUME_GENERA: [usize; 4] = [50, 100, 250, 500];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub genera: Vec<usize>,
    pub quadrature_tol: f64,
    pub coeff_bound: i64,
    pub k: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub deep: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let genera = match command {
            Command::All | Command::Verify => (2..=20).collect(),
            _ => vec![2],
        };
        RunConfig {
            command,
            genera,
            quadrature_tol: 1e-8,
            coeff_bound: 100,
            k: 1.0,
            output: None,
            format: Format::Json,
            deep: false,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(g) = self.genera.iter().find(|&&g| g < 2) {
            return Err(CliError::Usage(format!(
                "genus must be at least 2, got {g}"
            )));
        }
        if !(self.quadrature_tol > 0.0 && self.quadrature_tol < 1.0) {
            return Err(CliError::Usage(format!(
                "--tol must lie in (0, 1), got {}",
                self.quadrature_tol
            )));
        }
        if self.coeff_bound < 1 {
            return Err(CliError::Usage(format!(
                "--bound must be positive, got {}",
                self.coeff_bound
            )));
        }
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err(CliError::Usage(format!(
                "--k must be positive, got {}",
                self.k
            )));
        }
        Ok(())
    }

    /// Genera used for volume claims, extended when `deep` is set.
    pub fn volume_genera(&self) -> Vec<usize> {
        let mut gs = self.genera.clone();
        if self.deep {
            gs.extend(DEEP_VOLUME_GENERA);
            gs.sort_unstable();
            gs.dedup();
        }
        gs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_selections() {
        assert_eq!("7".parse::<GenusSpec>().unwrap().0, vec![7]);
        assert_eq!("2..4,10".parse::<GenusSpec>().unwrap().0, vec![2, 3, 4, 10]);
        assert_eq!("9,2,9".parse::<GenusSpec>().unwrap().0, vec![2, 9]);
        assert!("5..3".parse::<GenusSpec>().unwrap().0.is_empty());
        assert!("x".parse::<GenusSpec>().is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::new(Command::Verify);
        assert!(c.validate().is_ok());
        c.genera = vec![1];
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Command::Volume);
        c.quadrature_tol = 1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn deep_extends_volume_genera() {
        let mut c = RunConfig::new(Command::All);
        c.deep = true;
        assert_eq!(*c.volume_genera().last().unwrap(), 500);
    }
}
