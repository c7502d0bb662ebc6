//! Validated experiment settings shared by every subcommand.

use std::path::PathBuf;
use std::str::FromStr;

use gmseq::generators::{make_example, ExampleName, FamilySpec};
use gmseq::io::read_sequence;
use gmseq::{Exponent, QuadratureSpec, TwoSidedSequence};
use serde::{Deserialize, Serialize};

use crate::ConfigError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Norms,
    Classify,
    Reproduce,
    Equivalence,
    Multiplier,
}

/// Where the coefficient sequence comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    File(PathBuf),
    /// Family spec plus the truncation size.
    Family {
        spec: String,
        size: usize,
    },
    Example {
        name: String,
        nmax: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub source: Option<Source>,
    pub p_grid: Vec<f64>,
    pub sizes: Vec<usize>,
    pub output: Option<PathBuf>,
    /// Fills the `seed` parameter of random families that leave it out.
    pub seed: u64,
    pub quadrature: QuadratureSpec,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            source: None,
            p_grid: vec![2.0],
            sizes: Vec::new(),
            output: None,
            seed: 0,
            quadrature: QuadratureSpec::default(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.p_grid.is_empty() {
            return Err(ConfigError::new("the p grid is empty"));
        }
        for &p in &self.p_grid {
            Exponent::new(p)
                .map_err(|_| ConfigError::new(format!("p = {p} is not in (1, inf)")))?;
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::new("sizes must be strictly ascending"));
        }
        if self.sizes.first() == Some(&0) {
            return Err(ConfigError::new("sizes must be positive"));
        }
        if self.command == Command::Equivalence {
            if self.sizes.is_empty() {
                return Err(ConfigError::new("equivalence needs at least one size"));
            }
            match &self.source {
                Some(Source::Family { spec, .. }) => {
                    self.family_spec(spec)?;
                }
                _ => return Err(ConfigError::new("equivalence needs a family spec")),
            }
        }
        self.quadrature
            .validate()
            .map_err(|e| ConfigError::new(e.to_string()))?;
        Ok(())
    }

    pub fn exponents(&self) -> Vec<Exponent> {
        self.p_grid
            .iter()
            .map(|p| Exponent::new(*p).expect("validated"))
            .collect()
    }

    /// Parses a family spec, supplying `seed` when the family needs one and
    /// the spec gives no parameters.
    pub fn family_spec(&self, text: &str) -> Result<FamilySpec, ConfigError> {
        let mut spec = FamilySpec::from_str(text).map_err(|e| ConfigError::new(e.to_string()))?;
        if spec.params.is_empty() && spec.kind.param_names().first() == Some(&"seed") {
            spec.params.push(self.seed as f64);
        }
        Ok(spec)
    }

    /// Loads or generates the input sequence.
    pub fn load(&self) -> Result<TwoSidedSequence, ConfigError> {
        match &self.source {
            None => Err(ConfigError::new(
                "no input given (use --input, --family or --example)",
            )),
            Some(Source::File(path)) => read_sequence(path)
                .map_err(|e| ConfigError::new(format!("{}: {e}", path.display()))),
            Some(Source::Family { spec, size }) => self
                .family_spec(spec)?
                .generate(*size)
                .map_err(|e| ConfigError::new(e.to_string())),
            Some(Source::Example { name, nmax }) => {
                let name: ExampleName = name
                    .parse()
                    .map_err(|e: gmseq::Error| ConfigError::new(e.to_string()))?;
                make_example(name, *nmax).map_err(|e| ConfigError::new(e.to_string()))
            }
        }
    }
}

/// Parses `LIST` of exponents: `1.5,2,3`.
pub fn parse_p_grid(text: &str) -> Result<Vec<f64>, ConfigError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| ConfigError::new(format!("`{s}` is not a number")))
        })
        .collect()
}

fn parse_size(text: &str) -> Result<usize, ConfigError> {
    let bad = || ConfigError::new(format!("`{text}` is not a size (use N or 2^K)"));
    match text.split_once('^') {
        Some(("2", k)) => {
            let k: u32 = k.parse().map_err(|_| bad())?;
            1usize.checked_shl(k).filter(|_| k < 48).ok_or_else(bad)
        }
        Some(_) => Err(bad()),
        None => text.parse().map_err(|_| bad()),
    }
}

/// Parses sizes: a comma list of `N` or `2^K` entries, where `A..B` expands to
/// `A, 2A, 4A, ...` up to `B`.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>, ConfigError> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let (mut lo, hi) = (parse_size(a.trim())?, parse_size(b.trim())?);
                if lo == 0 || lo > hi {
                    return Err(ConfigError::new(format!("empty size range `{item}`")));
                }
                while lo <= hi {
                    out.push(lo);
                    lo *= 2;
                }
            }
            None => out.push(parse_size(item)?),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_ranges() {
        assert_eq!(parse_sizes("2^6..2^9").unwrap(), vec![64, 128, 256, 512]);
        assert_eq!(parse_sizes("10, 2^3,100").unwrap(), vec![10, 8, 100]);
        assert_eq!(parse_sizes("64..200").unwrap(), vec![64, 128]);
        assert!(parse_sizes("3^2").is_err());
        assert!(parse_sizes("9..3").is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = ExperimentConfig::new(Command::Norms);
        cfg.p_grid = vec![1.0];
        assert!(cfg.validate().is_err());
        cfg.p_grid = parse_p_grid("1.5, 2").unwrap();
        assert!(cfg.validate().is_ok());
        cfg.sizes = vec![8, 8];
        assert!(cfg.validate().is_err());
        let mut eq = ExperimentConfig::new(Command::Equivalence);
        eq.sizes = vec![8, 16];
        assert!(eq.validate().is_err());
        eq.source = Some(Source::Family {
            spec: "power:alpha=0.75".into(),
            size: 0,
        });
        assert!(eq.validate().is_ok());
    }

    #[test]
    fn seed_is_filled_in() {
        let mut cfg = ExperimentConfig::new(Command::Norms);
        cfg.seed = 11;
        let spec = cfg.family_spec("random").unwrap();
        assert_eq!(spec.params, vec![11.0]);
        let explicit = cfg.family_spec("random:seed=3,decay=1").unwrap();
        assert_eq!(explicit.params, vec![3.0, 1.0]);
    }
}
