use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::bits::Bitstring;
use crate::dd::DdOption;
use crate::error::{Error, Result};
use crate::grover::{optimal_iterations, MAX_MCZ_QUBITS};
use crate::noise::CalibrationSet;

pub const DEFAULT_SHOTS: u64 = 10_000;
pub const DEFAULT_ENSEMBLE: usize = 400;

/// Iteration counts as `"a..b"` (inclusive), a single number, or a list.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum IterationSpec {
    Count(usize),
    List(Vec<usize>),
    Range(String),
}

impl IterationSpec {
    pub fn expand(&self) -> Result<Vec<usize>> {
        match self {
            IterationSpec::Count(k) => Ok(vec![*k]),
            IterationSpec::List(v) => Ok(v.clone()),
            IterationSpec::Range(s) => parse_iterations(s),
        }
    }
}

/// `"1..4"` is `[1, 2, 3, 4]`; `"3"` is `[3]`; `"1,3"` is `[1, 3]`.
pub fn parse_iterations(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("cannot read iterations {s:?}; expected a..b, k or a comma list"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|k| k.trim().parse().map_err(|_| bad())).collect()
}

/// One decoupling option or several.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum DdSpec {
    One(String),
    Many(Vec<String>),
}

impl DdSpec {
    pub fn expand(&self) -> Result<Vec<DdOption>> {
        match self {
            DdSpec::One(s) => s.split(',').map(str::parse).collect(),
            DdSpec::Many(v) => v.iter().map(|s| s.parse()).collect(),
        }
    }
}

/// Partially specified configuration, as read from a file or the command line.
/// Later layers override earlier ones field by field.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub qubits: Option<usize>,
    pub target: Option<String>,
    pub iterations: Option<IterationSpec>,
    pub dd: Option<DdSpec>,
    pub calibration: Option<String>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub sigma_z: Option<f64>,
    pub exact: Option<bool>,
    pub ensemble: Option<usize>,
    pub min_slack: Option<f64>,
    pub out: Option<PathBuf>,
}

impl ConfigLayer {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e.message())))
    }

    pub fn merge(self, over: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            qubits: over.qubits.or(self.qubits),
            target: over.target.or(self.target),
            iterations: over.iterations.or(self.iterations),
            dd: over.dd.or(self.dd),
            calibration: over.calibration.or(self.calibration),
            shots: over.shots.or(self.shots),
            seed: over.seed.or(self.seed),
            sigma_z: over.sigma_z.or(self.sigma_z),
            exact: over.exact.or(self.exact),
            ensemble: over.ensemble.or(self.ensemble),
            min_slack: over.min_slack.or(self.min_slack),
            out: over.out.or(self.out),
        }
    }

    /// Fills defaults and validates.
    pub fn resolve(self) -> Result<ExperimentConfig> {
        let target: Bitstring = self
            .target
            .ok_or_else(|| Error::Config("no target bitstring given".into()))?
            .parse()
            .map_err(|e: Error| Error::Config(e.to_string()))?;
        let n = self.qubits.unwrap_or(target.len());
        if target.len() != n {
            return Err(Error::Config(format!("target {target} has {} bits but qubits = {n}", target.len())));
        }
        if !(1..=MAX_MCZ_QUBITS).contains(&n) {
            return Err(Error::Config(format!("qubits = {n} outside the supported range 1..={MAX_MCZ_QUBITS}")));
        }
        let optimal = optimal_iterations(n)?;
        let iterations = match self.iterations {
            Some(spec) => spec.expand()?,
            None => (1..=optimal).collect(),
        };
        if let Some(k) = iterations.iter().find(|&&k| k > 2 * optimal) {
            return Err(Error::Config(format!("{k} iterations exceeds twice the optimum {optimal} for {n} qubits")));
        }
        let dd = match self.dd {
            Some(spec) => spec.expand()?,
            None => vec![DdOption::Free],
        };
        if dd.is_empty() {
            return Err(Error::Config("no decoupling option given".into()));
        }
        let calibration = match self.calibration {
            Some(spec) => {
                let cal = CalibrationSet::resolve(&spec).map_err(|e| match e {
                    Error::Config(_) => e,
                    other => Error::Config(other.to_string()),
                })?;
                if cal.n_qubits() != n {
                    return Err(Error::Config(format!(
                        "calibration {} describes {} qubits, experiment uses {n}",
                        cal.label(),
                        cal.n_qubits()
                    )));
                }
                Some(cal)
            }
            None => None,
        };
        let shots = self.shots.unwrap_or(DEFAULT_SHOTS);
        if shots == 0 {
            return Err(Error::Config("shots must be at least 1".into()));
        }
        let sigma_z = self.sigma_z.unwrap_or(0.0);
        if !(sigma_z >= 0.0 && sigma_z.is_finite()) {
            return Err(Error::Config(format!("sigma_z = {sigma_z} must be finite and ≥ 0")));
        }
        let ensemble = self.ensemble.unwrap_or(DEFAULT_ENSEMBLE);
        if ensemble == 0 {
            return Err(Error::Config("ensemble must be at least 1".into()));
        }
        let min_slack = self.min_slack.unwrap_or(0.0);
        if !(min_slack >= 0.0 && min_slack.is_finite()) {
            return Err(Error::Config(format!("min_slack = {min_slack} must be finite and ≥ 0")));
        }
        Ok(ExperimentConfig {
            target,
            iterations,
            dd,
            calibration,
            shots,
            seed: self.seed.unwrap_or(0),
            sigma_z,
            exact: self.exact.unwrap_or(false),
            ensemble,
            min_slack,
            out: self.out,
        })
    }
}

/// A validated experiment: every `(iterations, dd)` pair is one grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub target: Bitstring,
    pub iterations: Vec<usize>,
    pub dd: Vec<DdOption>,
    /// `None` runs without relaxation, gate or readout error.
    pub calibration: Option<CalibrationSet>,
    pub shots: u64,
    pub seed: u64,
    /// Standard deviation of the quasi-static detuning, rad/s.
    pub sigma_z: f64,
    /// Report the model probability itself rather than a shot estimate.
    pub exact: bool,
    /// Detuning draws averaged per cell when `sigma_z > 0`.
    pub ensemble: usize,
    pub min_slack: f64,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Noise-free, exact-mode configuration with a single `free` option.
    pub fn new(target: Bitstring, iterations: Vec<usize>) -> Self {
        Self {
            target,
            iterations,
            dd: vec![DdOption::Free],
            calibration: None,
            shots: DEFAULT_SHOTS,
            seed: 0,
            sigma_z: 0.0,
            exact: true,
            ensemble: DEFAULT_ENSEMBLE,
            min_slack: 0.0,
            out: None,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.target.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_forms() {
        assert_eq!(parse_iterations("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_iterations("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_iterations("3").unwrap(), vec![3]);
        assert_eq!(parse_iterations("0,2").unwrap(), vec![0, 2]);
        assert!(parse_iterations("4..1").is_err());
        assert!(parse_iterations("x").is_err());
    }

    #[test]
    fn file_and_overrides() {
        let file = ConfigLayer::from_toml_str(
            r#"
target = "01011"
iterations = "1..4"
dd = ["free", "T2"]
calibration = "pittsburgh-5q"
seed = 3
"#,
        )
        .unwrap();
        let flags = ConfigLayer {
            seed: Some(9),
            dd: Some(DdSpec::One("xy4".into())),
            ..Default::default()
        };
        let cfg = file.merge(flags).resolve().unwrap();
        assert_eq!(cfg.n_qubits(), 5);
        assert_eq!(cfg.iterations, vec![1, 2, 3, 4]);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.dd.len(), 1);
        assert_eq!(cfg.dd[0].label(), "XY4");
        assert_eq!(cfg.shots, 10_000);
        assert!(!cfg.exact);
    }

    #[test]
    fn invalid_configs() {
        let base = ConfigLayer {
            target: Some("010".into()),
            ..Default::default()
        };
        let bad = [
            ConfigLayer { qubits: Some(4), ..base.clone() },
            ConfigLayer { shots: Some(0), ..base.clone() },
            ConfigLayer { dd: Some(DdSpec::One("t5".into())), ..base.clone() },
            ConfigLayer { calibration: Some("pittsburgh-5q".into()), ..base.clone() },
            ConfigLayer { iterations: Some(IterationSpec::Count(5)), ..base.clone() },
            ConfigLayer { sigma_z: Some(-1.0), ..base.clone() },
            ConfigLayer { target: Some("0101011".into()), ..Default::default() },
            ConfigLayer::default(),
        ];
        for layer in bad {
            assert!(matches!(layer.clone().resolve(), Err(Error::Config(_))), "{layer:?}");
        }
        assert!(ConfigLayer::from_toml_str("colour = 1").is_err());
    }
}
