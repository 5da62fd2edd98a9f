use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::circuit::{GateDurations, NativeKind, Time};
use crate::error::{Error, Result};

macro_rules! bundled {
    ($($label:literal),* $(,)?) => {
        const BUNDLED: &[(&str, &str)] = &[
            $(($label, include_str!(concat!("../../calibrations/", $label, ".toml")))),*
        ];
    };
}

bundled!(
    "torino-3q",
    "torino-4q",
    "torino-5q",
    "torino-6q",
    "marrakesh-3q",
    "marrakesh-4q",
    "marrakesh-5q",
    "marrakesh-6q",
    "pittsburgh-3q",
    "pittsburgh-4q",
    "pittsburgh-5q",
    "pittsburgh-6q",
);

/// Labels of the calibration files compiled into the crate.
pub fn bundled_labels() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(label, _)| *label)
}

/// A per-qubit list, or summary statistics expanded to the mean.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Values {
    Scalar(f64),
    PerQubit(Vec<f64>),
    Aggregate {
        mean: f64,
        #[allow(dead_code)]
        min: Option<f64>,
        #[allow(dead_code)]
        max: Option<f64>,
    },
}

impl Values {
    fn expand(&self, field: &str, n: usize) -> Result<Vec<f64>> {
        match self {
            Values::Scalar(v) | Values::Aggregate { mean: v, .. } => Ok(vec![*v; n]),
            Values::PerQubit(v) if v.len() == n => Ok(v.clone()),
            Values::PerQubit(v) => Err(Error::Config(format!("{field} lists {} values for {n} qubits", v.len()))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairEntry {
    qubits: [usize; 2],
    error: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CalibrationFile {
    label: String,
    #[serde(default)]
    device: Option<String>,
    qubits: Vec<u32>,
    t1_us: Values,
    t2_us: Values,
    readout_error: Values,
    twoq_error: Values,
    #[serde(default)]
    twoq_pairs: Vec<PairEntry>,
    #[serde(default)]
    durations_ns: BTreeMap<NativeKind, f64>,
}

/// Device properties for the register in use, in seconds and probabilities.
/// Index `i` refers to logical qubit `i`; `physical_qubits` records where it
/// sat on the device.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationSet {
    label: String,
    device: Option<String>,
    physical_qubits: Vec<u32>,
    t1: Vec<f64>,
    t2: Vec<f64>,
    readout_error: Vec<f64>,
    twoq_default: f64,
    twoq_pairs: BTreeMap<(usize, usize), f64>,
    durations: GateDurations,
    clamped: Vec<usize>,
}

impl CalibrationSet {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: CalibrationFile = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        Self::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let file: CalibrationFile = toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::from_file(file)
    }

    pub fn bundled(label: &str) -> Result<Self> {
        let key = label.to_ascii_lowercase();
        BUNDLED
            .iter()
            .find(|(l, _)| *l == key)
            .map(|(_, text)| Self::from_toml_str(text))
            .unwrap_or_else(|| {
                Err(Error::Config(format!(
                    "unknown calibration {label:?}; bundled labels are {}",
                    bundled_labels().collect::<Vec<_>>().join(", ")
                )))
            })
    }

    /// Bundled label if one matches, otherwise a file path.
    pub fn resolve(spec: &str) -> Result<Self> {
        if BUNDLED.iter().any(|(l, _)| l.eq_ignore_ascii_case(spec)) {
            Self::bundled(spec)
        } else {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(Error::Config(format!("{spec:?} is neither a bundled calibration nor a file")));
            }
            Self::load(path)
        }
    }

    fn from_file(file: CalibrationFile) -> Result<Self> {
        let n = file.qubits.len();
        if n == 0 {
            return Err(Error::Config("calibration lists no qubits".into()));
        }
        let micro = |v: Vec<f64>| v.into_iter().map(|x| x / 1e6).collect::<Vec<_>>();
        let t1 = micro(file.t1_us.expand("t1_us", n)?);
        let mut t2 = micro(file.t2_us.expand("t2_us", n)?);
        let readout_error = file.readout_error.expand("readout_error", n)?;
        let twoq_default = match file.twoq_error {
            Values::Scalar(v) | Values::Aggregate { mean: v, .. } => v,
            Values::PerQubit(_) => {
                return Err(Error::Config("twoq_error must be a number or {mean, max}; use twoq_pairs for per-pair values".into()))
            }
        };

        for (q, (&a, &b)) in t1.iter().zip(&t2).enumerate() {
            if !(a > 0.0 && a.is_finite()) || !(b > 0.0 && b.is_finite()) {
                return Err(Error::Config(format!("qubit {q}: T1 and T2 must be positive (got {a:e} s, {b:e} s)")));
            }
        }
        let mut clamped = Vec::new();
        for q in 0..n {
            if t2[q] > 2.0 * t1[q] {
                log::warn!(
                    "{}: qubit {q} has T2 = {:.3} us > 2 T1 = {:.3} us; clamping T2 to 2 T1",
                    file.label,
                    t2[q] * 1e6,
                    2.0 * t1[q] * 1e6
                );
                t2[q] = 2.0 * t1[q];
                clamped.push(q);
            }
        }
        for (q, &e) in readout_error.iter().enumerate() {
            check_probability(&format!("qubit {q} readout_error"), e)?;
        }
        check_probability("twoq_error", twoq_default)?;
        let mut twoq_pairs = BTreeMap::new();
        for entry in file.twoq_pairs {
            let [a, b] = entry.qubits;
            if a >= n || b >= n || a == b {
                return Err(Error::Config(format!("twoq pair {:?} is not a pair of distinct qubits < {n}", entry.qubits)));
            }
            check_probability(&format!("twoq error of pair ({a}, {b})"), entry.error)?;
            twoq_pairs.insert((a.min(b), a.max(b)), entry.error);
        }
        let mut durations = GateDurations::default();
        for (kind, ns) in file.durations_ns {
            if !(ns > 0.0 && ns.is_finite()) {
                return Err(Error::Config(format!("duration of {kind:?} must be positive (got {ns} ns)")));
            }
            durations.set(kind, Time::from_ns_f64(ns));
        }

        Ok(Self {
            label: file.label,
            device: file.device,
            physical_qubits: file.qubits,
            t1,
            t2,
            readout_error,
            twoq_default,
            twoq_pairs,
            durations,
            clamped,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn device(&self) -> Option<&str> {
        self.device.as_deref()
    }

    pub fn n_qubits(&self) -> usize {
        self.physical_qubits.len()
    }

    pub fn physical_qubits(&self) -> &[u32] {
        &self.physical_qubits
    }

    /// Seconds.
    pub fn t1(&self) -> &[f64] {
        &self.t1
    }

    /// Seconds, after clamping to `2·T1`.
    pub fn t2(&self) -> &[f64] {
        &self.t2
    }

    pub fn readout_error(&self) -> &[f64] {
        &self.readout_error
    }

    /// Error of a CZ between logical qubits `a` and `b`.
    pub fn twoq_error(&self, a: usize, b: usize) -> f64 {
        self.twoq_pairs
            .get(&(a.min(b), a.max(b)))
            .copied()
            .unwrap_or(self.twoq_default)
    }

    pub fn durations(&self) -> &GateDurations {
        &self.durations
    }

    /// Qubits whose T2 was clamped on load.
    pub fn clamped_qubits(&self) -> &[usize] {
        &self.clamped
    }

    /// Copy with every two-qubit error multiplied by `factor`.
    pub fn with_twoq_scaled(&self, factor: f64) -> Result<Self> {
        if !(factor >= 0.0 && factor.is_finite()) {
            return Err(Error::Config(format!("scale factor {factor} must be ≥ 0")));
        }
        let mut out = self.clone();
        out.twoq_default *= factor;
        check_probability("scaled twoq_error", out.twoq_default)?;
        for e in out.twoq_pairs.values_mut() {
            *e *= factor;
            check_probability("scaled twoq_error", *e)?;
        }
        out.label = format!("{}x{factor}", self.label);
        Ok(out)
    }
}

fn check_probability(what: &str, p: f64) -> Result<()> {
    if (0.0..=0.5).contains(&p) {
        Ok(())
    } else {
        Err(Error::Config(format!("{what} = {p} is outside [0, 0.5]")))
    }
}
