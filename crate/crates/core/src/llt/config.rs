use serde::{Deserialize, Serialize};

use crate::corpus::GaussianMixtureLaw;
use crate::error::{Error, Result};
use crate::hermite::DEFAULT_MAX_DEGREE;
use crate::integrate::QuadratureSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    LltSweep,
    #[serde(rename = "prop1-check")]
    TwoSummandCheck,
    NecessaryCondition,
    BoundsTable,
    PropertySuite,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Self::LltSweep,
        Self::TwoSummandCheck,
        Self::NecessaryCondition,
        Self::BoundsTable,
        Self::PropertySuite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::LltSweep => "llt-sweep",
            Self::TwoSummandCheck => "prop1-check",
            Self::NecessaryCondition => "necessary-condition",
            Self::BoundsTable => "bounds-table",
            Self::PropertySuite => "property-suite",
        }
    }
}

impl std::str::FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|e| e.name()).collect();
                Error::Config(format!(
                    "experiment: unknown name `{s}`, expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

impl std::fmt::Display for Experiment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One experiment: the summand law, the smoothness split `α`, the sample
/// sizes, the truncation degree and the quadrature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LltConfig {
    pub experiment: Experiment,
    pub law: GaussianMixtureLaw,
    pub alpha: f64,
    pub n_values: Vec<usize>,
    pub truncation: usize,
    pub quadrature: QuadratureSpec,
    pub seed: u64,
}

impl LltConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(s).map_err(|e| {
            let msg = e.to_string();
            if msg.contains("untagged enum QuadratureSpec") {
                Error::Config(format!(
                    "quadrature: expected {{\"nodes_1d\": int}} or {{\"qmc_points\": int}} ({msg})"
                ))
            } else {
                Error::Config(msg)
            }
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!(
                "alpha: must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("n_values: must not be empty".into()));
        }
        if self.n_values[0] == 0 {
            return Err(Error::Config("n_values: entries must be positive".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(
                "n_values: must be strictly increasing".into(),
            ));
        }
        if self.truncation == 0 || self.truncation > DEFAULT_MAX_DEGREE {
            return Err(Error::Config(format!(
                "truncation: must lie in 1..={DEFAULT_MAX_DEGREE}, got {}",
                self.truncation
            )));
        }
        match self.quadrature {
            QuadratureSpec::Gauss { nodes_1d } if nodes_1d == 0 || nodes_1d > 100 => {
                return Err(Error::Config(format!(
                    "quadrature.nodes_1d: must lie in 1..=100, got {nodes_1d}"
                )))
            }
            QuadratureSpec::QuasiMonteCarlo { qmc_points } if qmc_points < 2 => {
                return Err(Error::Config(format!(
                    "quadrature.qmc_points: must be at least 2, got {qmc_points}"
                )))
            }
            _ => {}
        }
        self.law.check_integrable()?;
        Ok(())
    }

    /// Canonical JSON: the same knobs always serialize to the same bytes.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
