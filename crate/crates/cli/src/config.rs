//! Experiment configuration: a single JSON document validated into core
//! types at load time.
//!
//! Hypothesis indices are 1-based in config files and in every output (the
//! usual convention for the math); alphabet symbols are 0-based. Unknown
//! fields are rejected.

use serde::Deserialize;

use lao_core::{Distribution, GivenExponents, HypothesisSet, LogBase, MultiObjectSpec};

use crate::CliError;

fn default_log_base() -> f64 {
    2.0
}

fn default_objects() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub alphabet_size: usize,
    #[serde(default = "default_log_base")]
    pub log_base: f64,
    /// M probability vectors, each of length `alphabet_size`.
    pub distributions: Vec<Vec<f64>>,
    /// Number of independent objects K (default 1).
    #[serde(default = "default_objects")]
    pub objects: usize,
    /// Single-object prescribed exponents (M-1 values), for `objects = 1`.
    #[serde(default)]
    pub given: Option<Vec<f64>>,
    /// Per-object prescribed exponents (K rows of M-1 values), for K >= 2.
    #[serde(default)]
    pub given_per_object: Option<Vec<Vec<f64>>>,
    /// Sample lengths for `simulate`.
    #[serde(default)]
    pub n_grid: Option<Vec<u64>>,
    /// Monte Carlo trials per estimate; omit to skip Monte Carlo.
    #[serde(default)]
    pub trials: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Reliability pairs for single-object `simulate`: 1-based {true, accepted}.
    #[serde(default)]
    pub pairs: Option<Vec<PairSelection>>,
    /// Tuple entries for `tensor` and multi-object `simulate`.
    #[serde(default)]
    pub entries: Option<Vec<TupleSelection>>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSelection {
    #[serde(rename = "true")]
    pub true_hypothesis: usize,
    pub accepted: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleSelection {
    #[serde(rename = "true")]
    pub true_tuple: Vec<usize>,
    pub accepted: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub entry: TupleSelection,
    pub axes: Vec<SweepAxis>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    /// Object the swept prescription belongs to (1-based; required for K >= 2).
    #[serde(default)]
    pub object: Option<usize>,
    /// Hypothesis of the swept prescription (1-based, in 1..M-1).
    pub hypothesis: usize,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

/// A fully validated experiment: core types plus 0-based selections.
pub struct Experiment {
    pub hypotheses: HypothesisSet,
    pub objects: usize,
    /// One prescription per object (a single entry when `objects == 1`).
    pub per_object_given: Vec<GivenExponents>,
    pub n_grid: Option<Vec<u64>>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub pairs: Option<Vec<(usize, usize)>>,
    pub entries: Option<Vec<(Vec<usize>, Vec<usize>)>>,
    pub sweep: Option<ValidatedSweep>,
}

pub struct ValidatedSweep {
    /// 0-based (true tuple, accepted tuple), length = objects.
    pub entry: (Vec<usize>, Vec<usize>),
    /// 0-based (object, hypothesis, start, stop, step).
    pub axes: Vec<(usize, usize, f64, f64, f64)>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config(format!("invalid config: {e}")))
    }

    /// Validates the document into core types. `log_base_override` and
    /// `seed_override` come from the command line and win over the file.
    pub fn validate(
        self,
        log_base_override: Option<f64>,
        seed_override: Option<u64>,
    ) -> Result<Experiment, CliError> {
        let base = LogBase::new(log_base_override.unwrap_or(self.log_base))
            .map_err(CliError::from_config_error)?;

        if self.distributions.is_empty() {
            return Err(CliError::config("no distributions given"));
        }
        let mut dists = Vec::with_capacity(self.distributions.len());
        for (i, probs) in self.distributions.iter().enumerate() {
            if probs.len() != self.alphabet_size {
                return Err(CliError::config(format!(
                    "distribution {} has {} entries, expected alphabet_size = {}",
                    i + 1,
                    probs.len(),
                    self.alphabet_size
                )));
            }
            dists.push(Distribution::new(probs.clone()).map_err(|e| {
                CliError::config(format!("distribution {}: {e}", i + 1))
            })?);
        }
        let hypotheses =
            HypothesisSet::new(dists, base).map_err(CliError::from_config_error)?;
        let m_count = hypotheses.size();

        if self.objects == 0 {
            return Err(CliError::config("objects must be at least 1"));
        }
        let per_object_given = match self.objects {
            1 => {
                if self.given_per_object.is_some() {
                    return Err(CliError::config(
                        "given_per_object requires objects >= 2; use given",
                    ));
                }
                let diag = self
                    .given
                    .clone()
                    .ok_or_else(|| CliError::config("missing given exponents"))?;
                vec![GivenExponents::new(diag).map_err(CliError::from_config_error)?]
            }
            k => {
                if self.given.is_some() {
                    return Err(CliError::config(
                        "given is for objects = 1; use given_per_object",
                    ));
                }
                let rows = self
                    .given_per_object
                    .clone()
                    .ok_or_else(|| CliError::config("missing given_per_object exponents"))?;
                if rows.len() != k {
                    return Err(CliError::config(format!(
                        "given_per_object has {} rows, expected objects = {k}",
                        rows.len()
                    )));
                }
                rows.into_iter()
                    .map(|d| GivenExponents::new(d).map_err(CliError::from_config_error))
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        for given in &per_object_given {
            if given.len() != m_count - 1 {
                return Err(CliError::config(format!(
                    "expected {} prescribed exponents per object, got {}",
                    m_count - 1,
                    given.len()
                )));
            }
        }

        if let Some(grid) = &self.n_grid {
            if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] == 0 {
                return Err(CliError::config(
                    "n_grid must be nonempty, strictly increasing, positive",
                ));
            }
        }

        let to_zero_based = |idx: usize, what: &str| -> Result<usize, CliError> {
            if idx == 0 || idx > m_count {
                return Err(CliError::config(format!(
                    "{what} index {idx} out of range 1..={m_count}"
                )));
            }
            Ok(idx - 1)
        };

        let pairs = match &self.pairs {
            None => None,
            Some(list) => Some(
                list.iter()
                    .map(|p| {
                        Ok((
                            to_zero_based(p.true_hypothesis, "true hypothesis")?,
                            to_zero_based(p.accepted, "accepted hypothesis")?,
                        ))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?,
            ),
        };

        let validate_tuple = |tuple: &[usize], what: &str| -> Result<Vec<usize>, CliError> {
            if tuple.len() != self.objects {
                return Err(CliError::config(format!(
                    "{what} tuple has {} entries, expected objects = {}",
                    tuple.len(),
                    self.objects
                )));
            }
            tuple.iter().map(|&i| to_zero_based(i, what)).collect()
        };

        let entries = match &self.entries {
            None => None,
            Some(list) => Some(
                list.iter()
                    .map(|e| {
                        Ok((
                            validate_tuple(&e.true_tuple, "true")?,
                            validate_tuple(&e.accepted, "accepted")?,
                        ))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?,
            ),
        };

        let sweep = match &self.sweep {
            None => None,
            Some(spec) => {
                let entry = (
                    validate_tuple(&spec.entry.true_tuple, "sweep true")?,
                    validate_tuple(&spec.entry.accepted, "sweep accepted")?,
                );
                let mut axes = Vec::new();
                for axis in &spec.axes {
                    let object = match (self.objects, axis.object) {
                        (1, None) => 0,
                        (1, Some(1)) => 0,
                        (1, Some(o)) => {
                            return Err(CliError::config(format!(
                                "sweep axis object {o} with a single object"
                            )))
                        }
                        (_, None) => {
                            return Err(CliError::config(
                                "sweep axis needs an object for multi-object configs",
                            ))
                        }
                        (k, Some(o)) => {
                            if o == 0 || o > k {
                                return Err(CliError::config(format!(
                                    "sweep axis object {o} out of range 1..={k}"
                                )));
                            }
                            o - 1
                        }
                    };
                    let hypothesis = to_zero_based(axis.hypothesis, "sweep hypothesis")?;
                    if hypothesis >= m_count - 1 {
                        return Err(CliError::config(format!(
                            "sweep hypothesis {} has no prescribed exponent (must be in 1..={})",
                            axis.hypothesis,
                            m_count - 1
                        )));
                    }
                    if !(axis.step > 0.0 && axis.step.is_finite()) {
                        return Err(CliError::config("sweep step must be positive"));
                    }
                    if !axis.stop.is_finite() || axis.stop < axis.start {
                        return Err(CliError::config("sweep stop must be >= start"));
                    }
                    axes.push((object, hypothesis, axis.start, axis.stop, axis.step));
                }
                if axes.is_empty() || axes.len() > 2 {
                    return Err(CliError::config("sweep needs one axis (curve) or two (surface)"));
                }
                if axes.len() == 2 && self.objects != 2 {
                    return Err(CliError::config("two-axis sweeps are for objects = 2"));
                }
                Some(ValidatedSweep { entry, axes })
            }
        };

        Ok(Experiment {
            hypotheses,
            objects: self.objects,
            per_object_given,
            n_grid: self.n_grid,
            trials: self.trials,
            seed: seed_override.or(self.seed).unwrap_or(0),
            pairs,
            entries,
            sweep,
        })
    }
}

impl Experiment {
    pub fn multi_spec(&self) -> Result<MultiObjectSpec, CliError> {
        MultiObjectSpec::new(self.hypotheses.clone(), self.per_object_given.clone())
            .map_err(CliError::from_config_error)
    }
}
