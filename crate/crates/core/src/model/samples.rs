use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{IsingProblem, SpinConfig};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample<T> {
    pub config: SpinConfig,
    pub energy: T,
    pub multiplicity: u64,
}

/// Provenance and timing of a [`SampleSet`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub sampler: String,
    pub seed: u64,
    /// Total wall time spent producing the samples, when measured.
    pub wall_time_ms: Option<f64>,
    /// Wall time per returned sample.
    pub t_sample_ms: Option<f64>,
    pub reads: u64,
    pub parallel_copies: u64,
}

/// Configurations drawn from one problem, each with its energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet<T> {
    samples: Vec<Sample<T>>,
    pub meta: SampleMeta,
}

impl<T: Scalar> SampleSet<T> {
    /// Evaluates every configuration on `problem` (multiplicity 1 each).
    pub fn from_configs(
        problem: &IsingProblem<T>,
        configs: impl IntoIterator<Item = SpinConfig>,
        meta: SampleMeta,
    ) -> Result<Self> {
        let samples = configs
            .into_iter()
            .map(|config| {
                let energy = problem.energy(&config)?;
                Ok(Sample {
                    config,
                    energy,
                    multiplicity: 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SampleSet { samples, meta })
    }

    /// Adds weighted configurations, re-evaluating energies on `problem`.
    pub fn from_weighted(
        problem: &IsingProblem<T>,
        entries: impl IntoIterator<Item = (SpinConfig, u64)>,
        meta: SampleMeta,
    ) -> Result<Self> {
        let samples = entries
            .into_iter()
            .map(|(config, multiplicity)| {
                if multiplicity == 0 {
                    return Err(Error::InvalidParameter(
                        "multiplicity must be at least 1".into(),
                    ));
                }
                let energy = problem.energy(&config)?;
                Ok(Sample {
                    config,
                    energy,
                    multiplicity,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SampleSet { samples, meta })
    }

    pub fn samples(&self) -> &[Sample<T>] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.samples.iter().map(|s| s.multiplicity).sum()
    }

    pub fn configs(&self) -> impl Iterator<Item = &SpinConfig> {
        self.samples.iter().map(|s| &s.config)
    }

    /// Multiplicity-weighted mean energy.
    pub fn mean_energy(&self) -> Result<T> {
        let total = self.total_multiplicity();
        if total == 0 {
            return Err(Error::EmptySamples);
        }
        let sum: T = self
            .samples
            .iter()
            .map(|s| s.energy * T::lit(s.multiplicity as f64))
            .sum();
        Ok(sum / T::lit(total as f64))
    }

    pub fn min_energy(&self) -> Option<T> {
        self.samples
            .iter()
            .map(|s| s.energy)
            .fold(None, |acc, e| match acc {
                Some(m) if m <= e => Some(m),
                _ => Some(e),
            })
    }

    /// Records the wall time and derives `t_sample = wall / Σ multiplicities`.
    pub fn record_wall_time(&mut self, wall_time_ms: f64) {
        self.meta.wall_time_ms = Some(wall_time_ms);
        let n = self.total_multiplicity();
        self.meta.t_sample_ms = (n > 0).then(|| wall_time_ms / n as f64);
    }

    /// Merges identical configurations, summing multiplicities. Output order
    /// is sorted by configuration.
    pub fn aggregated(&self) -> Self {
        let mut merged: std::collections::BTreeMap<&SpinConfig, (T, u64)> = Default::default();
        for s in &self.samples {
            merged.entry(&s.config).or_insert((s.energy, 0)).1 += s.multiplicity;
        }
        SampleSet {
            samples: merged
                .into_iter()
                .map(|(config, (energy, multiplicity))| Sample {
                    config: config.clone(),
                    energy,
                    multiplicity,
                })
                .collect(),
            meta: self.meta.clone(),
        }
    }

    /// Splits every entry into unit-multiplicity copies.
    pub fn expanded(&self) -> Self {
        SampleSet {
            samples: self
                .samples
                .iter()
                .flat_map(|s| {
                    std::iter::repeat_n(
                        Sample {
                            config: s.config.clone(),
                            energy: s.energy,
                            multiplicity: 1,
                        },
                        s.multiplicity as usize,
                    )
                })
                .collect(),
            meta: self.meta.clone(),
        }
    }

    /// Maps each configuration through `f` and re-evaluates on `problem`.
    pub fn map_configs(
        &self,
        problem: &IsingProblem<T>,
        mut f: impl FnMut(usize, &SpinConfig) -> SpinConfig,
    ) -> Result<Self> {
        let entries: Vec<_> = self
            .samples
            .iter()
            .enumerate()
            .map(|(idx, s)| (f(idx, &s.config), s.multiplicity))
            .collect();
        Self::from_weighted(problem, entries, self.meta.clone())
    }

    pub fn energies(&self) -> impl Iterator<Item = (T, u64)> + '_ {
        self.samples.iter().map(|s| (s.energy, s.multiplicity))
    }
}
