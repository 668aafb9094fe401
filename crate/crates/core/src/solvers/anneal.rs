use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{IsingProblem, SampleMeta, SampleSet, SpinConfig};
use crate::rng::{mix_seed, rng_from_seed};
use crate::scalar::Scalar;

/// How `beta_min`/`beta_max` are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaScaling {
    /// Divided by the largest coefficient magnitude of the problem.
    #[default]
    MaxCoefficient,
    /// Used as given, in inverse energy units.
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerParams {
    pub reads: usize,
    pub sweeps: usize,
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_scaling: BetaScaling,
    pub seed: u64,
    pub max_postprocess_sweeps: usize,
    /// Independent samples per read.
    pub parallel_copies: usize,
}

impl Default for SamplerParams {
    fn default() -> Self {
        SamplerParams {
            reads: 100,
            sweeps: 64,
            beta_min: 0.1,
            beta_max: 10.0,
            beta_scaling: BetaScaling::MaxCoefficient,
            seed: 0,
            max_postprocess_sweeps: super::DEFAULT_POSTPROCESS_SWEEPS,
            parallel_copies: 1,
        }
    }
}

impl SamplerParams {
    pub fn validate(&self) -> Result<()> {
        if self.reads == 0 || self.parallel_copies == 0 {
            return Err(Error::InvalidParameter(
                "reads and parallel copies must be at least 1".into(),
            ));
        }
        if !(self.beta_min > 0.0 && self.beta_min.is_finite() && self.beta_max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta bounds must be positive and finite, got [{}, {}]",
                self.beta_min, self.beta_max
            )));
        }
        if self.beta_min >= self.beta_max {
            return Err(Error::InvalidParameter(format!(
                "beta_min ({}) must be below beta_max ({})",
                self.beta_min, self.beta_max
            )));
        }
        Ok(())
    }

    pub fn total_samples(&self) -> usize {
        self.reads * self.parallel_copies
    }
}

/// Geometric inverse-temperature ladder with `sweeps` rungs.
pub fn beta_ladder(beta_min: f64, beta_max: f64, sweeps: usize) -> Vec<f64> {
    match sweeps {
        0 => Vec::new(),
        1 => vec![beta_max],
        _ => {
            let ratio = (beta_max / beta_min).ln() / (sweeps - 1) as f64;
            (0..sweeps)
                .map(|k| beta_min * (ratio * k as f64).exp())
                .collect()
        }
    }
}

pub fn random_sample<T: Scalar>(
    problem: &IsingProblem<T>,
    k: usize,
    seed: u64,
) -> Result<SampleSet<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "sample count must be at least 1".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let n = problem.num_spins();
    let configs: Vec<SpinConfig> = (0..k).map(|_| SpinConfig::random(n, &mut rng)).collect();
    let meta = SampleMeta {
        sampler: "random".into(),
        seed,
        reads: k as u64,
        parallel_copies: 1,
        ..Default::default()
    };
    SampleSet::from_configs(problem, configs, meta)
}

/// Metropolis annealing. Chain `c` of read `r` uses seed
/// `mix_seed(seed, r * parallel_copies + c)` and produces one sample.
pub fn simulated_anneal<T: Scalar>(
    problem: &IsingProblem<T>,
    params: &SamplerParams,
) -> Result<SampleSet<T>> {
    params.validate()?;
    let scale = match params.beta_scaling {
        BetaScaling::Absolute => 1.0,
        BetaScaling::MaxCoefficient => {
            let m = problem.max_abs_coefficient().to_f64_lossy();
            if m > 0.0 {
                m
            } else {
                1.0
            }
        }
    };
    let betas: Vec<T> = beta_ladder(
        params.beta_min / scale,
        params.beta_max / scale,
        params.sweeps,
    )
    .into_iter()
    .map(T::lit)
    .collect();
    let n = problem.num_spins();
    let configs: Vec<SpinConfig> = (0..params.total_samples())
        .into_par_iter()
        .map(|chain| {
            let mut rng = rng_from_seed(mix_seed(params.seed, chain as u64));
            let mut s = SpinConfig::random(n, &mut rng);
            anneal_chain(problem, s.as_mut_slice(), &betas, &mut rng);
            s
        })
        .collect();
    let meta = SampleMeta {
        sampler: "sa".into(),
        seed: params.seed,
        reads: params.reads as u64,
        parallel_copies: params.parallel_copies as u64,
        ..Default::default()
    };
    SampleSet::from_configs(problem, configs, meta)
}

fn anneal_chain<T: Scalar, R: Rng + ?Sized>(
    problem: &IsingProblem<T>,
    spins: &mut [i8],
    betas: &[T],
    rng: &mut R,
) {
    for &beta in betas {
        for i in 0..spins.len() {
            let delta = problem.delta_flip_of(spins, i);
            if delta <= T::zero() || rng.random::<f64>() < (-(beta * delta)).to_f64_lossy().exp() {
                spins[i] = -spins[i];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_endpoints() {
        let b = beta_ladder(0.1, 10.0, 64);
        assert_eq!(b.len(), 64);
        assert!((b[0] - 0.1).abs() < 1e-12);
        assert!((b[63] - 10.0).abs() < 1e-9);
        assert!(b.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(beta_ladder(0.1, 10.0, 1), vec![10.0]);
    }

    #[test]
    fn invalid_schedule() {
        let p = IsingProblem::new(2, [], [(0, 1, -1.0)], [], 0.0).unwrap();
        let params = SamplerParams {
            beta_min: 5.0,
            beta_max: 5.0,
            ..Default::default()
        };
        assert!(simulated_anneal(&p, &params).is_err());
        assert!(random_sample(&p, 0, 1).is_err());
    }

    #[test]
    fn sample_count_and_determinism() {
        let p = IsingProblem::new(3, [(0, 0.3)], [(0, 1, -1.0), (1, 2, 0.5)], [], 0.0).unwrap();
        let params = SamplerParams {
            reads: 7,
            parallel_copies: 3,
            seed: 9,
            ..Default::default()
        };
        let a = simulated_anneal(&p, &params).unwrap();
        assert_eq!(a.len(), 21);
        assert_eq!(a, simulated_anneal(&p, &params).unwrap());
    }

    #[test]
    fn ferromagnet_pair_reaches_ground() {
        let p = IsingProblem::new(2, [], [(0, 1, -1.0)], [], 0.0).unwrap();
        let s = simulated_anneal(
            &p,
            &SamplerParams {
                reads: 200,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(s.samples().iter().all(|x| x.energy == -1.0));
    }
}
