use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{IsingProblem, SampleMeta, SampleSet, SpinConfig};
use crate::rng::{mix_seed, rng_from_seed};
use crate::scalar::Scalar;

pub const DEFAULT_POSTPROCESS_SWEEPS: usize = 5;
pub const LOCAL_SOLVER_RESTARTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub config: SpinConfig,
    /// Sweeps performed, including the final zero-flip sweep.
    pub sweeps: usize,
    /// True when a full sweep made no flip, i.e. `config` is a local minimum.
    pub converged: bool,
}

/// Strict-improvement single-flip descent, visiting spins in a fresh random
/// order each sweep. `max_sweeps = None` runs to convergence.
pub fn greedy_descent<T: Scalar, R: Rng + ?Sized>(
    problem: &IsingProblem<T>,
    config: &SpinConfig,
    rng: &mut R,
    max_sweeps: Option<usize>,
) -> Result<Descent> {
    if config.len() != problem.num_spins() {
        return Err(Error::Dimension {
            expected: problem.num_spins(),
            got: config.len(),
        });
    }
    let mut s = config.clone();
    let mut order: Vec<usize> = (0..problem.num_spins()).collect();
    let mut sweeps = 0;
    while max_sweeps.is_none_or(|m| sweeps < m) {
        order.shuffle(rng);
        sweeps += 1;
        let mut flips = 0;
        let spins = s.as_mut_slice();
        for &i in &order {
            if problem.delta_flip_of(spins, i) < T::zero() {
                spins[i] = -spins[i];
                flips += 1;
            }
        }
        if flips == 0 {
            return Ok(Descent {
                config: s,
                sweeps,
                converged: true,
            });
        }
    }
    Ok(Descent {
        config: s,
        sweeps,
        converged: false,
    })
}

pub fn greedy_postprocess<T: Scalar>(
    problem: &IsingProblem<T>,
    config: &SpinConfig,
    seed: u64,
    max_sweeps: usize,
) -> Result<SpinConfig> {
    let mut rng = rng_from_seed(seed);
    Ok(greedy_descent(problem, config, &mut rng, Some(max_sweeps))?.config)
}

/// Postprocesses every sample (expanded by multiplicity); sample `k` uses
/// seed `mix_seed(seed, k)`.
pub fn postprocess_samples<T: Scalar>(
    problem: &IsingProblem<T>,
    samples: &SampleSet<T>,
    seed: u64,
    max_sweeps: usize,
) -> Result<SampleSet<T>> {
    let expanded = samples.expanded();
    let configs = expanded
        .samples()
        .par_iter()
        .enumerate()
        .map(|(k, s)| greedy_postprocess(problem, &s.config, mix_seed(seed, k as u64), max_sweeps))
        .collect::<Result<Vec<_>>>()?;
    let mut meta = samples.meta.clone();
    meta.sampler = format!("{}+greedy", meta.sampler);
    SampleSet::from_configs(problem, configs, meta)
}

pub fn is_local_min<T: Scalar>(problem: &IsingProblem<T>, config: &SpinConfig) -> Result<bool> {
    if config.len() != problem.num_spins() {
        return Err(Error::Dimension {
            expected: problem.num_spins(),
            got: config.len(),
        });
    }
    let s = config.as_slice();
    Ok((0..problem.num_spins()).all(|i| problem.delta_flip_of(s, i) >= T::zero()))
}

/// Best of five greedy descents from independent random starts.
pub fn local_solver<T: Scalar>(problem: &IsingProblem<T>, seed: u64) -> SpinConfig {
    let mut best: Option<(T, SpinConfig)> = None;
    for r in 0..LOCAL_SOLVER_RESTARTS {
        let mut rng = rng_from_seed(mix_seed(seed, r as u64));
        let start = SpinConfig::random(problem.num_spins(), &mut rng);
        let d = greedy_descent(problem, &start, &mut rng, None).expect("start has problem length");
        let e = problem.energy_of(d.config.as_slice());
        if best.as_ref().is_none_or(|(b, _)| e < *b) {
            best = Some((e, d.config));
        }
    }
    best.expect("at least one restart").1
}

/// `k` independent local-solver outputs; run `i` uses seed `mix_seed(seed, i)`.
pub fn local_solver_samples<T: Scalar>(
    problem: &IsingProblem<T>,
    k: usize,
    seed: u64,
) -> Result<SampleSet<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "sample count must be at least 1".into(),
        ));
    }
    let configs: Vec<SpinConfig> = (0..k)
        .into_par_iter()
        .map(|i| local_solver(problem, mix_seed(seed, i as u64)))
        .collect();
    let meta = SampleMeta {
        sampler: "local".into(),
        seed,
        reads: k as u64,
        parallel_copies: 1,
        ..Default::default()
    };
    SampleSet::from_configs(problem, configs, meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_field_flips() {
        let p = IsingProblem::new(1, [(0, 1.0)], [], [], 0.0).unwrap();
        let up = SpinConfig::new(vec![1]).unwrap();
        assert!(!is_local_min(&p, &up).unwrap());
        let out = greedy_postprocess(&p, &up, 3, 5).unwrap();
        assert_eq!(out.as_slice(), &[-1]);
        assert!(is_local_min(&p, &out).unwrap());
    }

    #[test]
    fn local_minimum_is_fixed_after_one_sweep() {
        let p = IsingProblem::new(3, [], [(0, 1, -1.0), (1, 2, -1.0)], [], 0.0).unwrap();
        let gs = SpinConfig::uniform(3, 1);
        let d = greedy_descent(&p, &gs, &mut rng_from_seed(0), Some(5)).unwrap();
        assert_eq!(
            d,
            Descent {
                config: gs,
                sweeps: 1,
                converged: true
            }
        );
    }

    #[test]
    fn zero_sweeps_returns_input() {
        let p = IsingProblem::new(1, [(0, 1.0)], [], [], 0.0).unwrap();
        let up = SpinConfig::new(vec![1]).unwrap();
        let d = greedy_descent(&p, &up, &mut rng_from_seed(0), Some(0)).unwrap();
        assert!(!d.converged);
        assert_eq!(d.config, up);
    }

    #[test]
    fn ties_do_not_flip() {
        // Zero delta must not flip.
        let p = IsingProblem::new(2, [], [(0, 1, 0.0)], [], 0.0).unwrap();
        let c = SpinConfig::new(vec![1, -1]).unwrap();
        assert_eq!(greedy_postprocess(&p, &c, 1, 5).unwrap(), c);
    }

    #[test]
    fn dimension_checked() {
        let p = IsingProblem::new(2, [(0, 1.0)], [], [], 0.0).unwrap();
        assert!(is_local_min(&p, &SpinConfig::uniform(3, 1)).is_err());
        assert!(greedy_postprocess(&p, &SpinConfig::uniform(1, 1), 0, 5).is_err());
    }
}
