use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{IsingProblem, SampleMeta, SampleSet, SpinConfig};
use crate::rng::rng_from_seed;
use crate::scalar::Scalar;

use super::schedule::AnnealSchedule;

pub const MAX_SIM_SPINS: usize = 20;

/// Amplitudes over the computational basis; bit `i` of the index set means
/// spin `i` is `+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState<T> {
    num_spins: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> QuantumState<T> {
    pub fn uniform(num_spins: usize) -> Result<Self> {
        check_size(num_spins)?;
        let dim = 1usize << num_spins;
        let a = T::one() / T::lit(dim as f64).sqrt();
        Ok(QuantumState {
            num_spins,
            amps: vec![Complex::new(a, T::zero()); dim],
        })
    }

    pub fn basis(config: &SpinConfig) -> Result<Self> {
        check_size(config.len())?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << config.len()];
        amps[config.to_bits() as usize] = Complex::new(T::one(), T::zero());
        Ok(QuantumState {
            num_spins: config.len(),
            amps,
        })
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn probability_of(&self, config: &SpinConfig) -> Result<T> {
        if config.len() != self.num_spins {
            return Err(Error::Dimension {
                expected: self.num_spins,
                got: config.len(),
            });
        }
        Ok(self.amps[config.to_bits() as usize].norm_sqr())
    }

    /// `exp(iθ Σ X_i)`, one single-qubit rotation per spin.
    fn mix(&mut self, theta: T) {
        let c = theta.cos();
        let s = Complex::new(T::zero(), theta.sin());
        for q in 0..self.num_spins {
            let bit = 1usize << q;
            for i in 0..self.amps.len() {
                if i & bit == 0 {
                    let (a, b) = (self.amps[i], self.amps[i | bit]);
                    self.amps[i] = a * c + b * s;
                    self.amps[i | bit] = b * c + a * s;
                }
            }
        }
    }

    /// `exp(-i·w·E(x))` on each basis state.
    fn phase(&mut self, energies: &[T], w: T) {
        for (a, &e) in self.amps.iter_mut().zip(energies) {
            let phi = -w * e;
            *a *= Complex::new(phi.cos(), phi.sin());
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_SIM_SPINS {
        return Err(Error::TooLarge {
            num_spins: n,
            limit: MAX_SIM_SPINS,
            hint: "state-vector simulation is limited to small instances",
        });
    }
    Ok(())
}

/// Symmetric split-step evolution from the uniform superposition. Slice `k`
/// uses the schedule weights at its midpoint and applies half a mixer step,
/// the full problem phase, then half a mixer step. Every factor is unitary,
/// so the state is not renormalized.
pub fn trotter_anneal<T: Scalar>(
    problem: &IsingProblem<T>,
    schedule: &AnnealSchedule<T>,
) -> Result<QuantumState<T>> {
    if !problem.is_quadratic() {
        return Err(Error::NotQuadratic(problem.cubic().len()));
    }
    schedule.validate()?;
    let n = problem.num_spins();
    let mut state = QuantumState::uniform(n)?;
    if schedule.slices == 0 || schedule.total_time == T::zero() {
        return Ok(state);
    }
    let energies: Vec<T> = (0..1u64 << n)
        .map(|b| problem.energy_of(SpinConfig::from_bits(b, n).as_slice()))
        .collect();
    let dt = schedule.dt();
    let half = T::lit(0.5);
    for k in 0..schedule.slices {
        let (a, b) = schedule.weights(k);
        state.mix(a * dt * half);
        state.phase(&energies, b * dt);
        state.mix(a * dt * half);
    }
    Ok(state)
}

/// Draws `shots` configurations from `|amplitude|²`.
pub fn measure<T: Scalar>(
    state: &QuantumState<T>,
    problem: &IsingProblem<T>,
    shots: usize,
    seed: u64,
) -> Result<SampleSet<T>> {
    if problem.num_spins() != state.num_spins {
        return Err(Error::Dimension {
            expected: state.num_spins,
            got: problem.num_spins(),
        });
    }
    let mut cdf = Vec::with_capacity(state.amps.len());
    let mut acc = 0.0;
    for a in &state.amps {
        acc += a.norm_sqr().to_f64_lossy();
        cdf.push(acc);
    }
    let mut rng = rng_from_seed(seed);
    let mut counts = vec![0u64; cdf.len()];
    for _ in 0..shots {
        let u = rng.random::<f64>() * acc;
        let k = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
        counts[k] += 1;
    }
    let entries = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(b, &c)| (SpinConfig::from_bits(b as u64, state.num_spins), c));
    let meta = SampleMeta {
        sampler: "qa_sim".into(),
        seed,
        reads: shots as u64,
        parallel_copies: 1,
        ..Default::default()
    };
    SampleSet::from_weighted(problem, entries, meta)
}

/// `(mean energy - ground_energy) / num_spins`.
pub fn residual_energy<T: Scalar>(
    samples: &SampleSet<T>,
    problem: &IsingProblem<T>,
    ground_energy: T,
) -> Result<T> {
    let mean = samples.mean_energy()?;
    Ok((mean - ground_energy) / T::lit(problem.num_spins() as f64))
}
