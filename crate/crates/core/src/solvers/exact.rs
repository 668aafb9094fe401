use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{IsingProblem, SpinConfig};
use crate::scalar::Scalar;

pub const DEFAULT_EXACT_LIMIT: usize = 32;

/// Exact ground-state summary.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult<T> {
    pub ground_energy: T,
    /// Number of configurations attaining the ground energy.
    pub ground_count: u64,
    pub witness: SpinConfig,
    /// Configurations actually visited (half the space when global spin
    /// reversal is a symmetry).
    pub enumerated_states: u64,
}

/// Gray-code enumeration with incremental local fields.
///
/// The space is split on the top bits into independent chunks that run in
/// parallel; the witness is the first minimizer in chunk order, so the result
/// does not depend on the thread count. Energies within `1e-9·(1 + Σ|c|)` of
/// the minimum count as ground states.
pub fn exact_ground<T: Scalar>(problem: &IsingProblem<T>, limit: usize) -> Result<ExactResult<T>> {
    let n = problem.num_spins();
    if n > limit || n > 62 {
        return Err(Error::TooLarge {
            num_spins: n,
            limit: limit.min(62),
            hint: "use a sampler, or supply the optimum in the instance metadata",
        });
    }
    let p64: IsingProblem<f64> = problem.cast();
    let tol = 1e-9 * (1.0 + p64.coefficients().map(f64::abs).sum::<f64>());
    // With only couplings, s and -s have equal energy: pin the last spin.
    let symmetric = p64.linear().is_empty() && p64.is_quadratic() && n > 1;
    let free = if symmetric { n - 1 } else { n };
    let top = if free >= 16 { 6.min(free - 10) } else { 0 };
    let low = free - top;

    let chunks: Vec<Best> = (0..1u64 << top)
        .into_par_iter()
        .map(|c| enumerate_chunk(&p64, n, c << low, low, tol))
        .collect();
    let mut best = chunks[0].clone();
    for c in &chunks[1..] {
        best.merge(c, tol);
    }
    let multiplier = if symmetric { 2 } else { 1 };
    let witness = SpinConfig::from_bits(best.bits, n);
    Ok(ExactResult {
        ground_energy: problem.energy(&witness)?,
        ground_count: best.count * multiplier,
        witness,
        enumerated_states: 1u64 << free,
    })
}

#[derive(Debug, Clone)]
struct Best {
    energy: f64,
    count: u64,
    bits: u64,
}

impl Best {
    fn merge(&mut self, other: &Best, tol: f64) {
        if other.energy < self.energy - tol {
            *self = other.clone();
        } else if (other.energy - self.energy).abs() <= tol {
            self.count += other.count;
        }
    }
}

fn enumerate_chunk(p: &IsingProblem<f64>, n: usize, start: u64, low: usize, tol: f64) -> Best {
    let mut spins = SpinConfig::from_bits(start, n).into_vec();
    let mut field: Vec<f64> = (0..n).map(|i| p.local_field(&spins, i)).collect();
    let mut energy = p.energy_of(&spins);
    let mut bits = start;
    let mut best = Best {
        energy,
        count: 1,
        bits,
    };
    for step in 1..(1u64 << low) {
        let i = step.trailing_zeros() as usize;
        energy -= 2.0 * field[i] * spins[i] as f64;
        spins[i] = -spins[i];
        bits ^= 1 << i;
        let d = 2.0 * spins[i] as f64;
        for &(j, c) in p.pair_terms(i) {
            field[j] += c * d;
        }
        for &(j, k, c) in p.triple_terms(i) {
            field[j] += c * d * spins[k] as f64;
            field[k] += c * d * spins[j] as f64;
        }
        if energy < best.energy - tol {
            // Resynchronize to keep drift from accumulating along the walk.
            energy = p.energy_of(&spins);
            best = Best {
                energy,
                count: 1,
                bits,
            };
        } else if (energy - best.energy).abs() <= tol {
            best.count += 1;
        }
    }
    best
}

/// Full re-evaluation of every configuration. Reference for tests.
pub fn naive_ground<T: Scalar>(problem: &IsingProblem<T>) -> Result<ExactResult<T>> {
    let n = problem.num_spins();
    if n > 24 {
        return Err(Error::TooLarge {
            num_spins: n,
            limit: 24,
            hint: "naive enumeration is for cross-checks only",
        });
    }
    let p64: IsingProblem<f64> = problem.cast();
    let tol = 1e-9 * (1.0 + p64.coefficients().map(f64::abs).sum::<f64>());
    let mut best = Best {
        energy: f64::INFINITY,
        count: 0,
        bits: 0,
    };
    for bits in 0..1u64 << n {
        let e = p64.energy_of(SpinConfig::from_bits(bits, n).as_slice());
        best.merge(
            &Best {
                energy: e,
                count: 1,
                bits,
            },
            tol,
        );
    }
    let witness = SpinConfig::from_bits(best.bits, n);
    Ok(ExactResult {
        ground_energy: problem.energy(&witness)?,
        ground_count: best.count,
        witness,
        enumerated_states: 1 << n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_and_triangle() {
        let p = IsingProblem::new(2, [], [(0, 1, -1.0)], [], 0.0).unwrap();
        let r = exact_ground(&p, 32).unwrap();
        assert_eq!((r.ground_energy, r.ground_count), (-1.0, 2));
        let t = IsingProblem::new(3, [], [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], [], 0.0).unwrap();
        let r = exact_ground(&t, 32).unwrap();
        assert_eq!((r.ground_energy, r.ground_count), (-1.0, 6));
    }

    #[test]
    fn refuses_large() {
        let p = IsingProblem::<f64>::new(40, [], [(0, 1, -1.0)], [], 0.0).unwrap();
        assert!(matches!(exact_ground(&p, 32), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn single_spin_field() {
        let p = IsingProblem::new(1, [(0, 2.0)], [], [], 0.5).unwrap();
        let r = exact_ground(&p, 32).unwrap();
        assert_eq!(r.ground_energy, -1.5);
        assert_eq!(r.witness.as_slice(), &[-1]);
    }
}
