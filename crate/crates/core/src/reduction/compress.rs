use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::IsingProblem;
use crate::scalar::Scalar;

use super::gauge::{apply_gauge, GaugeTransform};

pub const DEFAULT_STRONG_THRESHOLD: f64 = 0.5;

/// Closed coefficient interval `[lo, hi]` with `lo < 0 < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChipRange<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> ChipRange<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo < T::zero() && hi > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "chip range must straddle zero, got [{lo}, {hi}]"
            )));
        }
        Ok(ChipRange { lo, hi })
    }

    /// The `[-2, 1]` coupling range of the target hardware.
    pub fn default_chip() -> Self {
        ChipRange {
            lo: T::lit(-2.0),
            hi: T::one(),
        }
    }

    pub fn contains(&self, c: T) -> bool {
        self.lo <= c && c <= self.hi
    }
}

/// Largest uniform multiplier keeping every coefficient inside `range`.
pub fn energy_scale<T: Scalar>(problem: &IsingProblem<T>, range: ChipRange<T>) -> Result<T> {
    if !problem.is_quadratic() {
        return Err(Error::NotQuadratic(problem.cubic().len()));
    }
    ChipRange::new(range.lo, range.hi)?;
    problem
        .coefficients()
        .map(|c| {
            if c > T::zero() {
                range.hi / c
            } else {
                range.lo / c
            }
        })
        .reduce(T::min)
        .ok_or(Error::EmptyProblem)
}

/// Gauge transform making every strong coupling (`|J| > strong_threshold`)
/// negative, so all couplings land in `[-1, strong_threshold]`.
///
/// Signs are propagated by BFS over each component of the strong subgraph;
/// strong edges closing a cycle must agree with the propagated signs. The
/// returned transform carries the largest scale mapping
/// `[-1, strong_threshold]` into `chip_range`; the returned problem is the
/// sign-transformed problem at scale 1.
pub fn compress_couplings<T: Scalar>(
    problem: &IsingProblem<T>,
    strong_threshold: T,
    chip_range: ChipRange<T>,
) -> Result<(GaugeTransform<T>, IsingProblem<T>)> {
    let chip_range = ChipRange::new(chip_range.lo, chip_range.hi)?;
    if !problem.is_quadratic() {
        return Err(Error::NotQuadratic(problem.cubic().len()));
    }
    if !problem.linear().is_empty() {
        return Err(Error::InvalidParameter(
            "coupling compression needs a problem without fields".into(),
        ));
    }
    if !(strong_threshold >= T::zero() && strong_threshold < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "strong threshold must lie in [0, 1), got {strong_threshold}"
        )));
    }
    if let Some(&(_, c)) = problem.quadratic().iter().find(|(_, c)| c.abs() > T::one()) {
        return Err(Error::InvalidParameter(format!(
            "coupling {c} outside [-1, 1]"
        )));
    }

    let n = problem.num_spins();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for &([i, j], c) in problem.quadratic() {
        if c.abs() > strong_threshold {
            adj[i].push((j, c > T::zero()));
            adj[j].push((i, c > T::zero()));
        }
    }

    let mut sign = vec![0i8; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &(v, positive) in &adj[u] {
                // The transformed coupling is J·g_u·g_v; it must be negative.
                let want = if positive { -sign[u] } else { sign[u] };
                if sign[v] == 0 {
                    sign[v] = want;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if sign[v] != want {
                    return Err(Error::CompressionInfeasible {
                        cycle: tree_cycle(u, v, &parent, &depth),
                    });
                }
            }
        }
    }

    let scale = {
        let lo = -chip_range.lo;
        if strong_threshold > T::zero() {
            lo.min(chip_range.hi / strong_threshold)
        } else {
            lo
        }
    };
    let flips = GaugeTransform::flips((0..n).filter(|&i| sign[i] < 0));
    let compressed = apply_gauge(problem, &flips)?;
    Ok((flips.with_scale(scale), compressed))
}

/// Vertices of the cycle formed by tree paths to `u` and `v` plus edge `(u, v)`.
fn tree_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chip() -> ChipRange<f64> {
        ChipRange::default_chip()
    }

    #[test]
    fn energy_scale_examples() {
        let neg = IsingProblem::new(2, [], [(0, 1, -1.0)], [], 0.0).unwrap();
        let pos = IsingProblem::new(2, [], [(0, 1, 1.0)], [], 0.0).unwrap();
        assert_eq!(energy_scale(&neg, chip()).unwrap(), 2.0);
        assert_eq!(energy_scale(&pos, chip()).unwrap(), 1.0);
        let empty = IsingProblem::<f64>::new(2, [], [], [], 1.0).unwrap();
        assert!(matches!(
            energy_scale(&empty, chip()),
            Err(Error::EmptyProblem)
        ));
    }

    #[test]
    fn path_example() {
        // Both edges are strong, so both 1 and 2 are reversed.
        let p = IsingProblem::new(3, [], [(0, 1, 0.9), (1, 2, -0.7)], [], 0.0).unwrap();
        let (g, q) = compress_couplings(&p, 0.5, chip()).unwrap();
        assert_eq!(g.flip_set.iter().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(g.scale, 2.0);
        assert_eq!(q.quadratic_coeff(0, 1), -0.9);
        assert_eq!(q.quadratic_coeff(1, 2), -0.7);
        assert!(q.quadratic().iter().all(|&(_, c)| chip().contains(2.0 * c)));
    }

    #[test]
    fn weak_couplings_give_identity() {
        let p = IsingProblem::new(3, [], [(0, 1, 0.4), (1, 2, -0.5)], [], 0.0).unwrap();
        let (g, q) = compress_couplings(&p, 0.5, chip()).unwrap();
        assert!(g.flip_set.is_empty());
        assert_eq!(q, p);
    }

    #[test]
    fn frustrated_triangle_names_cycle() {
        let p = IsingProblem::new(3, [], [(0, 1, 0.9), (1, 2, 0.9), (0, 2, 0.9)], [], 0.0).unwrap();
        match compress_couplings(&p, 0.5, chip()) {
            Err(Error::CompressionInfeasible { mut cycle }) => {
                cycle.sort();
                assert_eq!(cycle, vec![0, 1, 2]);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn rejects_fields_and_large_couplings() {
        let f = IsingProblem::new(2, [(0, 0.1)], [(0, 1, 0.9)], [], 0.0).unwrap();
        assert!(compress_couplings(&f, 0.5, chip()).is_err());
        let big = IsingProblem::new(2, [], [(0, 1, 1.5)], [], 0.0).unwrap();
        assert!(compress_couplings(&big, 0.5, chip()).is_err());
    }
}
