use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{IsingProblem, SpinConfig};
use crate::scalar::Scalar;

/// Spin-reversal of `flip_set` followed by multiplication by `scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeTransform<T> {
    pub flip_set: BTreeSet<usize>,
    pub scale: T,
}

impl<T: Scalar> Default for GaugeTransform<T> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<T: Scalar> GaugeTransform<T> {
    pub fn identity() -> Self {
        GaugeTransform {
            flip_set: BTreeSet::new(),
            scale: T::one(),
        }
    }

    pub fn flips(flip_set: impl IntoIterator<Item = usize>) -> Self {
        GaugeTransform {
            flip_set: flip_set.into_iter().collect(),
            scale: T::one(),
        }
    }

    pub fn with_scale(mut self, scale: T) -> Self {
        self.scale = scale;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.flip_set.is_empty() && self.scale == T::one()
    }

    /// Maps a configuration of the original problem to the transformed one
    /// (and back: the map is its own inverse).
    pub fn map_config(&self, config: &SpinConfig) -> Result<SpinConfig> {
        let mut out = config.clone();
        for &i in &self.flip_set {
            if i >= out.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    num_spins: out.len(),
                });
            }
            out.flip(i);
        }
        Ok(out)
    }
}

pub fn apply_gauge<T: Scalar>(
    problem: &IsingProblem<T>,
    g: &GaugeTransform<T>,
) -> Result<IsingProblem<T>> {
    let n = problem.num_spins();
    if let Some(&i) = g.flip_set.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange {
            index: i,
            num_spins: n,
        });
    }
    if !(g.scale > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "gauge scale must be positive, got {}",
            g.scale
        )));
    }
    let scale = g.scale;
    Ok(problem.map_terms(
        |idx, c| {
            let odd = idx.iter().filter(|i| g.flip_set.contains(i)).count() % 2 == 1;
            if odd {
                -c * scale
            } else {
                c * scale
            }
        },
        scale,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_single_edge() {
        let p = IsingProblem::new(2, [], [(0, 1, 1.0)], [], 0.0).unwrap();
        assert_eq!(apply_gauge(&p, &GaugeTransform::identity()).unwrap(), p);
        let g = GaugeTransform::flips([1]);
        let q = apply_gauge(&p, &g).unwrap();
        assert_eq!(q.quadratic_coeff(0, 1), -1.0);
        let gs = SpinConfig::new(vec![1, -1]).unwrap();
        assert_eq!(q.energy(&g.map_config(&gs).unwrap()).unwrap(), -1.0);
    }

    #[test]
    fn out_of_range_and_bad_scale() {
        let p = IsingProblem::new(2, [], [(0, 1, 1.0)], [], 0.0).unwrap();
        assert!(matches!(
            apply_gauge(&p, &GaugeTransform::flips([2])),
            Err(Error::IndexOutOfRange { index: 2, .. })
        ));
        assert!(apply_gauge(&p, &GaugeTransform::identity().with_scale(0.0)).is_err());
    }
}
