use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Piecewise-linear function on `s ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile<T> {
    points: Vec<(T, T)>,
}

impl<T: Scalar> Profile<T> {
    /// Breakpoints `(s, value)` with strictly increasing `s` from 0 to 1 and
    /// nonnegative values.
    pub fn new(points: Vec<(T, T)>) -> Result<Self> {
        let ok = points.len() >= 2
            && points[0].0 == T::zero()
            && points[points.len() - 1].0 == T::one()
            && points.windows(2).all(|w| w[0].0 < w[1].0)
            && points.iter().all(|p| p.1 >= T::zero() && p.1.is_finite());
        if !ok {
            return Err(Error::InvalidParameter(
                "profile needs increasing breakpoints spanning [0, 1] with nonnegative values"
                    .into(),
            ));
        }
        Ok(Profile { points })
    }

    pub fn linear(start: T, end: T) -> Result<Self> {
        Self::new(vec![(T::zero(), start), (T::one(), end)])
    }

    pub fn points(&self) -> &[(T, T)] {
        &self.points
    }

    pub fn eval(&self, s: T) -> T {
        let s = s.max(T::zero()).min(T::one());
        let k = self.points.partition_point(|p| p.0 < s).max(1);
        let (s0, v0) = self.points[k - 1];
        let (s1, v1) = self.points[k];
        v0 + (v1 - v0) * (s - s0) / (s1 - s0)
    }
}

/// `H(s) = -mixer(s)·Σ X_i + problem(s)·H_P` swept over `total_time`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealSchedule<T> {
    pub total_time: T,
    pub slices: usize,
    pub mixer: Profile<T>,
    pub problem: Profile<T>,
}

impl<T: Scalar> AnnealSchedule<T> {
    /// Linear profiles: mixer `1 - s`, problem `s`.
    pub fn linear(total_time: T, slices: usize) -> Result<Self> {
        let s = AnnealSchedule {
            total_time,
            slices,
            mixer: Profile::linear(T::one(), T::zero())?,
            problem: Profile::linear(T::zero(), T::one())?,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.total_time >= T::zero() && self.total_time.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "total time must be finite and nonnegative, got {}",
                self.total_time
            )));
        }
        if self.slices == 0 && self.total_time > T::zero() {
            return Err(Error::InvalidParameter(
                "nonzero anneal time needs at least one slice".into(),
            ));
        }
        Ok(())
    }

    pub fn dt(&self) -> T {
        if self.slices == 0 {
            T::zero()
        } else {
            self.total_time / T::lit(self.slices as f64)
        }
    }

    /// `(mixer, problem)` weights at the midpoint of slice `k`.
    pub fn weights(&self, k: usize) -> (T, T) {
        let s = T::lit((k as f64 + 0.5) / self.slices as f64);
        (self.mixer.eval(s), self.problem.eval(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_evaluation() {
        let p = Profile::new(vec![(0.0, 0.0), (0.5, 2.0), (1.0, 1.0)]).unwrap();
        assert_eq!(p.eval(0.0), 0.0);
        assert_eq!(p.eval(0.25), 1.0);
        assert_eq!(p.eval(0.75), 1.5);
        assert_eq!(p.eval(1.0), 1.0);
        assert!(Profile::new(vec![(0.0, 1.0), (0.8, 0.0)]).is_err());
        assert!(Profile::new(vec![(0.0, -1.0), (1.0, 0.0)]).is_err());
    }

    #[test]
    fn schedule_validation() {
        assert!(AnnealSchedule::linear(1.0, 0).is_err());
        assert!(AnnealSchedule::linear(0.0, 0).is_ok());
        let s = AnnealSchedule::linear(10.0, 4).unwrap();
        assert_eq!(s.dt(), 2.5);
        assert_eq!(s.weights(0), (0.875, 0.125));
        assert_eq!(s.mixer.eval(1.0), 0.0);
        assert_eq!(s.problem.eval(0.0), 0.0);
    }
}
