use crate::error::{Error, Result};
use crate::model::{IsingProblem, ProblemBuilder, SpinConfig};
use crate::scalar::Scalar;

use super::gadget::{GadgetSet, GadgetSpec, ROLE_PAIRS};

/// One cubic term replaced by a gadget.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxAssignment<T> {
    pub term: [usize; 3],
    pub coeff: T,
    pub aux: usize,
    /// Gadget already scaled to `coeff`.
    pub gadget: GadgetSpec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionMap<T> {
    pub original_num_spins: usize,
    /// In sorted term order; `aux[r].aux == original_num_spins + r`.
    pub aux: Vec<AuxAssignment<T>>,
    /// Sum of gadget offsets. Reduced ground energy equals the original
    /// ground energy plus this value.
    pub offset_shift: T,
}

impl<T: Scalar> ReductionMap<T> {
    pub fn identity(num_spins: usize) -> Self {
        ReductionMap {
            original_num_spins: num_spins,
            aux: Vec::new(),
            offset_shift: T::zero(),
        }
    }

    pub fn reduced_num_spins(&self) -> usize {
        self.original_num_spins + self.aux.len()
    }

    /// Drops the auxiliary spins.
    pub fn project(&self, config: &SpinConfig) -> Result<SpinConfig> {
        if config.len() != self.reduced_num_spins() {
            return Err(Error::Dimension {
                expected: self.reduced_num_spins(),
                got: config.len(),
            });
        }
        Ok(config.truncated(self.original_num_spins))
    }

    /// Extends an original configuration with energy-minimizing aux spins.
    pub fn lift(&self, config: &SpinConfig) -> Result<SpinConfig> {
        if config.len() != self.original_num_spins {
            return Err(Error::Dimension {
                expected: self.original_num_spins,
                got: config.len(),
            });
        }
        let s = config.as_slice();
        let mut out = s.to_vec();
        out.extend(self.aux.iter().map(|a| {
            a.gadget
                .best_aux([s[a.term[0]], s[a.term[1]], s[a.term[2]]])
        }));
        SpinConfig::new(out)
    }
}

/// Replaces every cubic term by its own gadget and a fresh auxiliary spin.
pub fn reduce_cubic<T: Scalar>(
    problem: &IsingProblem<T>,
    gadgets: &GadgetSet<T>,
) -> Result<(IsingProblem<T>, ReductionMap<T>)> {
    let n = problem.num_spins();
    if problem.is_quadratic() {
        return Ok((problem.clone(), ReductionMap::identity(n)));
    }
    let cubic = problem.cubic();
    let mut builder = ProblemBuilder::new(n + cubic.len());
    for &(i, h) in problem.linear() {
        builder.add_linear(i, h);
    }
    for &([i, j], c) in problem.quadratic() {
        builder.add_quadratic(i, j, c);
    }
    builder.add_offset(problem.offset());

    let mut aux = Vec::with_capacity(cubic.len());
    let mut shift = T::zero();
    for (rank, &(term, k)) in cubic.iter().enumerate() {
        let g = gadgets.gadget_for(k)?;
        let x = n + rank;
        let roles = [term[0], term[1], term[2], x];
        for (r, &h) in g.linear.iter().enumerate() {
            builder.add_linear(roles[r], h);
        }
        for (&(a, b), &c) in ROLE_PAIRS.iter().zip(&g.quadratic) {
            builder.add_quadratic(roles[a], roles[b], c);
        }
        shift += g.offset;
        aux.push(AuxAssignment {
            term,
            coeff: k,
            aux: x,
            gadget: g,
        });
    }
    let reduced = builder.build()?;
    Ok((
        reduced,
        ReductionMap {
            original_num_spins: n,
            aux,
            offset_shift: shift,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_problem_is_unchanged() {
        let p = IsingProblem::new(2, [(0, 0.5)], [(0, 1, -1.0)], [], 0.0).unwrap();
        let (r, map) = reduce_cubic(&p, &GadgetSet::baseline().unwrap()).unwrap();
        assert_eq!(r, p);
        assert!(map.aux.is_empty());
        assert_eq!(map.offset_shift, 0.0);
    }

    #[test]
    fn single_cubic_term_reduces_exactly() {
        let p = IsingProblem::<f64>::new(3, [], [], [(0, 1, 2, -1.5)], 0.0).unwrap();
        let (r, map) = reduce_cubic(&p, &GadgetSet::baseline().unwrap()).unwrap();
        assert_eq!(r.num_spins(), 4);
        assert!(r.is_quadratic());
        for bits in 0..8u64 {
            let c = SpinConfig::from_bits(bits, 3);
            let lifted = map.lift(&c).unwrap();
            let want = p.energy(&c).unwrap() + map.offset_shift;
            assert!((r.energy(&lifted).unwrap() - want).abs() < 1e-12);
            assert_eq!(map.project(&lifted).unwrap(), c);
        }
    }

    #[test]
    fn missing_sign_is_reported() {
        let p = IsingProblem::new(3, [], [], [(0, 1, 2, -1.0)], 0.0).unwrap();
        let mut set = GadgetSet::baseline().unwrap();
        set.negative = None;
        assert!(matches!(
            reduce_cubic(&p, &set),
            Err(Error::MissingGadget { sign: -1 })
        ));
    }
}
