use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::SpinConfig;
use crate::scalar::Scalar;

/// Ising energy model with up to cubic terms, minimized:
///
/// `E(s) = offset + Σ h_i s_i + Σ J_ij s_i s_j + Σ K_ijk s_i s_j s_k`
///
/// Terms are stored once, keyed by sorted index tuples, with zero
/// coefficients dropped. A per-spin incidence table is built alongside so
/// single-flip energy changes cost time proportional to the spin's degree.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingProblem<T> {
    num_spins: usize,
    linear: Vec<(usize, T)>,
    quadratic: Vec<([usize; 2], T)>,
    cubic: Vec<([usize; 3], T)>,
    offset: T,
    incidence: Incidence<T>,
}

/// CSR-style view of the terms touching each spin.
#[derive(Debug, Clone, PartialEq)]
struct Incidence<T> {
    field: Vec<T>,
    pair_start: Vec<usize>,
    pairs: Vec<(usize, T)>,
    triple_start: Vec<usize>,
    triples: Vec<(usize, usize, T)>,
}

impl<T: Scalar> Incidence<T> {
    fn build(
        n: usize,
        linear: &[(usize, T)],
        quadratic: &[([usize; 2], T)],
        cubic: &[([usize; 3], T)],
    ) -> Self {
        let mut field = vec![T::zero(); n];
        for &(i, h) in linear {
            field[i] = h;
        }

        let mut pair_deg = vec![0usize; n];
        for &([i, j], _) in quadratic {
            pair_deg[i] += 1;
            pair_deg[j] += 1;
        }
        let pair_start = prefix_sums(&pair_deg);
        let mut cursor = pair_start.clone();
        let mut pairs = vec![(0usize, T::zero()); pair_start[n]];
        for &([i, j], c) in quadratic {
            pairs[cursor[i]] = (j, c);
            cursor[i] += 1;
            pairs[cursor[j]] = (i, c);
            cursor[j] += 1;
        }

        let mut triple_deg = vec![0usize; n];
        for &([i, j, k], _) in cubic {
            triple_deg[i] += 1;
            triple_deg[j] += 1;
            triple_deg[k] += 1;
        }
        let triple_start = prefix_sums(&triple_deg);
        let mut cursor = triple_start.clone();
        let mut triples = vec![(0usize, 0usize, T::zero()); triple_start[n]];
        for &([i, j, k], c) in cubic {
            for (a, b, o) in [(i, j, k), (j, i, k), (k, i, j)] {
                triples[cursor[a]] = (b, o, c);
                cursor[a] += 1;
            }
        }

        Incidence {
            field,
            pair_start,
            pairs,
            triple_start,
            triples,
        }
    }
}

fn prefix_sums(deg: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(deg.len() + 1);
    let mut acc = 0;
    out.push(0);
    for d in deg {
        acc += d;
        out.push(acc);
    }
    out
}

fn check_index(index: usize, num_spins: usize) -> Result<()> {
    if index >= num_spins {
        Err(Error::IndexOutOfRange { index, num_spins })
    } else {
        Ok(())
    }
}

impl<T: Scalar> IsingProblem<T> {
    /// Builds a problem from explicit term lists.
    ///
    /// Keys are canonicalized (sorted); the same key appearing twice, in any
    /// member order, is rejected. Use [`ProblemBuilder`] to accumulate terms
    /// instead.
    pub fn new(
        num_spins: usize,
        linear: impl IntoIterator<Item = (usize, T)>,
        quadratic: impl IntoIterator<Item = (usize, usize, T)>,
        cubic: impl IntoIterator<Item = (usize, usize, usize, T)>,
        offset: T,
    ) -> Result<Self> {
        let mut b = ProblemBuilder::new(num_spins).reject_duplicates();
        for (i, h) in linear {
            b.add_linear(i, h);
        }
        for (i, j, c) in quadratic {
            b.add_quadratic(i, j, c);
        }
        for (i, j, k, c) in cubic {
            b.add_cubic(i, j, k, c);
        }
        b.add_offset(offset);
        b.build()
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn linear(&self) -> &[(usize, T)] {
        &self.linear
    }

    pub fn quadratic(&self) -> &[([usize; 2], T)] {
        &self.quadratic
    }

    pub fn cubic(&self) -> &[([usize; 3], T)] {
        &self.cubic
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    pub fn is_quadratic(&self) -> bool {
        self.cubic.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.linear.len() + self.quadratic.len() + self.cubic.len()
    }

    /// All non-offset coefficients in storage order (linear, quadratic, cubic).
    pub fn coefficients(&self) -> impl Iterator<Item = T> + '_ {
        self.linear
            .iter()
            .map(|t| t.1)
            .chain(self.quadratic.iter().map(|t| t.1))
            .chain(self.cubic.iter().map(|t| t.1))
    }

    pub fn max_abs_coefficient(&self) -> T {
        self.coefficients().fold(
            T::zero(),
            |acc, c| if c.abs() > acc { c.abs() } else { acc },
        )
    }

    pub fn linear_coeff(&self, i: usize) -> T {
        self.incidence.field.get(i).copied().unwrap_or_else(T::zero)
    }

    pub fn quadratic_coeff(&self, i: usize, j: usize) -> T {
        let key = if i < j { [i, j] } else { [j, i] };
        self.quadratic
            .binary_search_by(|probe| probe.0.cmp(&key))
            .map(|pos| self.quadratic[pos].1)
            .unwrap_or_else(|_| T::zero())
    }

    pub fn cubic_coeff(&self, i: usize, j: usize, k: usize) -> T {
        let mut key = [i, j, k];
        key.sort_unstable();
        self.cubic
            .binary_search_by(|probe| probe.0.cmp(&key))
            .map(|pos| self.cubic[pos].1)
            .unwrap_or_else(|_| T::zero())
    }

    /// Spins sharing at least one term with `i`, sorted and deduplicated.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let inc = &self.incidence;
        let mut out: Vec<usize> = inc.pairs[inc.pair_start[i]..inc.pair_start[i + 1]]
            .iter()
            .map(|p| p.0)
            .chain(
                inc.triples[inc.triple_start[i]..inc.triple_start[i + 1]]
                    .iter()
                    .flat_map(|t| [t.0, t.1]),
            )
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn energy(&self, config: &SpinConfig) -> Result<T> {
        self.check_len(config.len())?;
        Ok(self.energy_of(config.as_slice()))
    }

    /// Energy of a raw ±1 slice whose length has already been checked.
    ///
    /// Summation order is fixed: offset, then linear, quadratic and cubic
    /// terms in sorted key order, so repeated evaluations are bit-identical.
    pub fn energy_of(&self, spins: &[i8]) -> T {
        debug_assert_eq!(spins.len(), self.num_spins);
        let mut e = self.offset;
        for &(i, h) in &self.linear {
            e += h.signed(spins[i]);
        }
        for &([i, j], c) in &self.quadratic {
            e += c.signed(spins[i] * spins[j]);
        }
        for &([i, j, k], c) in &self.cubic {
            e += c.signed(spins[i] * spins[j] * spins[k]);
        }
        e
    }

    /// Effective field on spin `i`: `∂E/∂s_i`.
    #[inline]
    pub fn local_field(&self, spins: &[i8], i: usize) -> T {
        let inc = &self.incidence;
        let mut f = inc.field[i];
        for &(j, c) in &inc.pairs[inc.pair_start[i]..inc.pair_start[i + 1]] {
            f += c.signed(spins[j]);
        }
        for &(j, k, c) in &inc.triples[inc.triple_start[i]..inc.triple_start[i + 1]] {
            f += c.signed(spins[j] * spins[k]);
        }
        f
    }

    pub fn energy_delta_flip(&self, config: &SpinConfig, i: usize) -> Result<T> {
        self.check_len(config.len())?;
        check_index(i, self.num_spins)?;
        Ok(self.delta_flip_of(config.as_slice(), i))
    }

    /// `E(flip_i(s)) - E(s)` on a raw slice; no bounds checks beyond indexing.
    #[inline]
    pub fn delta_flip_of(&self, spins: &[i8], i: usize) -> T {
        let two = T::one() + T::one();
        -(two * self.local_field(spins, i)).signed(spins[i])
    }

    /// Index lists for incremental local-field maintenance.
    pub(crate) fn pair_terms(&self, i: usize) -> &[(usize, T)] {
        let inc = &self.incidence;
        &inc.pairs[inc.pair_start[i]..inc.pair_start[i + 1]]
    }

    pub(crate) fn triple_terms(&self, i: usize) -> &[(usize, usize, T)] {
        let inc = &self.incidence;
        &inc.triples[inc.triple_start[i]..inc.triple_start[i + 1]]
    }

    /// Every coefficient and the offset multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        self.map_terms(|_, c| c * factor, factor)
    }

    /// Applies `f(indices, coeff)` to every term and multiplies the offset by
    /// `offset_factor`. Terms mapped to zero are dropped.
    pub(crate) fn map_terms(&self, f: impl Fn(&[usize], T) -> T, offset_factor: T) -> Self {
        let linear: Vec<_> = self
            .linear
            .iter()
            .map(|&(i, c)| (i, f(&[i], c)))
            .filter(|t| t.1 != T::zero())
            .collect();
        let quadratic: Vec<_> = self
            .quadratic
            .iter()
            .map(|&(k, c)| (k, f(&k, c)))
            .filter(|t| t.1 != T::zero())
            .collect();
        let cubic: Vec<_> = self
            .cubic
            .iter()
            .map(|&(k, c)| (k, f(&k, c)))
            .filter(|t| t.1 != T::zero())
            .collect();
        Self::from_canonical(
            self.num_spins,
            linear,
            quadratic,
            cubic,
            self.offset * offset_factor,
        )
    }

    pub fn cast<U: Scalar>(&self) -> IsingProblem<U> {
        let conv = |c: T| U::lit(c.to_f64_lossy());
        IsingProblem::from_canonical(
            self.num_spins,
            self.linear
                .iter()
                .map(|&(i, c)| (i, conv(c)))
                .filter(|t| t.1 != U::zero())
                .collect(),
            self.quadratic
                .iter()
                .map(|&(k, c)| (k, conv(c)))
                .filter(|t| t.1 != U::zero())
                .collect(),
            self.cubic
                .iter()
                .map(|&(k, c)| (k, conv(c)))
                .filter(|t| t.1 != U::zero())
                .collect(),
            conv(self.offset),
        )
    }

    /// Same terms with the offset replaced.
    pub fn with_offset(&self, offset: T) -> Self {
        let mut out = self.clone();
        out.offset = offset;
        out
    }

    fn from_canonical(
        num_spins: usize,
        linear: Vec<(usize, T)>,
        quadratic: Vec<([usize; 2], T)>,
        cubic: Vec<([usize; 3], T)>,
        offset: T,
    ) -> Self {
        let incidence = Incidence::build(num_spins, &linear, &quadratic, &cubic);
        IsingProblem {
            num_spins,
            linear,
            quadratic,
            cubic,
            offset,
            incidence,
        }
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.num_spins {
            Err(Error::Dimension {
                expected: self.num_spins,
                got,
            })
        } else {
            Ok(())
        }
    }
}

/// Accumulates terms (summing repeated keys unless built with
/// [`reject_duplicates`](Self::reject_duplicates)) and produces a canonical
/// [`IsingProblem`].
#[derive(Debug)]
pub struct ProblemBuilder<T> {
    num_spins: usize,
    linear: BTreeMap<usize, T>,
    quadratic: BTreeMap<[usize; 2], T>,
    cubic: BTreeMap<[usize; 3], T>,
    offset: T,
    strict: bool,
    error: Option<Error>,
}

impl<T: Scalar> ProblemBuilder<T> {
    pub fn new(num_spins: usize) -> Self {
        ProblemBuilder {
            num_spins,
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
            cubic: BTreeMap::new(),
            offset: T::zero(),
            strict: false,
            error: None,
        }
    }

    /// Starts from the terms of an existing problem, possibly on more spins.
    pub fn from_problem(problem: &IsingProblem<T>, num_spins: usize) -> Self {
        let mut b = Self::new(num_spins.max(problem.num_spins()));
        b.linear.extend(problem.linear.iter().copied());
        b.quadratic.extend(problem.quadratic.iter().copied());
        b.cubic.extend(problem.cubic.iter().copied());
        b.offset = problem.offset;
        b
    }

    /// Makes a repeated key an error instead of a sum.
    pub fn reject_duplicates(mut self) -> Self {
        self.strict = true;
        self
    }

    /// Removes and returns the first recorded error, if any.
    pub(crate) fn take_error(&mut self) -> Option<Error> {
        self.error.take()
    }

    fn fail(&mut self, e: Error) {
        if self.error.is_none() {
            self.error = Some(e);
        }
    }

    fn valid(&mut self, key: &[usize]) -> bool {
        for &i in key {
            if i >= self.num_spins {
                self.fail(Error::IndexOutOfRange {
                    index: i,
                    num_spins: self.num_spins,
                });
                return false;
            }
        }
        if key.windows(2).any(|w| w[0] == w[1]) {
            self.fail(Error::RepeatedIndex(key.to_vec()));
            return false;
        }
        true
    }

    pub fn add_linear(&mut self, i: usize, h: T) -> &mut Self {
        if self.valid(&[i]) {
            insert(&mut self.linear, i, h, self.strict, &[i], &mut self.error);
        }
        self
    }

    pub fn add_quadratic(&mut self, i: usize, j: usize, c: T) -> &mut Self {
        let key = if i <= j { [i, j] } else { [j, i] };
        if self.valid(&key) {
            insert(
                &mut self.quadratic,
                key,
                c,
                self.strict,
                &key,
                &mut self.error,
            );
        }
        self
    }

    pub fn add_cubic(&mut self, i: usize, j: usize, k: usize, c: T) -> &mut Self {
        let mut key = [i, j, k];
        key.sort_unstable();
        if self.valid(&key) {
            insert(&mut self.cubic, key, c, self.strict, &key, &mut self.error);
        }
        self
    }

    pub fn add_offset(&mut self, c: T) -> &mut Self {
        self.offset += c;
        self
    }

    pub fn build(self) -> Result<IsingProblem<T>> {
        if let Some(e) = self.error {
            return Err(e);
        }
        if self.num_spins == 0 {
            return Err(Error::InvalidParameter("num_spins must be positive".into()));
        }
        let nz = |c: &T| *c != T::zero();
        Ok(IsingProblem::from_canonical(
            self.num_spins,
            self.linear.into_iter().filter(|t| nz(&t.1)).collect(),
            self.quadratic.into_iter().filter(|t| nz(&t.1)).collect(),
            self.cubic.into_iter().filter(|t| nz(&t.1)).collect(),
            self.offset,
        ))
    }
}

fn insert<K: Ord, T: Scalar>(
    map: &mut BTreeMap<K, T>,
    key: K,
    c: T,
    strict: bool,
    raw: &[usize],
    error: &mut Option<Error>,
) {
    match map.entry(key) {
        Entry::Occupied(_) if strict => {
            if error.is_none() {
                *error = Some(Error::DuplicateTerm(raw.to_vec()));
            }
        }
        Entry::Occupied(mut slot) => *slot.get_mut() += c,
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &[i8]) -> SpinConfig {
        SpinConfig::new(s.to_vec()).unwrap()
    }

    #[test]
    fn single_linear_term() {
        let p = IsingProblem::new(1, [(0, 1.0)], [], [], 0.0).unwrap();
        assert_eq!(p.energy(&cfg(&[1])).unwrap(), 1.0);
        assert_eq!(p.energy_delta_flip(&cfg(&[1]), 0).unwrap(), -2.0);
    }

    #[test]
    fn single_coupler() {
        let p = IsingProblem::new(2, [], [(0, 1, 1.0)], [], 0.0).unwrap();
        assert_eq!(p.energy(&cfg(&[1, 1])).unwrap(), 1.0);
        assert_eq!(p.energy(&cfg(&[1, -1])).unwrap(), -1.0);
        let f = IsingProblem::new(2, [], [(0, 1, -1.0)], [], 0.0).unwrap();
        assert_eq!(f.energy_delta_flip(&cfg(&[1, 1]), 1).unwrap(), 2.0);
    }

    #[test]
    fn cubic_term_adds() {
        let p = IsingProblem::new(3, [], [(0, 1, 1.0)], [(0, 1, 2, -1.0)], 0.0).unwrap();
        assert_eq!(p.energy(&cfg(&[1, 1, 1])).unwrap(), 0.0);
        assert_eq!(p.energy(&cfg(&[1, 1, -1])).unwrap(), 2.0);
    }

    #[test]
    fn keys_are_canonical_and_zeros_dropped() {
        let p = IsingProblem::new(3, [(1, 0.0)], [(2, 0, 1.5)], [(2, 0, 1, 0.5)], 0.0).unwrap();
        assert!(p.linear().is_empty());
        assert_eq!(p.quadratic(), &[([0, 2], 1.5)]);
        assert_eq!(p.cubic(), &[([0, 1, 2], 0.5)]);
        assert_eq!(p.quadratic_coeff(2, 0), 1.5);
        assert_eq!(p.cubic_coeff(1, 2, 0), 0.5);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            IsingProblem::new(2, [], [(0, 1, 1.0), (1, 0, 1.0)], [], 0.0),
            Err(Error::DuplicateTerm(_))
        ));
        assert!(matches!(
            IsingProblem::new(2, [], [(0, 0, 1.0)], [], 0.0),
            Err(Error::RepeatedIndex(_))
        ));
        assert!(matches!(
            IsingProblem::new(2, [(2, 1.0)], [], [], 0.0),
            Err(Error::IndexOutOfRange { index: 2, .. })
        ));
        assert!(IsingProblem::<f64>::new(0, [], [], [], 0.0).is_err());
    }

    #[test]
    fn dimension_and_index_errors() {
        let p = IsingProblem::new(2, [], [(0, 1, 1.0)], [], 0.0).unwrap();
        assert!(matches!(p.energy(&cfg(&[1])), Err(Error::Dimension { .. })));
        assert!(matches!(
            p.energy_delta_flip(&cfg(&[1, 1]), 5),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn builder_sums_repeated_keys() {
        let mut b = ProblemBuilder::new(3);
        b.add_quadratic(0, 1, 1.0)
            .add_quadratic(1, 0, 0.5)
            .add_cubic(0, 1, 2, 1.0);
        b.add_cubic(2, 1, 0, -1.0);
        let p = b.build().unwrap();
        assert_eq!(p.quadratic(), &[([0, 1], 1.5)]);
        assert!(p.cubic().is_empty());
    }

    #[test]
    fn neighbors_include_cubic_partners() {
        let p = IsingProblem::new(4, [], [(0, 1, 1.0)], [(0, 2, 3, 1.0)], 0.0).unwrap();
        assert_eq!(p.neighbors(0), vec![1, 2, 3]);
        assert_eq!(p.neighbors(3), vec![0, 2]);
    }
}
