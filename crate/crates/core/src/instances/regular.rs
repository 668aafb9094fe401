use std::collections::HashSet;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::instances::Graph;
use crate::rng::rng_from_seed;

pub const DEFAULT_REGULAR_RETRIES: usize = 1000;

/// Uniform-ish random `d`-regular simple graph on `n` nodes via the pairing
/// (configuration) model: shuffle `n·d` stubs, pair them consecutively and
/// reject the draw if it contains a loop or a repeated edge.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    gen_random_regular_with_retries(n, d, seed, DEFAULT_REGULAR_RETRIES)
}

pub fn gen_random_regular_with_retries(
    n: usize,
    d: usize,
    seed: u64,
    retries: usize,
) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Infeasible("graph needs at least one node".into()));
    }
    if (n * d) % 2 == 1 {
        return Err(Error::Infeasible(format!("n·d = {} is odd", n * d)));
    }
    if d >= n {
        return Err(Error::Infeasible(format!(
            "degree {d} must be below node count {n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..retries.max(1) {
        stubs.shuffle(&mut rng);
        let mut seen = HashSet::with_capacity(stubs.len() / 2);
        let mut edges = Vec::with_capacity(stubs.len() / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        return Graph::unweighted(n, edges);
    }
    Err(Error::Generation(format!(
        "no simple {d}-regular graph on {n} nodes after {retries} pairings"
    )))
}
