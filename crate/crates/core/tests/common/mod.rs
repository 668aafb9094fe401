#![allow(dead_code)]

pub mod dense;

use std::collections::BTreeSet;

use isingbench::rng::Rng as ChaRng;
use isingbench::{Problem, ProblemBuilder, SpinConfig};
use rand::Rng;

/// Random problem with integer coefficients in [-3, 3] (zeros allowed and dropped).
pub fn random_problem(rng: &mut ChaRng, n: usize, max_cubic: usize, with_linear: bool) -> Problem {
    let mut b = ProblemBuilder::new(n);
    if with_linear {
        for i in 0..n {
            if rng.random_bool(0.6) {
                b.add_linear(i, rng.random_range(-3..=3) as f64);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.4) {
                b.add_quadratic(i, j, rng.random_range(-3..=3) as f64);
            }
        }
    }
    if n >= 3 {
        for _ in 0..rng.random_range(0..=max_cubic) {
            let t = distinct3(rng, n);
            b.add_cubic(t[0], t[1], t[2], random_nonzero(rng));
        }
    }
    b.add_offset(rng.random_range(-2..=2) as f64);
    b.build().unwrap()
}

/// Like [`random_problem`] with real-valued coefficients.
pub fn random_real_problem(rng: &mut ChaRng, n: usize, max_cubic: usize) -> Problem {
    let mut b = ProblemBuilder::new(n);
    for i in 0..n {
        b.add_linear(i, rng.random_range(-1.0..1.0));
        for j in i + 1..n {
            if rng.random_bool(0.5) {
                b.add_quadratic(i, j, rng.random_range(-1.0..1.0));
            }
        }
    }
    if n >= 3 {
        for _ in 0..rng.random_range(0..=max_cubic) {
            let t = distinct3(rng, n);
            b.add_cubic(t[0], t[1], t[2], rng.random_range(-1.0..1.0));
        }
    }
    b.build().unwrap()
}

pub fn random_nonzero(rng: &mut ChaRng) -> f64 {
    let m = rng.random_range(1..=3) as f64;
    if rng.random_bool(0.5) {
        m
    } else {
        -m
    }
}

pub fn distinct3(rng: &mut ChaRng, n: usize) -> [usize; 3] {
    loop {
        let t = [
            rng.random_range(0..n),
            rng.random_range(0..n),
            rng.random_range(0..n),
        ];
        if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
            return t;
        }
    }
}

pub fn random_flip_set(rng: &mut ChaRng, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|_| rng.random_bool(0.5)).collect()
}

/// Energies of all 2^n configurations, by bit pattern.
pub fn all_energies(p: &Problem) -> Vec<f64> {
    let n = p.num_spins();
    (0..1u64 << n)
        .map(|b| p.energy(&SpinConfig::from_bits(b, n)).unwrap())
        .collect()
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// Minimum energy and the set of minimizing bit patterns.
pub fn ground_set(p: &Problem) -> (f64, BTreeSet<u64>) {
    let e = all_energies(p);
    let min = e.iter().copied().fold(f64::INFINITY, f64::min);
    let set = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| (x - min).abs() < 1e-9)
        .map(|(b, _)| b as u64)
        .collect();
    (min, set)
}

/// Ferromagnetic open chain.
pub fn ferro_chain(n: usize) -> Problem {
    Problem::new(n, [], (0..n - 1).map(|i| (i, i + 1, -1.0)), [], 0.0).unwrap()
}

/// Fields on every spin and couplings on 40% of pairs, all ±1.
pub fn pm_one_glass(rng: &mut ChaRng, n: usize) -> Problem {
    let mut b = ProblemBuilder::new(n);
    let pm = |rng: &mut ChaRng| if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    for i in 0..n {
        let h = pm(rng);
        b.add_linear(i, h);
        for j in i + 1..n {
            if rng.random_bool(0.4) {
                let c = pm(rng);
                b.add_quadratic(i, j, c);
            }
        }
    }
    b.build().unwrap()
}
