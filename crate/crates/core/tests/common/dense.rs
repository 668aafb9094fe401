//! Dense reference evolution for small state vectors.

use isingbench::qa_sim::AnnealSchedule;
use isingbench::{Problem, SpinConfig};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

/// `-a·ΣX + b·diag(E)` in the bit-per-spin basis.
pub fn hamiltonian(p: &Problem, a: f64, b: f64) -> DMatrix<f64> {
    let n = p.num_spins();
    let dim = 1usize << n;
    let mut h = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        h[(x, x)] = b * p.energy(&SpinConfig::from_bits(x as u64, n)).unwrap();
        for q in 0..n {
            h[(x ^ (1 << q), x)] -= a;
        }
    }
    h
}

/// Applies `exp(-i·H·t)` for real symmetric `H`.
pub fn apply_exp(h: &DMatrix<f64>, t: f64, psi: &[Complex64]) -> Vec<Complex64> {
    let eig = SymmetricEigen::new(h.clone());
    let v = &eig.eigenvectors;
    let re = DVector::from_iterator(psi.len(), psi.iter().map(|z| z.re));
    let im = DVector::from_iterator(psi.len(), psi.iter().map(|z| z.im));
    let (yr, yi) = (v.transpose() * re, v.transpose() * im);
    let mut zr = DVector::zeros(psi.len());
    let mut zi = DVector::zeros(psi.len());
    for k in 0..psi.len() {
        let ph = Complex64::new(0.0, -eig.eigenvalues[k] * t).exp() * Complex64::new(yr[k], yi[k]);
        zr[k] = ph.re;
        zi[k] = ph.im;
    }
    let (outr, outi) = (v * zr, v * zi);
    (0..psi.len())
        .map(|k| Complex64::new(outr[k], outi[k]))
        .collect()
}

/// Time-ordered evolution from the uniform state, `steps` exact
/// exponentials at substep midpoints.
pub fn reference_state(p: &Problem, sched: &AnnealSchedule<f64>, steps: usize) -> Vec<Complex64> {
    let dim = 1usize << p.num_spins();
    let mut psi = vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim];
    let dt = sched.total_time / steps as f64;
    for k in 0..steps {
        let s = (k as f64 + 0.5) / steps as f64;
        let h = hamiltonian(p, sched.mixer.eval(s), sched.problem.eval(s));
        psi = apply_exp(&h, dt, &psi);
    }
    psi
}

pub fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
