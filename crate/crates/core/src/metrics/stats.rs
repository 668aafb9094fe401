use rand::Rng;

use crate::error::{Error, Result};
use crate::model::SampleSet;
use crate::rng::rng_from_seed;
use crate::scalar::Scalar;

pub const DEFAULT_PGS_TOL: f64 = 1e-9;
/// Success probability targeted by [`tts`].
pub const TARGET_CONFIDENCE: f64 = 0.99;
/// Upper 5% quantile of the standard normal.
pub const Z_95_ONE_SIDED: f64 = 1.644_853_626_951_472_2;

/// `(hits, total)` multiplicities with `|energy - opt| ≤ tol`.
pub fn count_at_optimum<T: Scalar>(samples: &SampleSet<T>, opt: T, tol: T) -> Result<(u64, u64)> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let hits = samples
        .energies()
        .filter(|(e, _)| (*e - opt).abs() <= tol)
        .map(|(_, m)| m)
        .sum();
    Ok((hits, samples.total_multiplicity()))
}

pub fn estimate_pgs<T: Scalar>(samples: &SampleSet<T>, opt: T, tol: T) -> Result<f64> {
    let (hits, total) = count_at_optimum(samples, opt, tol)?;
    Ok(hits as f64 / total as f64)
}

/// Time to observe a ground state with 99% confidence:
/// `t_sample · max(ln(0.01) / ln(1 - p), 1)`.
pub fn tts(p_gs: f64, t_sample_ms: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_gs) {
        return Err(Error::InvalidParameter(format!(
            "probability {p_gs} outside [0, 1]"
        )));
    }
    if !(t_sample_ms > 0.0) || !t_sample_ms.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "t_sample must be positive, got {t_sample_ms}"
        )));
    }
    if p_gs == 0.0 {
        return Ok(f64::INFINITY);
    }
    if p_gs == 1.0 {
        return Ok(t_sample_ms);
    }
    let repeats = (1.0 - TARGET_CONFIDENCE).ln() / (1.0 - p_gs).ln();
    Ok(t_sample_ms * repeats.max(1.0))
}

pub fn t_sample(total_wall_ms: f64, num_samples: u64) -> Result<f64> {
    if !(total_wall_ms > 0.0) || num_samples == 0 {
        return Err(Error::InvalidParameter(format!(
            "need positive wall time and sample count, got {total_wall_ms} ms / {num_samples}"
        )));
    }
    Ok(total_wall_ms / num_samples as f64)
}

/// Percentile bootstrap interval for the ground-state fraction.
pub fn bootstrap_ci<T: Scalar>(
    samples: &SampleSet<T>,
    opt: T,
    tol: T,
    resamples: usize,
    level: f64,
    seed: u64,
) -> Result<(f64, f64)> {
    if !(level > 0.0 && level < 1.0) || resamples == 0 {
        return Err(Error::InvalidParameter(format!(
            "bootstrap needs level in (0, 1) and resamples ≥ 1, got {level} / {resamples}"
        )));
    }
    let (hits, total) = count_at_optimum(samples, opt, tol)?;
    if hits == 0 || hits == total {
        let p = hits as f64 / total as f64;
        return Ok((p, p));
    }
    let mut rng = rng_from_seed(seed);
    let mut stats: Vec<f64> = (0..resamples)
        .map(|_| {
            let k = (0..total)
                .filter(|_| rng.random_range(0..total) < hits)
                .count();
            k as f64 / total as f64
        })
        .collect();
    stats.sort_by(f64::total_cmp);
    let alpha = (1.0 - level) / 2.0;
    let r = resamples as f64;
    let lo = ((alpha * r).floor() as usize).min(resamples - 1);
    let hi = (((1.0 - alpha) * r).ceil() as usize)
        .saturating_sub(1)
        .min(resamples - 1);
    Ok((stats[lo], stats[hi]))
}

/// Pooled two-proportion z statistic for `p_a - p_b`; 0 when both are
/// degenerate at the same value.
pub fn proportion_z(hits_a: u64, n_a: u64, hits_b: u64, n_b: u64) -> Result<f64> {
    if n_a == 0 || n_b == 0 || hits_a > n_a || hits_b > n_b {
        return Err(Error::InvalidParameter("invalid proportion counts".into()));
    }
    let (pa, pb) = (hits_a as f64 / n_a as f64, hits_b as f64 / n_b as f64);
    let pooled = (hits_a + hits_b) as f64 / (n_a + n_b) as f64;
    let se = (pooled * (1.0 - pooled) * (1.0 / n_a as f64 + 1.0 / n_b as f64)).sqrt();
    if se == 0.0 {
        return Ok(0.0);
    }
    Ok((pa - pb) / se)
}
