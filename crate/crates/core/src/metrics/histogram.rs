use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SampleSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HistogramValue {
    Energy,
    /// Cut value `(total_weight - E) / 2` of a max-cut encoding.
    Cut {
        total_weight: f64,
    },
}

impl HistogramValue {
    pub fn apply(&self, energy: f64) -> f64 {
        match *self {
            HistogramValue::Energy => energy,
            HistogramValue::Cut { total_weight } => (total_weight - energy) / 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub series: String,
    pub bin_width: f64,
    /// Contiguous `(bin_low, count)` pairs; bin `k` covers `[low, low + width)`.
    pub bins: Vec<(f64, u64)>,
    pub mean: f64,
    pub optimum: Option<f64>,
}

/// Bins aligned to multiples of `bin_width`, so integer-valued data with
/// width 1 gets one bin per value.
pub fn histogram<T: Scalar>(
    series: impl Into<String>,
    samples: &SampleSet<T>,
    value: HistogramValue,
    bin_width: f64,
    optimum: Option<f64>,
) -> Result<Histogram> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "bin width must be positive, got {bin_width}"
        )));
    }
    let vals: Vec<(f64, u64)> = samples
        .energies()
        .map(|(e, m)| (value.apply(e.to_f64_lossy()), m))
        .collect();
    // Small slack keeps values computed as k·width - ε in bin k.
    let bin = |v: f64| (v / bin_width + 1e-9).floor() as i64;
    let lo = vals.iter().map(|v| bin(v.0)).min().expect("nonempty");
    let hi = vals.iter().map(|v| bin(v.0)).max().expect("nonempty");
    let mut counts = vec![0u64; (hi - lo + 1) as usize];
    let (mut sum, mut total) = (0.0, 0u64);
    for &(v, m) in &vals {
        counts[(bin(v) - lo) as usize] += m;
        sum += v * m as f64;
        total += m;
    }
    Ok(Histogram {
        series: series.into(),
        bin_width,
        bins: counts
            .into_iter()
            .enumerate()
            .map(|(k, c)| ((lo + k as i64) as f64 * bin_width, c))
            .collect(),
        mean: sum / total as f64,
        optimum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{IsingProblem, SampleMeta, SpinConfig};

    #[test]
    fn identical_samples_single_bin() {
        let p = IsingProblem::new(2, [], [(0, 1, -1.0)], [], 0.0).unwrap();
        let c = SpinConfig::uniform(2, 1);
        let s = SampleSet::from_configs(&p, vec![c.clone(), c], SampleMeta::default()).unwrap();
        let h = histogram("raw", &s, HistogramValue::Energy, 1.0, Some(-1.0)).unwrap();
        assert_eq!(h.bins, vec![(-1.0, 2)]);
        assert_eq!(h.mean, -1.0);
        let cut = histogram(
            "raw",
            &s,
            HistogramValue::Cut { total_weight: 1.0 },
            1.0,
            None,
        )
        .unwrap();
        assert_eq!(cut.bins, vec![(1.0, 2)]);
    }

    #[test]
    fn contiguous_bins() {
        let p = IsingProblem::new(3, [], [(0, 1, 1.0), (1, 2, 1.0)], [], 0.0).unwrap();
        let cs = ["+++", "+-+"]
            .iter()
            .map(|s| s.parse::<SpinConfig>().unwrap());
        let s = SampleSet::from_configs(&p, cs, SampleMeta::default()).unwrap();
        let h = histogram("x", &s, HistogramValue::Energy, 1.0, None).unwrap();
        assert_eq!(h.bins.len(), 5);
        assert_eq!(h.bins[0], (-2.0, 1));
        assert_eq!(h.bins[4], (2.0, 1));
        assert!(histogram("x", &s, HistogramValue::Energy, 0.0, None).is_err());
    }
}
