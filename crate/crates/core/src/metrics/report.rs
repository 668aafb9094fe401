use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::Family;

use super::histogram::Histogram;

pub const BENCH_HEADER: [&str; 11] = [
    "instance",
    "family",
    "opt",
    "p_gs_raw",
    "p_gs_post",
    "t_sample_ms",
    "tts_raw_ms",
    "tts_post_ms",
    "n_samples",
    "ci_low",
    "ci_high",
];
pub const SWEEP_HEADER: [&str; 5] = [
    "total_time",
    "slices",
    "digitized_time_us",
    "residual_energy",
    "p_gs",
];
pub const HISTOGRAM_HEADER: [&str; 3] = ["series", "bin_low", "count"];

/// One benchmarked instance. `opt` is the optimum in the family's own units
/// (cut value for max-cut, energy otherwise); `ci_*` bound the raw
/// ground-state probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub instance: String,
    pub family: Family,
    pub opt: f64,
    pub p_gs_raw: f64,
    pub p_gs_post: f64,
    pub t_sample_ms: f64,
    #[serde(with = "inf_float")]
    pub tts_raw_ms: f64,
    #[serde(with = "inf_float")]
    pub tts_post_ms: f64,
    pub n_samples: u64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl BenchmarkRow {
    fn cells(&self) -> Vec<String> {
        vec![
            self.instance.clone(),
            self.family.to_string(),
            num(self.opt),
            num(self.p_gs_raw),
            num(self.p_gs_post),
            num(self.t_sample_ms),
            num(self.tts_raw_ms),
            num(self.tts_post_ms),
            self.n_samples.to_string(),
            num(self.ci_low),
            num(self.ci_high),
        ]
    }
}

/// One point of an annealing-time sweep; residual energy is per spin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub total_time: f64,
    pub slices: usize,
    pub digitized_time_us: f64,
    pub residual_energy: f64,
    pub p_gs: f64,
}

impl SweepRow {
    fn cells(&self) -> Vec<String> {
        vec![
            num(self.total_time),
            self.slices.to_string(),
            num(self.digitized_time_us),
            num(self.residual_energy),
            num(self.p_gs),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    Bench {
        rows: Vec<BenchmarkRow>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        histograms: Vec<Histogram>,
    },
    AnnealSim {
        instance: String,
        ground_energy: f64,
        rows: Vec<SweepRow>,
    },
}

/// Output document: every report carries the format version, master seed
/// and an echo of the run parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub seed: u64,
    pub params: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub body: ReportBody,
}

impl Report {
    pub fn new(seed: u64, params: serde_json::Value, body: ReportBody) -> Self {
        Report {
            format_version: crate::FORMAT_VERSION,
            seed,
            params,
            notes: Vec::new(),
            body,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str, origin: &str) -> Result<Self> {
        let r: Report =
            serde_json::from_str(text).map_err(|e| Error::parse(origin, e.to_string()))?;
        if r.format_version != crate::FORMAT_VERSION {
            return Err(Error::parse(
                origin,
                format!("unsupported format_version {}", r.format_version),
            ));
        }
        Ok(r)
    }

    /// Comment preamble followed by comma-separated rows under a fixed header.
    pub fn write_rows<W: Write>(&self, out: W) -> Result<()> {
        match &self.body {
            ReportBody::Bench { rows, .. } => {
                self.write_table(out, &BENCH_HEADER, rows.iter().map(BenchmarkRow::cells))
            }
            ReportBody::AnnealSim { rows, .. } => {
                self.write_table(out, &SWEEP_HEADER, rows.iter().map(SweepRow::cells))
            }
        }
    }

    /// Histogram bins as `(series, bin_low, count)` rows.
    pub fn write_histogram_rows<W: Write>(&self, out: W) -> Result<()> {
        let hists: &[Histogram] = match &self.body {
            ReportBody::Bench { histograms, .. } => histograms,
            ReportBody::AnnealSim { .. } => &[],
        };
        let rows = hists.iter().flat_map(|h| {
            h.bins
                .iter()
                .map(|&(low, c)| vec![h.series.clone(), num(low), c.to_string()])
        });
        self.write_table(out, &HISTOGRAM_HEADER, rows)
    }

    pub fn rows_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_rows(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8 output")
    }

    fn write_table<W: Write>(
        &self,
        mut out: W,
        header: &[&str],
        rows: impl Iterator<Item = Vec<String>>,
    ) -> Result<()> {
        let io = |e: std::io::Error| Error::Io {
            path: "<output>".into(),
            source: e,
        };
        writeln!(out, "# format_version={}", self.format_version).map_err(io)?;
        writeln!(out, "# seed={}", self.seed).map_err(io)?;
        writeln!(out, "# params={}", self.params).map_err(io)?;
        for n in &self.notes {
            writeln!(out, "# note: {n}").map_err(io)?;
        }
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::InvalidParameter(format!("csv output failed: {e}"));
        w.write_record(header).map_err(csv_err)?;
        for r in rows {
            w.write_record(&r).map_err(csv_err)?;
        }
        w.flush().map_err(io)?;
        Ok(())
    }
}

/// Shortest round-trip decimal; infinities as `inf`.
fn num(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        x.to_string()
    }
}

mod inf_float {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_infinite() {
            s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*x)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum NumOrStr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match NumOrStr::deserialize(d)? {
            NumOrStr::Num(x) => Ok(x),
            NumOrStr::Str(s) if s == "inf" => Ok(f64::INFINITY),
            NumOrStr::Str(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
            NumOrStr::Str(s) => Err(de::Error::custom(format!(
                "expected number or \"inf\", got \"{s}\""
            ))),
        }
    }
}
