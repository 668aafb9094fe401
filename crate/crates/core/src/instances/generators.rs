use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{gen_random_regular, Graph, HeavyHexTopology};
use crate::model::{IsingProblem, ProblemBuilder};
use crate::rng::rng_from_seed;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Maxcut,
    Hoso,
    PlanarSg,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Maxcut => "maxcut",
            Family::Hoso => "hoso",
            Family::PlanarSg => "planar_sg",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    #[default]
    Generated,
    Imported,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub seed: Option<u64>,
    pub triple_rule: Option<String>,
    /// Other keys written by external generators (library versions and the
    /// like), kept verbatim.
    #[serde(flatten)]
    pub extra: std::collections::BTreeMap<String, serde_json::Value>,
}

/// Bookkeeping carried by a problem produced by cubic-term reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub original_num_spins: usize,
    /// Reduced ground energy minus original ground energy.
    pub offset_shift: f64,
    pub gadget_set: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceMetadata {
    pub name: String,
    pub family: Family,
    /// Known optimum: cut value for max-cut, ground energy otherwise.
    pub opt_value: Option<f64>,
    pub source: Source,
    pub provenance: Provenance,
    pub reduction: Option<ReductionRecord>,
}

impl InstanceMetadata {
    pub fn new(name: impl Into<String>, family: Family, provenance: Provenance) -> Self {
        InstanceMetadata {
            name: name.into(),
            family,
            opt_value: None,
            source: Source::Generated,
            provenance,
            reduction: None,
        }
    }
}

/// `"(N,d,s,u)"`
pub fn maxcut_name(n: usize, d: usize, seed: u64) -> String {
    format!("({n},{d},{seed},u)")
}

/// Parses `"(N,d,s,u)"` back into `(N, d, s)`.
pub fn parse_maxcut_name(name: &str) -> Option<(usize, usize, u64)> {
    let inner = name.trim().strip_prefix('(')?.strip_suffix(')')?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [n, d, s, "u"] => Some((n.parse().ok()?, d.parse().ok()?, s.parse().ok()?)),
        _ => None,
    }
}

/// Unweighted max-cut instance on a random `d`-regular graph, named
/// `"(N,d,s,u)"`.
pub fn gen_maxcut_instance(n: usize, d: usize, seed: u64) -> Result<(Graph, InstanceMetadata)> {
    let graph = gen_random_regular(n, d, seed)?;
    let meta = InstanceMetadata::new(
        maxcut_name(n, d, seed),
        Family::Maxcut,
        Provenance {
            generator: format!("random_regular(n={n},d={d})"),
            seed: Some(seed),
            triple_rule: None,
            ..Default::default()
        },
    );
    Ok((graph, meta))
}

/// Which spin triples receive a cubic term.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum TripleRule {
    /// Every path `u - v - w` of two edges (default).
    #[default]
    LengthTwoPaths,
    /// Paths of two edges whose center has degree exactly two.
    DegreeTwoCenters,
    Explicit(Vec<[usize; 3]>),
}

impl fmt::Display for TripleRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleRule::LengthTwoPaths => f.write_str("length2_paths"),
            TripleRule::DegreeTwoCenters => f.write_str("degree2_centers"),
            TripleRule::Explicit(t) => write!(f, "explicit({})", t.len()),
        }
    }
}

impl FromStr for TripleRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "length2_paths" => Ok(TripleRule::LengthTwoPaths),
            "degree2_centers" => Ok(TripleRule::DegreeTwoCenters),
            other => Err(Error::InvalidParameter(format!(
                "unknown triple rule '{other}' (expected length2_paths or degree2_centers)"
            ))),
        }
    }
}

impl TripleRule {
    /// Sorted, deduplicated triples selected on `graph`.
    pub fn triples(&self, graph: &Graph) -> Result<Vec<[usize; 3]>> {
        let adj = graph.adjacency();
        let mut out: Vec<[usize; 3]> = match self {
            TripleRule::LengthTwoPaths | TripleRule::DegreeTwoCenters => {
                let mut t = Vec::new();
                for (v, nbrs) in adj.iter().enumerate() {
                    if matches!(self, TripleRule::DegreeTwoCenters) && nbrs.len() != 2 {
                        continue;
                    }
                    for (a, &u) in nbrs.iter().enumerate() {
                        for &w in &nbrs[a + 1..] {
                            let mut key = [u, v, w];
                            key.sort_unstable();
                            t.push(key);
                        }
                    }
                }
                t
            }
            TripleRule::Explicit(list) => {
                let mut t = Vec::with_capacity(list.len());
                for &tri in list {
                    let mut key = tri;
                    key.sort_unstable();
                    if let Some(&index) = key.iter().find(|&&i| i >= graph.num_nodes()) {
                        return Err(Error::IndexOutOfRange {
                            index,
                            num_spins: graph.num_nodes(),
                        });
                    }
                    if key[0] == key[1] || key[1] == key[2] {
                        return Err(Error::RepeatedIndex(key.to_vec()));
                    }
                    t.push(key);
                }
                t
            }
        };
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

fn pm_one<T: Scalar, R: Rng>(rng: &mut R) -> T {
    if rng.random::<bool>() {
        T::one()
    } else {
        -T::one()
    }
}

/// Higher-order spin glass on a heavy-hex topology: a linear term on every
/// node, a coupling on every edge and a cubic term on every selected triple,
/// each coefficient drawn uniformly from {-1, +1}.
///
/// Draw order is nodes, then edges (sorted), then triples (sorted).
pub fn gen_hoso_instance<T: Scalar>(
    topology: &HeavyHexTopology,
    seed: u64,
    rule: &TripleRule,
) -> Result<(IsingProblem<T>, InstanceMetadata)> {
    let graph = &topology.graph;
    let mut rng = rng_from_seed(seed);
    let mut b = ProblemBuilder::new(graph.num_nodes()).reject_duplicates();
    for v in 0..graph.num_nodes() {
        b.add_linear(v, pm_one(&mut rng));
    }
    let mut edges: Vec<(usize, usize)> = graph.edges().iter().map(|e| (e.u, e.v)).collect();
    edges.sort_unstable();
    for (u, v) in edges {
        b.add_quadratic(u, v, pm_one(&mut rng));
    }
    for [i, j, k] in rule.triples(graph)? {
        b.add_cubic(i, j, k, pm_one(&mut rng));
    }
    let problem = b.build()?;
    let meta = InstanceMetadata::new(
        format!("hoso-{}-{seed}", topology.spec),
        Family::Hoso,
        Provenance {
            generator: format!("hoso({})", topology.spec),
            seed: Some(seed),
            triple_rule: Some(rule.to_string()),
            ..Default::default()
        },
    );
    Ok((problem, meta))
}

/// Planar spin glass: one coupling per edge, uniform in [-1, 1], no fields.
pub fn gen_planar_spin_glass<T: Scalar>(topology: &HeavyHexTopology, seed: u64) -> IsingProblem<T> {
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(usize, usize)> =
        topology.graph.edges().iter().map(|e| (e.u, e.v)).collect();
    edges.sort_unstable();
    let mut b = ProblemBuilder::new(topology.num_nodes());
    for (u, v) in edges {
        let j: f64 = rng.random_range(-1.0..=1.0);
        b.add_quadratic(u, v, T::lit(j));
    }
    b.build().expect("topology edges are valid")
}

pub fn planar_sg_metadata(topology: &HeavyHexTopology, seed: u64) -> InstanceMetadata {
    InstanceMetadata::new(
        format!("planar-sg-{}-{seed}", topology.spec),
        Family::PlanarSg,
        Provenance {
            generator: format!("planar_sg({})", topology.spec),
            seed: Some(seed),
            triple_rule: None,
            ..Default::default()
        },
    )
}
