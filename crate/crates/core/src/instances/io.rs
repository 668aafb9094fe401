//! Instance files.
//!
//! One JSON document per instance. Spin-glass files list their terms; max-cut
//! files carry the same envelope with `edges` instead of terms. Field names
//! are fixed by `schemas/instance.schema.json` at the repository root.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{
    maxcut_to_ising, parse_maxcut_name, Family, Graph, InstanceMetadata, Provenance,
    ReductionRecord, Source,
};
use crate::model::{IsingProblem, ProblemBuilder};
use crate::FORMAT_VERSION;

/// A problem together with its metadata and, for max-cut, its graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub problem: IsingProblem<f64>,
    pub meta: InstanceMetadata,
    pub graph: Option<Graph>,
}

impl Instance {
    pub fn from_problem(problem: IsingProblem<f64>, meta: InstanceMetadata) -> Self {
        Instance {
            problem,
            meta,
            graph: None,
        }
    }

    pub fn from_graph(graph: Graph, meta: InstanceMetadata) -> Self {
        Instance {
            problem: maxcut_to_ising(&graph),
            meta,
            graph: Some(graph),
        }
    }

    /// Known ground energy, converting a max-cut optimum when needed.
    pub fn opt_energy(&self) -> Option<f64> {
        let opt = self.meta.opt_value?;
        Some(match (&self.graph, self.meta.family) {
            (Some(g), Family::Maxcut) => crate::instances::cut_to_energy(g, opt),
            _ => opt,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    format_version: u32,
    name: String,
    family: Family,
    num_spins: usize,
    #[serde(default)]
    offset: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(usize, usize, f64)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    linear: Vec<(usize, f64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    quadratic: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    cubic: Vec<(usize, usize, usize, f64)>,
    opt_value: Option<f64>,
    #[serde(default)]
    source: Source,
    provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reduction: Option<ReductionRecord>,
}

pub fn instance_to_string(instance: &Instance) -> String {
    let meta = &instance.meta;
    let p = &instance.problem;
    let mut file = InstanceFile {
        format_version: FORMAT_VERSION,
        name: meta.name.clone(),
        family: meta.family,
        num_spins: p.num_spins(),
        offset: p.offset(),
        edges: None,
        linear: Vec::new(),
        quadratic: Vec::new(),
        cubic: Vec::new(),
        opt_value: meta.opt_value,
        source: meta.source,
        provenance: meta.provenance.clone(),
        reduction: meta.reduction.clone(),
    };
    match &instance.graph {
        Some(g) => {
            file.edges = Some(g.edges().iter().map(|e| (e.u, e.v, e.weight)).collect());
        }
        None => {
            file.linear = p.linear().to_vec();
            file.quadratic = p.quadratic().iter().map(|&([i, j], c)| (i, j, c)).collect();
            file.cubic = p
                .cubic()
                .iter()
                .map(|&([i, j, k], c)| (i, j, k, c))
                .collect();
        }
    }
    let mut text = serde_json::to_string_pretty(&file).expect("instance serializes");
    text.push('\n');
    text
}

/// Parses an instance document; `origin` labels diagnostics.
pub fn instance_from_str(text: &str, origin: &str) -> Result<Instance> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| Error::parse(origin, e.to_string()))?;
    let at = |field: String, e: Error| Error::parse(format!("{origin}: {field}"), e.to_string());

    if file.format_version != FORMAT_VERSION {
        return Err(Error::parse(
            origin,
            format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                file.format_version
            ),
        ));
    }
    let meta = InstanceMetadata {
        name: file.name,
        family: file.family,
        opt_value: file.opt_value,
        source: file.source,
        provenance: file.provenance,
        reduction: file.reduction,
    };

    if let Some(edges) = file.edges {
        if !(file.linear.is_empty() && file.quadratic.is_empty() && file.cubic.is_empty()) {
            return Err(Error::parse(
                origin,
                "a file carries either edges or terms, not both",
            ));
        }
        let mut seen = HashSet::new();
        for (pos, &(u, v, _)) in edges.iter().enumerate() {
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(at(
                    format!("edges[{pos}]"),
                    Error::DuplicateTerm(vec![key.0, key.1]),
                ));
            }
        }
        let graph = Graph::new(file.num_spins, edges).map_err(|e| at("edges".into(), e))?;
        check_maxcut_name(&meta, &graph, origin)?;
        return Ok(Instance::from_graph(graph, meta));
    }

    let mut b = ProblemBuilder::new(file.num_spins).reject_duplicates();
    // Check after every entry so errors name the offending field.
    let check = |b: &mut ProblemBuilder<f64>, field: String| match b.take_error() {
        Some(e) => Err(at(field, e)),
        None => Ok(()),
    };
    for (pos, &(i, h)) in file.linear.iter().enumerate() {
        b.add_linear(i, h);
        check(&mut b, format!("linear[{pos}]"))?;
    }
    for (pos, &(i, j, c)) in file.quadratic.iter().enumerate() {
        b.add_quadratic(i, j, c);
        check(&mut b, format!("quadratic[{pos}]"))?;
    }
    for (pos, &(i, j, k, c)) in file.cubic.iter().enumerate() {
        b.add_cubic(i, j, k, c);
        check(&mut b, format!("cubic[{pos}]"))?;
    }
    b.add_offset(file.offset);
    let problem = b.build().map_err(|e| at("terms".into(), e))?;
    Ok(Instance::from_problem(problem, meta))
}

fn check_maxcut_name(meta: &InstanceMetadata, graph: &Graph, origin: &str) -> Result<()> {
    if meta.family != Family::Maxcut {
        return Ok(());
    }
    match parse_maxcut_name(&meta.name) {
        Some((n, d, _)) => {
            let regular = graph.degrees().iter().all(|&x| x == d);
            if n != graph.num_nodes() || !regular {
                return Err(Error::parse(
                    origin,
                    format!(
                        "name {} does not match a {d}-regular graph on {n} nodes",
                        meta.name
                    ),
                ));
            }
            Ok(())
        }
        None if meta.source == Source::Generated => Err(Error::parse(
            origin,
            format!(
                "generated max-cut name '{}' is not of the form (N,d,s,u)",
                meta.name
            ),
        )),
        None => Ok(()),
    }
}

pub fn save_instance(path: impl AsRef<Path>, instance: &Instance) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, instance_to_string(instance)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    instance_from_str(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_maxcut_instance;

    fn hoso_doc(extra_quadratic: &str) -> String {
        format!(
            r#"{{
  "format_version": 1,
  "name": "t",
  "family": "hoso",
  "num_spins": 3,
  "offset": 0.5,
  "linear": [[0, 1.0]],
  "quadratic": [[0, 1, -1.0]{extra_quadratic}],
  "cubic": [[0, 1, 2, 1.0]],
  "opt_value": null,
  "provenance": {{"generator": "hand", "seed": null, "triple_rule": null}}
}}"#
        )
    }

    #[test]
    fn terms_round_trip() {
        let inst = instance_from_str(&hoso_doc(""), "doc").unwrap();
        assert_eq!(inst.problem.num_terms(), 3);
        assert_eq!(inst.problem.offset(), 0.5);
        let again = instance_from_str(&instance_to_string(&inst), "again").unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn duplicate_pair_names_field() {
        let err = instance_from_str(&hoso_doc(", [1, 0, 2.0]"), "doc").unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("quadratic[1]") && msg.contains("duplicate"),
            "{msg}"
        );
    }

    #[test]
    fn out_of_range_index_names_field() {
        let doc = hoso_doc("").replace("[[0, 1, 2, 1.0]]", "[[0, 1, 7, 1.0]]");
        let msg = instance_from_str(&doc, "doc").unwrap_err().to_string();
        assert!(
            msg.contains("cubic[0]") && msg.contains("out of range"),
            "{msg}"
        );
    }

    #[test]
    fn syntax_errors_report_line() {
        let msg = instance_from_str("{\n  \"format_version\": 1,\n  oops\n}", "doc")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn maxcut_files_use_edges() {
        let (g, meta) = gen_maxcut_instance(8, 3, 2).unwrap();
        let inst = Instance::from_graph(g, meta);
        let text = instance_to_string(&inst);
        assert!(text.contains("\"edges\"") && !text.contains("\"quadratic\""));
        assert_eq!(instance_from_str(&text, "mc").unwrap(), inst);
    }

    #[test]
    fn inconsistent_maxcut_name_rejected() {
        let (g, mut meta) = gen_maxcut_instance(8, 3, 2).unwrap();
        meta.name = "(10,3,2,u)".into();
        let text = instance_to_string(&Instance::from_graph(g, meta));
        assert!(instance_from_str(&text, "mc").is_err());
    }
}
