use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::model::{IsingProblem, SpinConfig};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Simple undirected weighted graph. Edges are stored with `u < v` in the
/// order they were given.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    num_nodes: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(
        num_nodes: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        if num_nodes == 0 {
            return Err(Error::InvalidParameter(
                "graph needs at least one node".into(),
            ));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (a, b, weight) in edges {
            for index in [a, b] {
                if index >= num_nodes {
                    return Err(Error::IndexOutOfRange {
                        index,
                        num_spins: num_nodes,
                    });
                }
            }
            if a == b {
                return Err(Error::RepeatedIndex(vec![a, b]));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateTerm(vec![u, v]));
            }
            out.push(Edge { u, v, weight });
        }
        Ok(Graph {
            num_nodes,
            edges: out,
        })
    }

    pub fn unweighted(
        num_nodes: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::new(num_nodes, pairs.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    /// Parses whitespace-separated `u v [weight]` lines. Blank lines and lines
    /// starting with `#` are skipped. Node count is one past the largest index
    /// unless `num_nodes` is given.
    pub fn parse_edge_list(text: &str, num_nodes: Option<usize>) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let at = |msg: String| Error::parse(format!("line {}", lineno + 1), msg);
            if fields.len() < 2 || fields.len() > 3 {
                return Err(at(format!("expected 'u v [weight]', got '{line}'")));
            }
            let u: usize = fields[0]
                .parse()
                .map_err(|e| at(format!("node '{}': {e}", fields[0])))?;
            let v: usize = fields[1]
                .parse()
                .map_err(|e| at(format!("node '{}': {e}", fields[1])))?;
            let w: f64 = match fields.get(2) {
                Some(w) => w.parse().map_err(|e| at(format!("weight '{w}': {e}")))?,
                None => 1.0,
            };
            edges.push((u, v, w));
        }
        let n =
            num_nodes.unwrap_or_else(|| edges.iter().map(|e| e.0.max(e.1) + 1).max().unwrap_or(0));
        Self::new(n, edges)
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_nodes];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Sorted neighbor lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Subgraph induced by `nodes`, relabeled `nodes[k] -> k`.
    pub fn induced(&self, nodes: &[usize]) -> Result<Graph> {
        let mut relabel = vec![usize::MAX; self.num_nodes];
        for (k, &v) in nodes.iter().enumerate() {
            if v >= self.num_nodes {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    num_spins: self.num_nodes,
                });
            }
            if relabel[v] != usize::MAX {
                return Err(Error::RepeatedIndex(vec![v]));
            }
            relabel[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| relabel[e.u] != usize::MAX && relabel[e.v] != usize::MAX)
            .map(|e| (relabel[e.u], relabel[e.v], e.weight));
        Graph::new(nodes.len(), edges)
    }
}

/// Max-cut as Ising minimization: `J_uv = w_uv` on every edge.
///
/// With `W` the total weight, `cut(s) = (W - E(s)) / 2`, so the lowest
/// energy is the largest cut.
pub fn maxcut_to_ising<T: Scalar>(graph: &Graph) -> IsingProblem<T> {
    let mut b = crate::model::ProblemBuilder::new(graph.num_nodes());
    for e in graph.edges() {
        b.add_quadratic(e.u, e.v, T::lit(e.weight));
    }
    b.build()
        .expect("graph invariants guarantee a valid problem")
}

/// Total weight of edges whose endpoints have opposite spins.
pub fn cut_value(graph: &Graph, config: &SpinConfig) -> Result<f64> {
    if config.len() != graph.num_nodes() {
        return Err(Error::Dimension {
            expected: graph.num_nodes(),
            got: config.len(),
        });
    }
    let s = config.as_slice();
    Ok(graph
        .edges()
        .iter()
        .filter(|e| s[e.u] != s[e.v])
        .map(|e| e.weight)
        .sum())
}

/// Ising energy corresponding to a cut value on `graph`.
pub fn cut_to_energy(graph: &Graph, cut: f64) -> f64 {
    graph.total_weight() - 2.0 * cut
}

pub fn energy_to_cut(graph: &Graph, energy: f64) -> f64 {
    (graph.total_weight() - energy) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            Graph::unweighted(2, [(0, 0)]),
            Err(Error::RepeatedIndex(_))
        ));
        assert!(matches!(
            Graph::unweighted(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateTerm(_))
        ));
        assert!(matches!(
            Graph::unweighted(2, [(0, 2)]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn single_edge_cut() {
        let g = Graph::unweighted(2, [(0, 1)]).unwrap();
        let p: IsingProblem<f64> = maxcut_to_ising(&g);
        let split = SpinConfig::new(vec![1, -1]).unwrap();
        let same = SpinConfig::new(vec![1, 1]).unwrap();
        assert_eq!(cut_value(&g, &split).unwrap(), 1.0);
        assert_eq!(cut_value(&g, &same).unwrap(), 0.0);
        assert_eq!(p.energy(&split).unwrap(), -1.0);
    }

    #[test]
    fn edge_list_parsing() {
        let g = Graph::parse_edge_list("# comment\n0 1\n1 2 2.5\n\n", None).unwrap();
        assert_eq!(g.num_nodes(), 3);
        assert_eq!(g.total_weight(), 3.5);
        let err = Graph::parse_edge_list("0 1\n0 x\n", None).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::unweighted(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.induced(&[2, 1, 3]).unwrap();
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.adjacency()[0], vec![1, 2]);
    }
}
