use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instances::Graph;

const EAGLE127: &str = include_str!("../../data/eagle127.edges");
const HERON133: &str = include_str!("../../data/heron133.edges");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologySpec {
    /// 127-node Eagle coupling map.
    Eagle127,
    /// 133-node Heron coupling map.
    Heron133,
    /// Externally supplied or derived (e.g. a fragment) degree-≤3 graph.
    Imported,
    /// `rows` horizontal chains of `4·cols + 3` nodes joined by `cols + 1`
    /// bridge nodes per gap, bridge columns alternating between offsets 0 and
    /// 2 mod 4.
    Generated { rows: usize, cols: usize },
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologySpec::Eagle127 => f.write_str("eagle127"),
            TopologySpec::Heron133 => f.write_str("heron133"),
            TopologySpec::Imported => f.write_str("imported"),
            TopologySpec::Generated { rows, cols } => write!(f, "{rows}x{cols}"),
        }
    }
}

impl FromStr for TopologySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eagle127" => Ok(TopologySpec::Eagle127),
            "heron133" => Ok(TopologySpec::Heron133),
            other => {
                let (r, c) = other
                    .split_once('x')
                    .ok_or_else(|| Error::UnknownTopology(other.into()))?;
                let rows = r
                    .parse()
                    .map_err(|_| Error::UnknownTopology(other.into()))?;
                let cols = c
                    .parse()
                    .map_err(|_| Error::UnknownTopology(other.into()))?;
                Ok(TopologySpec::Generated { rows, cols })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeavyHexTopology {
    pub graph: Graph,
    pub spec: TopologySpec,
}

impl HeavyHexTopology {
    /// Wraps an arbitrary graph, checking the degree bound.
    pub fn imported(graph: Graph) -> Result<Self> {
        if graph.max_degree() > 3 {
            return Err(Error::InvalidParameter(format!(
                "heavy-hex topology needs max degree 3, found {}",
                graph.max_degree()
            )));
        }
        Ok(HeavyHexTopology {
            graph,
            spec: TopologySpec::Imported,
        })
    }

    /// Induced subgraph on `nodes`, relabeled in the given order.
    pub fn fragment(&self, nodes: &[usize]) -> Result<Self> {
        Self::imported(self.graph.induced(nodes)?)
    }

    pub fn num_nodes(&self) -> usize {
        self.graph.num_nodes()
    }
}

pub fn gen_heavy_hex(spec: TopologySpec) -> Result<HeavyHexTopology> {
    let graph = match spec {
        TopologySpec::Eagle127 => load_bundled(EAGLE127, 127)?,
        TopologySpec::Heron133 => load_bundled(HERON133, 133)?,
        TopologySpec::Generated { rows, cols } => generated(rows, cols)?,
        TopologySpec::Imported => {
            return Err(Error::UnknownTopology(
                "imported (use HeavyHexTopology::imported with a graph)".into(),
            ))
        }
    };
    Ok(HeavyHexTopology { graph, spec })
}

fn load_bundled(text: &str, nodes: usize) -> Result<Graph> {
    Graph::parse_edge_list(text, Some(nodes))
}

fn generated(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter(
            "heavy-hex needs rows ≥ 1 and cols ≥ 1".into(),
        ));
    }
    let width = 4 * cols + 3;
    let mut edges = Vec::new();
    let mut next = 0usize;
    // (bridge node, column) awaiting the next row
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for r in 0..rows {
        let start = next;
        next += width;
        for c in 0..width - 1 {
            edges.push((start + c, start + c + 1));
        }
        for &(bridge, col) in &pending {
            edges.push((bridge, start + col));
        }
        pending.clear();
        if r + 1 < rows {
            let first = if r % 2 == 0 { 0 } else { 2 };
            for k in 0..=cols {
                let col = first + 4 * k;
                let bridge = next;
                next += 1;
                edges.push((start + col, bridge));
                pending.push((bridge, col));
            }
        }
    }
    Graph::unweighted(next, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_maps_have_published_sizes() {
        let eagle = gen_heavy_hex(TopologySpec::Eagle127).unwrap();
        assert_eq!(eagle.num_nodes(), 127);
        assert_eq!(eagle.graph.num_edges(), 144);
        assert_eq!(eagle.graph.max_degree(), 3);
        let heron = gen_heavy_hex(TopologySpec::Heron133).unwrap();
        assert_eq!(heron.num_nodes(), 133);
        assert_eq!(heron.graph.num_edges(), 150);
        assert_eq!(heron.graph.max_degree(), 3);
    }

    #[test]
    fn generated_lattice_is_heavy_hex() {
        let t = gen_heavy_hex("7x3".parse().unwrap()).unwrap();
        // 7 rows of 15 plus 6 gaps of 4 bridges.
        assert_eq!(t.num_nodes(), 7 * 15 + 6 * 4);
        assert_eq!(t.graph.num_edges(), 7 * 14 + 6 * 4 * 2);
        assert!(t.graph.max_degree() <= 3);
        let deg = t.graph.degrees();
        assert!(deg.iter().all(|&d| d >= 1));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "eagle127".parse::<TopologySpec>().unwrap(),
            TopologySpec::Eagle127
        );
        assert_eq!(
            "2x1".parse::<TopologySpec>().unwrap(),
            TopologySpec::Generated { rows: 2, cols: 1 }
        );
        assert!(matches!(
            "falcon".parse::<TopologySpec>(),
            Err(Error::UnknownTopology(_))
        ));
        assert!(gen_heavy_hex(TopologySpec::Generated { rows: 0, cols: 1 }).is_err());
    }

    #[test]
    fn fragments_keep_degree_bound() {
        let eagle = gen_heavy_hex(TopologySpec::Eagle127).unwrap();
        let frag = eagle.fragment(&[18, 14, 0, 1, 2, 3, 4, 15]).unwrap();
        assert_eq!(frag.graph.num_edges(), 7);
        assert_eq!(frag.spec, TopologySpec::Imported);
    }
}
