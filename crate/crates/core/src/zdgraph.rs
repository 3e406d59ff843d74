//! The directed zero-divisor graph: proper zero-divisors as vertices and an
//! edge `s -> t` whenever `s != t` and `st = 0`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::properties::{is_eversible, zero_divisor_sets};
use crate::structure::{FiniteStructure, ZERO};
use crate::table::ElementId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZdGraph {
    /// Proper zero-divisors, ascending.
    pub vertices: Vec<ElementId>,
    /// `out[i]` lists the positions `j` with an edge `vertices[i] -> vertices[j]`.
    pub out: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Notion {
    /// The underlying undirected graph is connected.
    Weak,
    /// Every pair is joined by a directed path in at least one direction.
    Semi,
    /// Every ordered pair is joined by a directed path.
    Strong,
}

impl Notion {
    pub const ALL: [Notion; 3] = [Notion::Weak, Notion::Semi, Notion::Strong];

    pub fn name(self) -> &'static str {
        match self {
            Notion::Weak => "weak",
            Notion::Semi => "semi",
            Notion::Strong => "strong",
        }
    }

    pub fn parse(s: &str) -> Result<Notion> {
        Notion::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| AlgebraError::input(format!("unknown connectivity notion `{s}`")))
    }
}

impl std::fmt::Display for Notion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl ZdGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as element pairs, in lexicographic order.
    pub fn edges(&self) -> Vec<(ElementId, ElementId)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (self.vertices[i], self.vertices[j])))
            .collect()
    }

    pub fn has_edge(&self, s: ElementId, t: ElementId) -> bool {
        match (self.vertices.binary_search(&s), self.vertices.binary_search(&t)) {
            (Ok(i), Ok(j)) => self.out[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// A graph on the vertex positions `0..n` with the given edges; used for
    /// hand-built test graphs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> ZdGraph {
        let mut out = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a != b && !out[a].contains(&b) {
                out[a].push(b);
            }
        }
        for row in &mut out {
            row.sort_unstable();
        }
        ZdGraph { vertices: (0..n).collect(), out }
    }

    fn undirected(&self) -> Vec<Vec<usize>> {
        let mut adj = self.out.clone();
        for (i, js) in self.out.iter().enumerate() {
            for &j in js {
                adj[j].push(i);
            }
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        adj
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    fn distances(adj: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; adj.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap() + 1;
            for &w in &adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn all_distances(&self, adj: &[Vec<usize>]) -> Vec<Vec<Option<usize>>> {
        (0..self.len()).into_par_iter().map(|v| Self::distances(adj, v)).collect()
    }
}

pub fn build_graph(s: &FiniteStructure) -> ZdGraph {
    let vertices = zero_divisor_sets(s).proper;
    let out = vertices
        .iter()
        .map(|&a| {
            vertices
                .iter()
                .enumerate()
                .filter(|&(_, &b)| a != b && s.mul(a, b) == ZERO)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    ZdGraph { vertices, out }
}

/// The distance that matters for a pair under a notion: directed distance
/// for strong, the shorter direction for semi, undirected for weak.
fn pair_distances(g: &ZdGraph, notion: Notion) -> Vec<Option<usize>> {
    let n = g.len();
    let dist = match notion {
        Notion::Weak => g.all_distances(&g.undirected()),
        Notion::Semi | Notion::Strong => g.all_distances(&g.out),
    };
    let mut out = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            match notion {
                Notion::Strong => out.push(dist[u][v]),
                Notion::Weak if u < v => out.push(dist[u][v]),
                Notion::Semi if u < v => out.push(match (dist[u][v], dist[v][u]) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                }),
                _ => {}
            }
        }
    }
    out
}

pub fn connectivity(g: &ZdGraph, notion: Notion) -> bool {
    pair_distances(g, notion).iter().all(Option::is_some)
}

/// Largest relevant distance; `None` stands for infinity (disconnected).
pub fn diameter(g: &ZdGraph, notion: Notion) -> Option<usize> {
    pair_distances(g, notion).into_iter().try_fold(0, |m, d| d.map(|d| m.max(d)))
}

/// Graphviz text; vertices are named by element index.
pub fn to_dot(g: &ZdGraph) -> String {
    let mut text = String::from("digraph zd {\n");
    for (i, &v) in g.vertices.iter().enumerate() {
        let isolated = g.out[i].is_empty() && !g.out.iter().any(|js| js.contains(&i));
        if isolated {
            let _ = writeln!(text, "  \"{v}\";");
        }
    }
    for (a, b) in g.edges() {
        let _ = writeln!(text, "  \"{a}\" -> \"{b}\";");
    }
    text.push('}');
    text
}

/// Agreement between one connectivity notion and eversibility over a corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotionRow {
    pub notion: Notion,
    pub connected_eversible: usize,
    pub connected_not_eversible: usize,
    pub disconnected_eversible: usize,
    pub disconnected_not_eversible: usize,
    /// Largest diameter seen among connected graphs.
    pub max_diameter: usize,
    /// Corpus position of the first disagreement.
    pub first_disagreement: Option<usize>,
}

impl NotionRow {
    pub fn agreements(&self) -> usize {
        self.connected_eversible + self.disconnected_not_eversible
    }

    pub fn disagreements(&self) -> usize {
        self.connected_not_eversible + self.disconnected_eversible
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Calibration {
    pub structures: usize,
    /// Structures with at least two proper zero-divisors.
    pub nontrivial_graphs: usize,
    /// Notions agreeing with eversibility on every structure.
    pub exact: Vec<Notion>,
    pub table: Vec<NotionRow>,
}

impl Calibration {
    /// The preferred notion: the strongest one with exact agreement.
    pub fn default_notion(&self) -> Option<Notion> {
        self.exact.iter().copied().max()
    }
}

pub fn calibrate_connectivity_notion(corpus: &[FiniteStructure]) -> Calibration {
    struct Sample {
        eversible: bool,
        nontrivial: bool,
        per_notion: [(bool, Option<usize>); 3],
    }
    let samples: Vec<Sample> = corpus
        .par_iter()
        .map(|s| {
            let g = build_graph(s);
            let per_notion = Notion::ALL.map(|n| (connectivity(&g, n), diameter(&g, n)));
            Sample { eversible: is_eversible(s).is_holds(), nontrivial: g.len() >= 2, per_notion }
        })
        .collect();
    let table: Vec<NotionRow> = Notion::ALL
        .iter()
        .enumerate()
        .map(|(k, &notion)| {
            let mut row = NotionRow {
                notion,
                connected_eversible: 0,
                connected_not_eversible: 0,
                disconnected_eversible: 0,
                disconnected_not_eversible: 0,
                max_diameter: 0,
                first_disagreement: None,
            };
            for (pos, sample) in samples.iter().enumerate() {
                let (connected, diam) = sample.per_notion[k];
                match (connected, sample.eversible) {
                    (true, true) => row.connected_eversible += 1,
                    (true, false) => row.connected_not_eversible += 1,
                    (false, true) => row.disconnected_eversible += 1,
                    (false, false) => row.disconnected_not_eversible += 1,
                }
                if connected != sample.eversible && row.first_disagreement.is_none() {
                    row.first_disagreement = Some(pos);
                }
                if let Some(d) = diam {
                    row.max_diameter = row.max_diameter.max(d);
                }
            }
            row
        })
        .collect();
    Calibration {
        structures: corpus.len(),
        nontrivial_graphs: samples.iter().filter(|s| s.nontrivial).count(),
        exact: table.iter().filter(|r| r.disagreements() == 0).map(|r| r.notion).collect(),
        table,
    }
}

/// Largest order of the semigroup corpus behind the shipped calibration.
pub const CALIBRATION_ORDER: usize = 4;

/// Every semigroup with zero of order `2..=max_order`, up to isomorphism.
pub fn calibration_corpus(max_order: usize) -> Result<Vec<FiniteStructure>> {
    crate::search::standard_corpus("graph", max_order)
}

/// The calibration over [`calibration_corpus`]`(CALIBRATION_ORDER)` as
/// shipped with the crate.
pub fn shipped_calibration() -> Calibration {
    serde_json::from_str(include_str!("../data/calibration.json")).expect("shipped calibration parses")
}

/// Resolves `weak`, `semi`, `strong` or `calibrated`; the last picks the
/// shipped default.
pub fn resolve_notion(name: &str) -> Result<Notion> {
    if name == "calibrated" {
        return shipped_calibration()
            .default_notion()
            .ok_or_else(|| AlgebraError::input("the shipped calibration has no exact notion"));
    }
    Notion::parse(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::matrix_semiring;
    use crate::named;

    #[test]
    fn boolean_graph_is_empty() {
        let g = build_graph(&named::boolean());
        assert!(g.is_empty());
        assert_eq!(to_dot(&g), "digraph zd {\n}");
        for n in Notion::ALL {
            assert!(connectivity(&g, n));
            assert_eq!(diameter(&g, n), Some(0));
        }
    }

    #[test]
    fn z4_has_one_vertex_and_no_loop() {
        let g = build_graph(&named::zn(4));
        assert_eq!(g.vertices, vec![2]);
        assert!(g.edges().is_empty());
        assert_eq!(to_dot(&g), "digraph zd {\n  \"2\";\n}");
    }

    #[test]
    fn matrix_graph_contains_the_example_edge() {
        let m2 = matrix_semiring(&named::boolean(), 2).unwrap();
        let a = m2.index_of_slice(&[1, 0, 0, 0]).unwrap();
        let b = m2.index_of_slice(&[0, 0, 1, 1]).unwrap();
        let g = build_graph(&m2.structure);
        assert!(g.has_edge(a, b));
        assert!(!g.has_edge(b, a));
    }

    #[test]
    fn one_way_pair() {
        let g = ZdGraph::from_edges(2, &[(0, 1)]);
        assert!(connectivity(&g, Notion::Weak));
        assert!(connectivity(&g, Notion::Semi));
        assert!(!connectivity(&g, Notion::Strong));
        assert_eq!(diameter(&g, Notion::Strong), None);
        assert_eq!(diameter(&g, Notion::Semi), Some(1));
    }

    #[test]
    fn two_way_pair() {
        let g = ZdGraph::from_edges(2, &[(0, 1), (1, 0)]);
        for n in Notion::ALL {
            assert!(connectivity(&g, n));
        }
    }

    #[test]
    fn directed_triangle() {
        let g = ZdGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(diameter(&g, Notion::Strong), Some(2));
        assert_eq!(diameter(&g, Notion::Weak), Some(1));
    }

    #[test]
    fn commutative_corpus_makes_notions_coincide() {
        let corpus: Vec<_> = (2..9).map(named::zn).collect();
        let c = calibrate_connectivity_notion(&corpus);
        assert_eq!(c.exact, Notion::ALL.to_vec());
        let rows: Vec<_> = c.table.iter().map(|r| (r.agreements(), r.max_diameter)).collect();
        assert!(rows.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn dot_is_stable() {
        let m2 = matrix_semiring(&named::boolean(), 2).unwrap().structure;
        assert_eq!(to_dot(&build_graph(&m2)), to_dot(&build_graph(&m2.clone())));
    }
}
