use dot_parser::{ast, canonical};
use zdlab::constructions::matrix_semiring;
use zdlab::named;
use zdlab::zdgraph::{build_graph, to_dot, ZdGraph};

fn parse(text: &str) -> (Vec<usize>, Vec<(usize, usize)>) {
    let graph = ast::Graph::try_from(text).expect("DOT parses");
    let graph = canonical::Graph::from(graph);
    let id = |s: &str| s.trim_matches('"').parse::<usize>().unwrap();
    let mut nodes: Vec<usize> = graph.nodes.set.keys().map(|k| id(k)).collect();
    nodes.sort();
    let mut edges: Vec<(usize, usize)> =
        graph.edges.set.iter().map(|e| (id(&e.from), id(&e.to))).collect();
    edges.sort();
    (nodes, edges)
}

fn check(g: &ZdGraph) {
    let (nodes, edges) = parse(&to_dot(g));
    assert_eq!(edges, g.edges());
    let mut expected = g.vertices.clone();
    expected.sort();
    assert!(nodes.iter().all(|n| expected.contains(n)));
    for v in &expected {
        assert!(nodes.contains(v) || edges.iter().any(|&(a, b)| a == *v || b == *v));
    }
}

#[test]
fn matrix_graph_round_trips() {
    let m = matrix_semiring(&named::boolean(), 2).unwrap();
    let g = build_graph(&m.structure);
    assert!(!g.edges().is_empty());
    check(&g);
}

#[test]
fn small_graphs_round_trip() {
    check(&build_graph(&named::zn(4)));
    check(&build_graph(&named::zn(8)));
    check(&ZdGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]));
}
