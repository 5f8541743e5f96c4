//! Isomorphism of complexes that preserves vertex types.

use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;

use super::{DevelopedComplex, Vertex};

/// Vertex–chamber incidence graph; chambers determine every simplex.
fn incidence(x: &DevelopedComplex, kind: &impl Fn(&Vertex) -> String) -> UnGraph<Option<String>, ()> {
    let mut g = UnGraph::new_undirected();
    let vs: Vec<_> = x.vertices().iter().map(|v| g.add_node(Some(kind(v)))).collect();
    for c in x.chambers() {
        let node = g.add_node(None);
        for &v in &c.vertices {
            g.add_edge(node, vs[v], ());
        }
    }
    g
}

/// Whether some bijection of vertices matches kinds (as given by the two closures) and chambers.
pub fn typed_isomorphic<F, G>(a: &DevelopedComplex, kind_a: F, b: &DevelopedComplex, kind_b: G) -> bool
where
    F: Fn(&Vertex) -> String,
    G: Fn(&Vertex) -> String,
{
    if a.num_vertices() != b.num_vertices() || a.chambers().len() != b.chambers().len() {
        return false;
    }
    let mut ka: Vec<String> = a.vertices().iter().map(&kind_a).collect();
    let mut kb: Vec<String> = b.vertices().iter().map(&kind_b).collect();
    ka.sort();
    kb.sort();
    if ka != kb {
        return false;
    }
    let (ga, gb) = (incidence(a, &kind_a), incidence(b, &kind_b));
    is_isomorphic_matching(&ga, &gb, |x, y| x == y, |_, _| true)
}
