//! Small digraph helpers over adjacency lists.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

/// Strongly connected component id per node. Ids are in reverse
/// topological order: every edge goes from a higher or equal id to a
/// lower or equal one.
pub(crate) fn scc(succ: &[Vec<usize>]) -> Vec<usize> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(succ.len(), 0);
    let nodes: Vec<_> = (0..succ.len()).map(|_| g.add_node(())).collect();
    for (v, out) in succ.iter().enumerate() {
        for &w in out {
            g.add_edge(nodes[v], nodes[w], ());
        }
    }
    let mut comp = vec![0; succ.len()];
    for (c, members) in tarjan_scc(&g).into_iter().enumerate() {
        for n in members {
            comp[n.index()] = c;
        }
    }
    comp
}
