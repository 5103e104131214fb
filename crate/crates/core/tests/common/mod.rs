#![allow(dead_code)]

use proptest::prelude::*;
use twisted_pairing::graph::MultiGraph;
use twisted_pairing::homology::{boundary_matrix, Chain1};
use twisted_pairing::linalg::Gf2Vec;

/// Multigraphs with loops and parallel edges, not necessarily connected.
pub fn multigraph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges)
            .prop_map(move |edges| MultiGraph::new(n, edges).expect("endpoints in range"))
    })
}

pub fn connected_multigraph(
    max_vertices: usize,
    max_edges: usize,
) -> impl Strategy<Value = MultiGraph> {
    multigraph(max_vertices, max_edges).prop_map(|g| {
        // Chain the components together with extra edges.
        let labels = g.component_labels();
        let mut edges = g.edges().to_vec();
        let mut seen = vec![None; g.vertex_count()];
        let mut reps = Vec::new();
        for (v, &c) in labels.iter().enumerate() {
            if seen[c].is_none() {
                seen[c] = Some(v);
                reps.push(v);
            }
        }
        for w in reps.windows(2) {
            edges.push((w[0], w[1]));
        }
        MultiGraph::new(g.vertex_count(), edges).expect("endpoints in range")
    })
}

/// The cycle space, computed directly as the kernel of the boundary map.
pub fn cycle_space(g: &MultiGraph) -> Vec<Gf2Vec> {
    boundary_matrix(g).kernel_basis()
}

/// The XOR of the cycle-space basis vectors selected by `mask`.
pub fn cycle_from_mask(g: &MultiGraph, mask: u64) -> Chain1 {
    let mut acc = Gf2Vec::zeros(g.edge_count());
    for (i, z) in cycle_space(g).iter().enumerate() {
        if i < 64 && (mask >> i) & 1 == 1 {
            acc.xor_assign(z);
        }
    }
    Chain1::from_vec(g, acc).expect("sized for g")
}
