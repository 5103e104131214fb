mod common;

use common::{connected_multigraph, cycle_from_mask};
use num_bigint::BigUint;
use proptest::prelude::*;
use twisted_pairing::cover::pairing_via_cover_on_class;
use twisted_pairing::graph::MultiGraph;
use twisted_pairing::homology::{homology_basis, include_chain, Cochain1};
use twisted_pairing::linalg::Gf2Vec;
use twisted_pairing::twisted::{coarse_pairing, TwistedCurveModel, TwoTorsionClass};

fn model() -> impl Strategy<Value = TwistedCurveModel> {
    connected_multigraph(4, 6).prop_flat_map(|g| {
        let (n, m) = (g.vertex_count(), g.edge_count());
        (
            Just(g),
            prop::collection::vec(0usize..=2, n),
            prop::collection::vec(1u64..=6, m),
        )
            .prop_map(|(g, genera, orders)| TwistedCurveModel::new(g, genera, orders).unwrap())
    })
}

fn random_bits(len: usize, mask: u64) -> Gf2Vec {
    Gf2Vec::from_bits(
        &(0..len)
            .map(|i| (mask >> (i % 64)) & 1 == 1)
            .collect::<Vec<_>>(),
    )
}

proptest! {
    #[test]
    fn gram_rank_counts_components_and_reduced_cycles(m in model()) {
        let w = m.weil_form();
        prop_assert!(w.gram.is_symmetric());
        prop_assert!(w.gram.is_alternating());
        // The pushforward H_1(Γ') -> H_1(Γ) is injective and the graph pairing is
        // perfect, so the (h × q) block has full column rank g''.
        let expected = 2 * m.component_genus_total() + 2 * m.reduced_genus();
        prop_assert_eq!(w.gram.rank(), expected);
        prop_assert_eq!(
            w.is_nondegenerate(),
            m.reduced_genus() == m.graph().genus()
        );
    }

    #[test]
    fn criterion_matches_cycle_structure(m in model()) {
        // Independent description: every edge lying on a cycle has even order.
        let cycle_space = twisted_pairing::homology::boundary_matrix(m.graph()).kernel_basis();
        let on_cycle_even = (0..m.graph().edge_count())
            .filter(|&e| cycle_space.iter().any(|z| z.get(e)))
            .all(|e| m.stabilizer_order()[e] % 2 == 0);
        prop_assert_eq!(m.is_nondegenerate(), on_cycle_even);
        let full = BigUint::from(1u32) << (2 * m.arithmetic_genus());
        prop_assert_eq!(m.two_torsion_order() == full, on_cycle_even);
    }

    #[test]
    fn more_odd_nodes_never_increase_the_order(m in model(), extra in any::<u64>()) {
        let orders: Vec<u64> = m
            .stabilizer_order()
            .iter()
            .enumerate()
            .map(|(e, &o)| if (extra >> e) & 1 == 1 { 1 } else { o })
            .collect();
        let coarser = TwistedCurveModel::new(m.graph().clone(), m.vertex_genus().to_vec(), orders).unwrap();
        prop_assert!(coarser.two_torsion_order() <= m.two_torsion_order());
    }

    #[test]
    fn bridge_orders_do_not_matter(m in model(), odd in any::<bool>()) {
        let nonsep = m.graph().non_separating_edges();
        let orders: Vec<u64> = m
            .stabilizer_order()
            .iter()
            .enumerate()
            .map(|(e, &o)| if nonsep.contains(e) { o } else if odd { 3 } else { 2 })
            .collect();
        let changed = TwistedCurveModel::new(m.graph().clone(), m.vertex_genus().to_vec(), orders).unwrap();
        prop_assert_eq!(changed.two_torsion_order(), m.two_torsion_order());
        prop_assert_eq!(changed.is_nondegenerate(), m.is_nondegenerate());
    }

    #[test]
    fn component_block_is_the_coarse_pairing(m in model(), a in any::<u64>(), b in any::<u64>()) {
        let w = m.weil_form();
        let mut x = TwoTorsionClass::zero(w.layout);
        let mut y = TwoTorsionClass::zero(w.layout);
        x.component_part = random_bits(w.layout.component, a);
        y.component_part = random_bits(w.layout.component, b);
        prop_assert_eq!(
            w.pair_classes(&x, &y).unwrap(),
            coarse_pairing(&m, &x.component_part, &y.component_part).unwrap()
        );
    }

    #[test]
    fn h_against_q_is_realized_by_double_covers(m in model(), e_mask in any::<u64>(), c_mask in any::<u64>()) {
        let g: &MultiGraph = m.graph();
        let w = m.weil_form();
        let (deletion, _) = m.reduced_graph();
        let small_basis = homology_basis(&deletion.graph);

        let support: Vec<usize> = (0..g.edge_count()).filter(|e| (e_mask >> e) & 1 == 1).collect();
        let gamma = Cochain1::from_support(g, &support).unwrap();
        let alpha_small = cycle_from_mask(&deletion.graph, c_mask);
        let alpha = include_chain(g, &deletion, &alpha_small).unwrap();

        let mut x = TwoTorsionClass::zero(w.layout);
        x.h_part = w.h_basis().cohomology_coordinates(&gamma);
        let mut y = TwoTorsionClass::zero(w.layout);
        y.q_part = small_basis.homology_coordinates(&alpha_small);

        prop_assert_eq!(
            w.pair_classes(&x, &y).unwrap(),
            pairing_via_cover_on_class(g, &gamma, &alpha).unwrap()
        );
    }
}

#[test]
fn flat_round_trip() {
    let m = TwistedCurveModel::new(
        twisted_pairing::graph::named::theta(),
        vec![1, 0],
        vec![2, 3, 2],
    )
    .unwrap();
    let layout = m.layout();
    for mask in 0u64..1 << layout.dimension() {
        let flat = random_bits(layout.dimension(), mask);
        let class = TwoTorsionClass::from_flat(layout, &flat).unwrap();
        assert_eq!(class.flatten(), flat);
    }
}
