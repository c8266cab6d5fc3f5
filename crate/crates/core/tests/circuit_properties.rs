mod support;

use fanout_forge::circuit::{Circuit, Gate};
use fanout_forge::topology::{grid, heavy_hex_156, line, CouplingGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn clifford() -> impl Strategy<Value = Circuit> {
    (1..=8usize, 0..60usize, any::<u64>()).prop_map(|(n, len, seed)| {
        support::random_clifford(&mut ChaCha20Rng::seed_from_u64(seed), n, len)
    })
}

fn disjoint(a: &Gate, b: &Gate) -> bool {
    a.qubits().iter().all(|q| !b.touches(*q))
}

proptest! {
    #[test]
    fn disjoint_adjacent_swaps_keep_depth(c in clifford(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..20)) {
        let mut gates = c.gates().to_vec();
        for pick in picks {
            if gates.len() < 2 {
                break;
            }
            let i = pick.index(gates.len() - 1);
            if disjoint(&gates[i], &gates[i + 1]) {
                gates.swap(i, i + 1);
            }
        }
        let swapped = Circuit::from_gates(c.num_qubits(), gates).unwrap();
        prop_assert_eq!(swapped.depth(), c.depth());
        prop_assert_eq!(swapped.asap_layering(true).depth, c.asap_layering(true).depth);
    }

    #[test]
    fn sever_drops_exactly_the_gates_on_h(c in clifford(), h in any::<prop::sample::Index>()) {
        let h = h.index(c.num_qubits());
        let cut = c.sever(h).unwrap();
        prop_assert!(cut.gates().iter().all(|g| !g.touches(h)));
        let touching = c.gates().iter().filter(|g| g.touches(h)).count();
        prop_assert_eq!(cut.len() + touching, c.len());
    }

    #[test]
    fn reverse_dagger_is_an_involution(c in clifford()) {
        prop_assert_eq!(c.reverse_dagger().reverse_dagger(), c);
    }

    #[test]
    fn json_and_qasm_round_trip(c in clifford()) {
        prop_assert_eq!(Circuit::from_json(&c.to_json()).unwrap(), c.clone());
        prop_assert_eq!(Circuit::from_qasm(&c.to_qasm()).unwrap(), c.clone());
        prop_assert_eq!(Circuit::from_qasm(&c.to_qasm_measured()).unwrap(), c);
    }

    #[test]
    fn two_qubit_depth_never_exceeds_full_depth(c in clifford()) {
        prop_assert!(c.depth() <= c.asap_layering(true).depth);
        prop_assert!(c.depth() <= c.two_qubit_count());
    }

    #[test]
    fn random_graphs_round_trip_through_edge_lists(n in 1..40usize, extra in 0..40usize, seed in any::<u64>()) {
        let g = support::random_connected_graph(&mut ChaCha20Rng::seed_from_u64(seed), n, extra);
        prop_assert!(g.is_connected());
        prop_assert_eq!(CouplingGraph::load_edge_list(&g.to_edge_list()).unwrap(), g);
    }
}

#[test]
fn generators_are_connected_and_round_trip() {
    let graphs = [
        line(1),
        line(9),
        grid(&[3, 4]),
        grid(&[2, 2, 3]),
        fanout_forge::topology::full(7),
        heavy_hex_156(),
    ];
    for g in graphs {
        assert!(g.is_connected(), "{}", g.name());
        assert_eq!(CouplingGraph::load_edge_list(&g.to_edge_list()).unwrap(), g);
    }
}
