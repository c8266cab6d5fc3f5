//! Random instance generators shared by the integration targets.
#![allow(dead_code)]

use fanout_forge::circuit::{Circuit, Gate};
use fanout_forge::topology::CouplingGraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Connected graph on `n` nodes: a random spanning tree plus up to `extra`
/// random chords, node labels shuffled.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> CouplingGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::with_capacity(n - 1 + extra);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v));
        }
    }
    CouplingGraph::new(n, edges).expect("generated edges are in range")
}

pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> Gate {
    let q = rng.gen_range(0..n);
    match rng.gen_range(0..6) {
        0 => Gate::H(q),
        1 => Gate::S(q),
        2 => Gate::Sdg(q),
        3 => Gate::X(q),
        4 => Gate::Z(q),
        _ if n > 1 => {
            let mut t = rng.gen_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            Gate::cx(q, t)
        }
        _ => Gate::H(q),
    }
}

pub fn random_clifford<R: Rng>(rng: &mut R, n: usize, len: usize) -> Circuit {
    let gates = (0..len).map(|_| random_gate(rng, n)).collect();
    Circuit::from_gates(n, gates).expect("generated gates are in range")
}

pub fn random_cnots<R: Rng>(rng: &mut R, n: usize, len: usize) -> Circuit {
    let gates = (0..len)
        .map(|_| {
            let c = rng.gen_range(0..n);
            let mut t = rng.gen_range(0..n - 1);
            if t >= c {
                t += 1;
            }
            Gate::cx(c, t)
        })
        .collect();
    Circuit::from_gates(n, gates).expect("generated gates are in range")
}

/// Insert `W W†` for a random single-qubit word `W` at a random position.
pub fn pad_with_identity<R: Rng>(rng: &mut R, circuit: &Circuit) -> Circuit {
    let n = circuit.num_qubits();
    let mut gates = circuit.gates().to_vec();
    let word: Vec<Gate> = (0..rng.gen_range(1..4))
        .map(|_| random_gate(rng, n))
        .collect();
    let undo: Vec<Gate> = word.iter().rev().map(Gate::dagger).collect();
    let at = rng.gen_range(0..=gates.len());
    gates.splice(at..at, word.into_iter().chain(undo));
    Circuit::from_gates(n, gates).expect("padding keeps indices in range")
}
