//! GHZ-preparation CNOT blocks: the doubling construction for full
//! connectivity and a matching-based layer scheduler for arbitrary coupling
//! graphs.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{Circuit, Gate, LayerSchedule};
use crate::error::{check_index, Error, Result};
use crate::fanout::{Verdict, VerifyMode};
use crate::pauli::{Letter, PauliString};
use crate::sim::{stabilizer_group_equal, StateVector, Tableau};
use crate::topology::CouplingGraph;

/// A tree-structured GHZ preparation rooted at `root`.
///
/// Applied after `H(root)` to `|0…0⟩`, the circuit yields the GHZ state. Every
/// non-root qubit is the target of exactly one CX whose control is already
/// entangled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhzPlan {
    root: usize,
    circuit: Circuit,
    schedule: LayerSchedule,
    growth_table: Vec<usize>,
}

impl GhzPlan {
    /// Validate the tree property of a CX list and derive its layering.
    pub fn from_circuit(circuit: Circuit, root: usize) -> Result<Self> {
        let n = circuit.num_qubits();
        check_index(root, n)?;
        let mut entangled = vec![false; n];
        entangled[root] = true;
        for (pos, gate) in circuit.gates().iter().enumerate() {
            let Gate::Cx { control, target } = *gate else {
                return Err(Error::UnsupportedInput(format!(
                    "gate {pos} ({gate}) is not a CX"
                )));
            };
            if !entangled[control] {
                return Err(Error::UnsupportedInput(format!(
                    "gate {pos} ({gate}) uses control {control} before it is entangled"
                )));
            }
            if entangled[target] {
                return Err(Error::UnsupportedInput(format!(
                    "gate {pos} ({gate}) targets already-entangled qubit {target}"
                )));
            }
            entangled[target] = true;
        }
        if let Some(missing) = entangled.iter().position(|e| !e) {
            return Err(Error::UnsupportedInput(format!(
                "qubit {missing} is never targeted"
            )));
        }
        let schedule = circuit.asap_layering(false);
        let mut per_layer = vec![0usize; schedule.depth + 1];
        for &layer in &schedule.layer_of_gate {
            per_layer[layer] += 1;
        }
        let growth_table = per_layer
            .iter()
            .scan(1usize, |size, &added| {
                *size += added;
                Some(*size)
            })
            .collect();
        Ok(GhzPlan {
            root,
            circuit,
            schedule,
            growth_table,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn schedule(&self) -> &LayerSchedule {
        &self.schedule
    }

    pub fn depth(&self) -> usize {
        self.schedule.depth
    }

    /// Cumulative entangled-qubit count after each layer; entry 0 is the root
    /// alone.
    pub fn growth_table(&self) -> &[usize] {
        &self.growth_table
    }

    /// `(layer, size)` rows for layers `1..=depth`.
    pub fn depth_table(&self) -> Vec<(usize, usize)> {
        self.growth_table
            .iter()
            .enumerate()
            .skip(1)
            .map(|(l, &s)| (l, s))
            .collect()
    }

    /// `H(root)` followed by the CNOT block.
    pub fn preparation_circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.num_qubits());
        c.push(Gate::H(self.root)).expect("root is in range");
        c.extend(&self.circuit).expect("same width");
        c
    }

    /// JSON sidecar `{root, depth, growth_table}`.
    pub fn summary_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Summary<'a> {
            root: usize,
            depth: usize,
            growth_table: &'a [usize],
        }
        serde_json::to_value(Summary {
            root: self.root,
            depth: self.depth(),
            growth_table: &self.growth_table,
        })
        .expect("plain data serializes")
    }
}

/// Render `(layer, size)` rows as CSV with a `layer,size` header.
pub fn depth_table_csv(rows: &[(usize, usize)]) -> String {
    let mut out = String::from("layer,size\n");
    for (l, s) in rows {
        out.push_str(&format!("{l},{s}\n"));
    }
    out
}

/// Full-connectivity doubling: layer `i` copies the first `2^(i-1)` qubits
/// onto the next `2^(i-1)`. A non-power-of-two `n` truncates the last layer
/// to its lowest-index controls.
pub fn build_doubling_ghz(n: usize) -> Result<GhzPlan> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "GHZ preparation needs n ≥ 2, got {n}"
        )));
    }
    let mut gates = Vec::with_capacity(n - 1);
    let mut size = 1;
    while size < n {
        let width = size.min(n - size);
        gates.extend((0..width).map(|j| Gate::cx(j, size + j)));
        size += width;
    }
    GhzPlan::from_circuit(Circuit::from_gates(n, gates)?, 0)
}

/// Grow a GHZ state from `root` over the coupling graph, one layer at a time.
///
/// Each layer is a maximum matching between entangled qubits (one CX each as
/// control) and their unentangled neighbours (targeted at most once). Among
/// maximum matchings the scheduler favours targets that head the deepest
/// unentangled region: every unentangled qubit is assigned to its nearest
/// frontier target (multi-source BFS through unentangled qubits, lowest index
/// first), a target's priority is the largest hop count it owns, and
/// augmenting paths are grown from targets in descending priority, ties by
/// lowest index.
pub fn schedule_ghz(graph: &CouplingGraph, root: usize) -> Result<GhzPlan> {
    let n = graph.num_nodes();
    check_index(root, n)?;
    let unreachable = graph.unreachable_from(root);
    if !unreachable.is_empty() {
        return Err(Error::Coverage { root, unreachable });
    }
    let mut entangled = vec![false; n];
    entangled[root] = true;
    let mut remaining = n - 1;
    let mut gates = Vec::with_capacity(n.saturating_sub(1));
    while remaining > 0 {
        let layer = schedule_layer(graph, &entangled);
        debug_assert!(!layer.is_empty(), "connected graph always grows");
        for &(c, t) in &layer {
            entangled[t] = true;
            gates.push(Gate::cx(c, t));
        }
        remaining -= layer.len();
    }
    GhzPlan::from_circuit(Circuit::from_gates(n, gates)?, root)
}

/// One layer of `(control, target)` pairs, sorted by control.
fn schedule_layer(graph: &CouplingGraph, entangled: &[bool]) -> Vec<(usize, usize)> {
    let n = graph.num_nodes();
    let mut is_target = vec![false; n];
    for u in (0..n).filter(|&u| entangled[u]) {
        for &v in graph.neighbors(u) {
            if !entangled[v] {
                is_target[v] = true;
            }
        }
    }
    let targets: Vec<usize> = (0..n).filter(|&v| is_target[v]).collect();

    // nearest-target ownership of the unentangled region
    let mut owner = vec![usize::MAX; n];
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &t in &targets {
        owner[t] = t;
        dist[t] = 0;
        queue.push_back(t);
    }
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            if !entangled[v] && dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                owner[v] = owner[u];
                queue.push_back(v);
            }
        }
    }
    let mut height = vec![0usize; n];
    for v in 0..n {
        if owner[v] != usize::MAX {
            height[owner[v]] = height[owner[v]].max(dist[v]);
        }
    }
    let mut order = targets;
    order.sort_by_key(|&t| (std::cmp::Reverse(height[t]), t));

    let mut matched_target_of = vec![usize::MAX; n];
    for &t in &order {
        let mut seen = vec![false; n];
        augment(graph, entangled, t, &mut seen, &mut matched_target_of);
    }
    (0..n)
        .filter(|&c| matched_target_of[c] != usize::MAX)
        .map(|c| (c, matched_target_of[c]))
        .collect()
}

/// Kuhn augmenting path from an unmatched target into the entangled side.
fn augment(
    graph: &CouplingGraph,
    entangled: &[bool],
    target: usize,
    seen: &mut [bool],
    matched_target_of: &mut [usize],
) -> bool {
    for &c in graph.neighbors(target) {
        if !entangled[c] || seen[c] {
            continue;
        }
        seen[c] = true;
        let current = matched_target_of[c];
        if current == usize::MAX || augment(graph, entangled, current, seen, matched_target_of) {
            matched_target_of[c] = target;
            return true;
        }
    }
    false
}

/// `(layer, cumulative size)` rows of the scheduled plan.
pub fn depth_table(graph: &CouplingGraph, root: usize) -> Result<Vec<(usize, usize)>> {
    Ok(schedule_ghz(graph, root)?.depth_table())
}

/// Root with the smallest scheduled depth, ties broken by lowest index.
pub fn best_root(graph: &CouplingGraph) -> Result<(usize, usize)> {
    let all: Vec<usize> = (0..graph.num_nodes()).collect();
    best_root_among(graph, &all)
}

/// As [`best_root`], restricted to `candidates`.
pub fn best_root_among(graph: &CouplingGraph, candidates: &[usize]) -> Result<(usize, usize)> {
    if candidates.is_empty() {
        return Err(Error::Domain("no candidate roots".into()));
    }
    let results: Vec<Result<(usize, usize)>> = candidates
        .par_iter()
        .map(|&r| schedule_ghz(graph, r).map(|p| (p.depth(), r)))
        .collect();
    let mut best: Option<(usize, usize)> = None;
    for res in results {
        let key = res?;
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    let (depth, root) = best.expect("non-empty candidates");
    Ok((root, depth))
}

/// Check that `circuit` takes `|0…0⟩` to the GHZ state.
///
/// Dense mode compares amplitudes up to a global phase (at most `dense_cap`
/// qubits); tableau mode compares stabilizer groups with `X^n` and the `Z Z`
/// pairs.
pub fn verify_ghz_preparation(
    circuit: &Circuit,
    mode: VerifyMode,
    dense_cap: usize,
) -> Result<Verdict> {
    let n = circuit.num_qubits();
    let failures = match mode {
        VerifyMode::Dense => {
            if n > dense_cap {
                return Err(Error::ResourceGuard(format!(
                    "dense check of {n} qubits exceeds the cap of {dense_cap}"
                )));
            }
            let mut sv = StateVector::zero(n)?;
            sv.apply_circuit(circuit)?;
            let amps = sv.amplitudes();
            let ones = amps.len() - 1;
            let phase = amps[0] * std::f64::consts::SQRT_2;
            let mut failures = Vec::new();
            if (phase.norm() - 1.0).abs() > 1e-10 {
                failures.push("amplitude 0".to_string());
            } else {
                for (k, a) in amps.iter().enumerate() {
                    let want = if k == 0 || k == ones {
                        phase / std::f64::consts::SQRT_2
                    } else {
                        Default::default()
                    };
                    if (a - want).norm() > 1e-10 {
                        failures.push(format!("amplitude {k}"));
                    }
                }
            }
            failures
        }
        VerifyMode::Tableau => {
            let mut t = Tableau::zero_state(n);
            t.apply_circuit(circuit)?;
            let mut gens = vec![PauliString::uniform(n, Letter::X)];
            for i in 1..n {
                let mut p = PauliString::identity(n);
                p.set_letter(0, Letter::Z);
                p.set_letter(i, Letter::Z);
                gens.push(p);
            }
            if stabilizer_group_equal(&t, &gens)? {
                Vec::new()
            } else {
                vec!["stabilizer group".to_string()]
            }
        }
    };
    Ok(Verdict {
        mode,
        n,
        pass: failures.is_empty(),
        failures,
    })
}
