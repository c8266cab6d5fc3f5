//! Ancilla-free fanout gates from GHZ-preparation blocks.
//!
//! A tree-structured block `U` that prepares a GHZ state from `|+⟩_h|0…0⟩`
//! yields the fanout `CX(h → all others)` as `sever_h(U†) ++ U`, with two-qubit
//! depth at most `2·depth(U) − 1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::error::{check_index, Error, Result};
use crate::ghz::GhzPlan;
use crate::pauli::{Letter, PauliString};
use crate::sim::{fanout_permutation, unitary_of};
use crate::states::conjugate_through;

/// `sever_root(U†)` followed by `U`.
pub fn build_fanout_from_ghz(plan: &GhzPlan) -> Circuit {
    let mut out = plan
        .circuit()
        .reverse_dagger()
        .sever(plan.root())
        .expect("plan root is in range");
    out.extend(plan.circuit()).expect("same width");
    out
}

/// Same as [`build_fanout_from_ghz`] for a raw CX list, which must satisfy the
/// tree property from `root`.
pub fn fanout_from_circuit(ghz_block: Circuit, root: usize) -> Result<Circuit> {
    Ok(build_fanout_from_ghz(&GhzPlan::from_circuit(
        ghz_block, root,
    )?))
}

/// Nearest-neighbour ladder `CX(n-2,n-1) … CX(0,1) … CX(n-2,n-1)` realizing
/// `CX(0 → 1, …, n-1)` on a line.
pub fn build_ladder_fanout(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::Domain(format!("fanout needs n ≥ 2, got {n}")));
    }
    let down = (1..n - 1).rev().map(|i| Gate::cx(i, i + 1));
    let up = (1..n - 1).map(|i| Gate::cx(i, i + 1));
    let gates = down.chain([Gate::cx(0, 1)]).chain(up).collect();
    Circuit::from_gates(n, gates)
}

/// An off-path gate `CX(path[step], target)` that fails to commute with the
/// path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branching {
    /// Index into [`PathDecomposition::path`]; 0 would be the root.
    pub step: usize,
    pub target: usize,
    /// Position of the gate in the plan's circuit.
    pub position: usize,
}

/// The control chain from the root to one qubit and its branchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub target: usize,
    /// Qubits `root, n_1, …, target`.
    pub path: Vec<usize>,
    /// Circuit positions of the path gates, in application order.
    pub path_gates: Vec<usize>,
    pub branchings: Vec<Branching>,
}

/// Path and branching structure for every non-root qubit, ordered by qubit.
pub fn extract_paths(plan: &GhzPlan) -> Vec<PathDecomposition> {
    let n = plan.num_qubits();
    let gates = plan.circuit().gates();
    // the gate position that first entangles each qubit
    let mut incoming = vec![usize::MAX; n];
    for (pos, g) in gates.iter().enumerate() {
        if let Gate::Cx { target, .. } = *g {
            incoming[target] = pos;
        }
    }
    (0..n)
        .filter(|&q| q != plan.root())
        .map(|target| {
            let mut path_gates = Vec::new();
            let mut q = target;
            while q != plan.root() {
                let pos = incoming[q];
                path_gates.push(pos);
                let Gate::Cx { control, .. } = gates[pos] else {
                    unreachable!("plans contain only CX gates")
                };
                q = control;
            }
            path_gates.reverse();
            let mut path = vec![plan.root()];
            path.extend(path_gates.iter().map(|&p| gates[p].qubits()[1]));

            let on_path: Vec<bool> = (0..gates.len()).map(|p| path_gates.contains(&p)).collect();
            let branchings = gates
                .iter()
                .enumerate()
                .filter(|&(pos, g)| {
                    !on_path[pos] && path_gates.iter().any(|&p| !gates[p].commutes_with(g))
                })
                .map(|(position, g)| {
                    let (control, tgt) = (g.qubits()[0], g.qubits()[1]);
                    let step = path
                        .iter()
                        .position(|&v| v == control)
                        .expect("non-commuting tree gates branch from the path");
                    Branching {
                        step,
                        target: tgt,
                        position,
                    }
                })
                .collect();
            PathDecomposition {
                target,
                path,
                path_gates,
                branchings,
            }
        })
        .collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Dense,
    Tableau,
}

/// Outcome of a fanout check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub mode: VerifyMode,
    pub n: usize,
    pub pass: bool,
    /// Failing generators (`"X3"`, `"Z0"`) or matrix columns (`"column 5"`).
    pub failures: Vec<String>,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

const MAX_REPORTED_FAILURES: usize = 32;

/// Check that `circuit` equals `CX(root → all other qubits)`.
///
/// Dense mode compares the full unitary entrywise within 1e-10 and refuses
/// circuits wider than `dense_cap`. A global phase, read off the `(0, 0)`
/// entry, is divided out first; CNOT-only circuits are real permutations, so
/// for them this is plain equality. Tableau mode pushes the `2n` generators
/// `X_q`, `Z_q` through the circuit and compares signed images, which fixes
/// the Clifford up to the same global phase.
pub fn verify_fanout(
    circuit: &Circuit,
    root: usize,
    mode: VerifyMode,
    dense_cap: usize,
) -> Result<Verdict> {
    let n = circuit.num_qubits();
    check_index(root, n)?;
    let failures = match mode {
        VerifyMode::Dense => {
            let got = unitary_of(circuit, dense_cap)?;
            let corner = got.entry(0, 0);
            let phase = if (corner.norm() - 1.0).abs() < 1e-10 {
                corner
            } else {
                Complex64::new(1.0, 0.0)
            };
            let want = fanout_permutation(n, root)?.scaled(phase);
            got.mismatched_columns(&want, 1e-10)
                .into_iter()
                .take(MAX_REPORTED_FAILURES)
                .map(|c| format!("column {c}"))
                .collect()
        }
        VerifyMode::Tableau => {
            let mut failures = Vec::new();
            for (letter, name) in [(Letter::X, 'X'), (Letter::Z, 'Z')] {
                for q in 0..n {
                    let gen = PauliString::single(n, q, letter)?;
                    let image = conjugate_through(&gen, circuit)?;
                    if image != fanout_image(n, root, q, letter) {
                        failures.push(format!("{name}{q}"));
                    }
                }
            }
            failures
        }
    };
    Ok(Verdict {
        mode,
        n,
        pass: failures.is_empty(),
        failures,
    })
}

/// Image of the generator `letter_q` under the fanout rooted at `root`.
fn fanout_image(n: usize, root: usize, q: usize, letter: Letter) -> PauliString {
    let mut out = PauliString::identity(n);
    match (letter, q == root) {
        (Letter::X, true) => {
            for t in 0..n {
                out.set_letter(t, Letter::X);
            }
        }
        (Letter::Z, false) => {
            out.set_letter(q, Letter::Z);
            out.set_letter(root, Letter::Z);
        }
        _ => out.set_letter(q, letter),
    }
    out
}
