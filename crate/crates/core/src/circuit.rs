//! Gate-list circuits, ASAP layering, reversal, SEVER, and the QASM/JSON
//! formats.
//!
//! Gates are stored in application order: `gates[0]` acts first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    S,
    SDagger,
    Z,
    X,
    Cx,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::SDagger => "S_DAGGER",
            GateKind::Z => "Z",
            GateKind::X => "X",
            GateKind::Cx => "CX",
        }
    }

    fn qasm(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::SDagger => "sdg",
            GateKind::Z => "z",
            GateKind::X => "x",
            GateKind::Cx => "cx",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "H" | "h" => GateKind::H,
            "S" | "s" => GateKind::S,
            "S_DAGGER" | "sdg" => GateKind::SDagger,
            "Z" | "z" => GateKind::Z,
            "X" | "x" => GateKind::X,
            "CX" | "cx" => GateKind::Cx,
            _ => return None,
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Z(usize),
    X(usize),
    Cx { control: usize, target: usize },
}

impl Gate {
    pub fn cx(control: usize, target: usize) -> Self {
        Gate::Cx { control, target }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::SDagger,
            Gate::Z(_) => GateKind::Z,
            Gate::X(_) => GateKind::X,
            Gate::Cx { .. } => GateKind::Cx,
        }
    }

    pub fn from_kind(kind: GateKind, qubits: &[usize]) -> Result<Self> {
        let arity_err = || {
            Error::Domain(format!(
                "gate {} takes {} qubit(s), got {}",
                kind.name(),
                if kind == GateKind::Cx { 2 } else { 1 },
                qubits.len()
            ))
        };
        Ok(match (kind, qubits) {
            (GateKind::Cx, &[c, t]) => Gate::cx(c, t),
            (GateKind::Cx, _) => return Err(arity_err()),
            (_, &[q]) => match kind {
                GateKind::H => Gate::H(q),
                GateKind::S => Gate::S(q),
                GateKind::SDagger => Gate::Sdg(q),
                GateKind::Z => Gate::Z(q),
                GateKind::X => Gate::X(q),
                GateKind::Cx => unreachable!(),
            },
            _ => return Err(arity_err()),
        })
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::Z(q) | Gate::X(q) => vec![q],
            Gate::Cx { control, target } => vec![control, target],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cx { .. })
    }

    pub fn touches(&self, q: usize) -> bool {
        match *self {
            Gate::Cx { control, target } => control == q || target == q,
            Gate::H(p) | Gate::S(p) | Gate::Sdg(p) | Gate::Z(p) | Gate::X(p) => p == q,
        }
    }

    pub fn dagger(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            g => g,
        }
    }

    /// Exact commutation for CX pairs: disjoint, shared controls only, or
    /// shared targets only. Single-qubit gates commute only when disjoint.
    pub fn commutes_with(&self, other: &Gate) -> bool {
        match (*self, *other) {
            (
                Gate::Cx {
                    control: c1,
                    target: t1,
                },
                Gate::Cx {
                    control: c2,
                    target: t2,
                },
            ) => c1 != t2 && c2 != t1,
            _ => self.qubits().iter().all(|q| !other.touches(*q)),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        for q in self.qubits() {
            check_index(q, n)?;
        }
        if let Gate::Cx { control, target } = *self {
            if control == target {
                return Err(Error::Domain(format!(
                    "CX control and target coincide on qubit {control}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Cx { control, target } => write!(f, "CX({control},{target})"),
            g => write!(f, "{}({})", g.kind().name(), g.qubits()[0]),
        }
    }
}

/// Ordered gate list over `n` qubits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

/// Per-gate layer indices (1-based) and the resulting depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerSchedule {
    pub layer_of_gate: Vec<usize>,
    pub depth: usize,
}

impl LayerSchedule {
    /// Gate positions grouped by layer; `layers()[0]` is layer 1.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.depth];
        for (pos, &layer) in self.layer_of_gate.iter().enumerate() {
            if layer > 0 {
                out[layer - 1].push(pos);
            }
        }
        out
    }
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Circuit { n, gates })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Append all gates of `other` (same width).
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        crate::error::check_dims(self.n, other.n)?;
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn is_cnot_only(&self) -> bool {
        self.gates.iter().all(Gate::is_two_qubit)
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Greedy as-soon-as-possible layering.
    ///
    /// A counted gate lands one layer after the latest gate on any of its
    /// qubits. With `count_single_qubit` off, single-qubit gates ride in the
    /// layer of their qubit's last two-qubit gate (0 before any).
    pub fn asap_layering(&self, count_single_qubit: bool) -> LayerSchedule {
        let mut frontier = vec![0usize; self.n];
        let mut layer_of_gate = Vec::with_capacity(self.gates.len());
        let mut depth = 0;
        for g in &self.gates {
            let qs = g.qubits();
            let base = qs.iter().map(|&q| frontier[q]).max().unwrap_or(0);
            let layer = if g.is_two_qubit() || count_single_qubit {
                base + 1
            } else {
                base
            };
            for &q in &qs {
                frontier[q] = layer;
            }
            depth = depth.max(layer);
            layer_of_gate.push(layer);
        }
        LayerSchedule {
            layer_of_gate,
            depth,
        }
    }

    /// Two-qubit ASAP depth.
    pub fn depth(&self) -> usize {
        self.asap_layering(false).depth
    }

    /// Reverse the list and take the adjoint of each gate.
    pub fn reverse_dagger(&self) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::dagger).collect(),
        }
    }

    /// Drop every gate acting on qubit `h`, order preserved.
    pub fn sever(&self, h: usize) -> Result<Circuit> {
        check_index(h, self.n)?;
        Ok(Circuit {
            n: self.n,
            gates: self
                .gates
                .iter()
                .filter(|g| !g.touches(h))
                .copied()
                .collect(),
        })
    }

    /// Relabel qubits through `map` (old index → new index).
    pub fn relabeled(&self, map: &[usize]) -> Result<Circuit> {
        crate::error::check_dims(self.n, map.len())?;
        let gates = self
            .gates
            .iter()
            .map(|g| match *g {
                Gate::Cx { control, target } => Gate::cx(map[control], map[target]),
                g => Gate::from_kind(g.kind(), &[map[g.qubits()[0]]]).expect("arity preserved"),
            })
            .collect();
        Circuit::from_gates(self.n, gates)
    }
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GateDoc {
    kind: String,
    qubits: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    n: usize,
    gates: Vec<GateDoc>,
}

impl Circuit {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.doc()).expect("plain data serializes")
    }

    fn doc(&self) -> CircuitDoc {
        CircuitDoc {
            n: self.n,
            gates: self
                .gates
                .iter()
                .map(|g| GateDoc {
                    kind: g.kind().name().to_string(),
                    qubits: g.qubits(),
                })
                .collect(),
        }
    }

    /// `{"n": .., "gates": [{"kind": .., "qubits": [..]}, ..]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.doc()).expect("plain data serializes")
    }

    /// Accepts a bare circuit document or any object carrying one under a
    /// `"circuit"` key.
    pub fn from_json(text: &str) -> Result<Circuit> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Circuit> {
        let inner = value.get("circuit").unwrap_or(value);
        let doc: CircuitDoc = serde_json::from_value(inner.clone()).map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        let gates = doc
            .gates
            .iter()
            .map(|g| {
                let kind = GateKind::from_name(&g.kind).ok_or_else(|| Error::Parse {
                    line: 1,
                    message: format!("unknown gate kind {:?}", g.kind),
                })?;
                Gate::from_kind(kind, &g.qubits)
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::from_gates(doc.n, gates)
    }

    pub fn to_qasm(&self) -> String {
        self.qasm_text(false)
    }

    /// QASM with a trailing `measure q -> c;`.
    pub fn to_qasm_measured(&self) -> String {
        self.qasm_text(true)
    }

    fn qasm_text(&self, measure: bool) -> String {
        let mut out = String::new();
        out.push_str("OPENQASM 2.0;\n");
        out.push_str("include \"qelib1.inc\";\n");
        out.push_str(&format!("qreg q[{}];\n", self.n));
        out.push_str(&format!("creg c[{}];\n", self.n));
        for g in &self.gates {
            match *g {
                Gate::Cx { control, target } => {
                    out.push_str(&format!("cx q[{control}],q[{target}];\n"))
                }
                g => out.push_str(&format!("{} q[{}];\n", g.kind().qasm(), g.qubits()[0])),
            }
        }
        if measure {
            out.push_str("measure q -> c;\n");
        }
        out
    }

    /// Parse the QASM subset written by [`Circuit::to_qasm`]. A whole-register
    /// `measure` and `barrier` lines are accepted and dropped.
    pub fn from_qasm(text: &str) -> Result<Circuit> {
        let mut n: Option<usize> = None;
        let mut gates = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let line = raw.split("//").next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let stmt = line
                .strip_suffix(';')
                .ok_or_else(|| err(format!("missing ';' in {line:?}")))?
                .trim();
            if stmt.starts_with("OPENQASM") || stmt.starts_with("include") {
                continue;
            }
            if stmt.starts_with("creg")
                || stmt.starts_with("barrier")
                || stmt.starts_with("measure")
            {
                continue;
            }
            if let Some(rest) = stmt.strip_prefix("qreg") {
                let size = rest
                    .trim()
                    .strip_prefix("q[")
                    .and_then(|r| r.strip_suffix(']'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| err(format!("bad register declaration {stmt:?}")))?;
                if n.replace(size).is_some() {
                    return Err(err("only a single quantum register is supported".into()));
                }
                continue;
            }
            let (name, args) = stmt
                .split_once(char::is_whitespace)
                .ok_or_else(|| err(format!("cannot parse statement {stmt:?}")))?;
            let kind = GateKind::from_name(name)
                .filter(|_| name.chars().all(|c| c.is_ascii_lowercase()))
                .ok_or_else(|| err(format!("unsupported gate {name:?}")))?;
            let qubits = args
                .split(',')
                .map(|a| {
                    a.trim()
                        .strip_prefix("q[")
                        .and_then(|r| r.strip_suffix(']'))
                        .and_then(|r| r.parse::<usize>().ok())
                        .ok_or_else(|| err(format!("bad qubit argument {a:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let width = n.ok_or_else(|| err("gate before qreg declaration".into()))?;
            let gate = Gate::from_kind(kind, &qubits).map_err(|e| err(e.to_string()))?;
            gate.validate(width).map_err(|e| err(e.to_string()))?;
            gates.push(gate);
        }
        let n = n.ok_or_else(|| Error::Parse {
            line: 0,
            message: "no qreg declaration".into(),
        })?;
        Circuit::from_gates(n, gates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx_circuit(n: usize, pairs: &[(usize, usize)]) -> Circuit {
        Circuit::from_gates(n, pairs.iter().map(|&(c, t)| Gate::cx(c, t)).collect()).unwrap()
    }

    #[test]
    fn layering_examples() {
        let c = cx_circuit(4, &[(0, 1), (0, 2), (1, 3)]);
        let s = c.asap_layering(false);
        assert_eq!(s.layer_of_gate, vec![1, 2, 2]);
        assert_eq!(s.depth, 2);
        assert_eq!(Circuit::new(3).depth(), 0);
    }

    #[test]
    fn single_qubit_gates_do_not_advance_two_qubit_depth() {
        let c = Circuit::from_gates(
            2,
            vec![
                Gate::H(0),
                Gate::cx(0, 1),
                Gate::S(1),
                Gate::H(0),
                Gate::cx(1, 0),
            ],
        )
        .unwrap();
        assert_eq!(c.asap_layering(false).depth, 2);
        assert_eq!(c.asap_layering(false).layer_of_gate, vec![0, 1, 1, 1, 2]);
        assert_eq!(c.asap_layering(true).depth, 4);
    }

    #[test]
    fn reverse_dagger_examples() {
        let c = cx_circuit(3, &[(0, 1), (1, 2)]);
        assert_eq!(c.reverse_dagger(), cx_circuit(3, &[(1, 2), (0, 1)]));
        assert_eq!(Circuit::new(2).reverse_dagger(), Circuit::new(2));
        let single = cx_circuit(2, &[(0, 1)]);
        assert_eq!(single.reverse_dagger(), single);
        let mixed = Circuit::from_gates(1, vec![Gate::S(0), Gate::H(0)]).unwrap();
        assert_eq!(mixed.reverse_dagger().gates(), &[Gate::H(0), Gate::Sdg(0)]);
    }

    #[test]
    fn sever_examples() {
        let c = cx_circuit(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(c.sever(0).unwrap(), cx_circuit(3, &[(1, 2)]));
        let d = cx_circuit(4, &[(1, 2)]);
        assert_eq!(d.sever(3).unwrap(), d);
        let hex = cx_circuit(100, &[(89, 78), (89, 88), (78, 69)]);
        assert_eq!(hex.sever(89).unwrap(), cx_circuit(100, &[(78, 69)]));
        assert!(matches!(c.sever(3), Err(Error::Index { .. })));
    }

    #[test]
    fn invalid_gates_rejected() {
        assert!(Circuit::from_gates(2, vec![Gate::cx(1, 1)]).is_err());
        assert!(Circuit::from_gates(2, vec![Gate::cx(0, 2)]).is_err());
        assert!(Circuit::new(1).push(Gate::H(1)).is_err());
    }

    #[test]
    fn qasm_output() {
        let text = cx_circuit(2, &[(0, 1)]).to_qasm();
        assert!(text.lines().any(|l| l == "cx q[0],q[1];"));
        let empty = Circuit::new(3).to_qasm();
        assert_eq!(
            empty,
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n"
        );
    }

    #[test]
    fn qasm_parse_errors_carry_line_numbers() {
        let text = "OPENQASM 2.0;\nqreg q[2];\nt q[0];\n";
        assert!(matches!(
            Circuit::from_qasm(text),
            Err(Error::Parse { line: 3, .. })
        ));
        let text = "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[5];\n";
        assert!(matches!(
            Circuit::from_qasm(text),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn json_accepts_wrapped_documents() {
        let c = Circuit::from_gates(3, vec![Gate::H(0), Gate::cx(0, 2)]).unwrap();
        let wrapped = format!("{{\"root\": 0, \"circuit\": {}}}", c.to_json());
        assert_eq!(Circuit::from_json(&wrapped).unwrap(), c);
        assert!(
            Circuit::from_json("{\"n\":2,\"gates\":[{\"kind\":\"T\",\"qubits\":[0]}]}").is_err()
        );
    }

    #[test]
    fn cx_commutation_rule() {
        assert!(Gate::cx(0, 1).commutes_with(&Gate::cx(0, 2)));
        assert!(Gate::cx(0, 2).commutes_with(&Gate::cx(1, 2)));
        assert!(!Gate::cx(0, 1).commutes_with(&Gate::cx(1, 2)));
        assert!(Gate::cx(0, 1).commutes_with(&Gate::cx(2, 3)));
    }
}
