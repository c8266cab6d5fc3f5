//! GHZ-class state preparation, context measurement circuits and the
//! single-shot decoder.
//!
//! Labels and contexts live on abstract qubits where qubit 0 carries the
//! `Z^α₁ S^s` dressing. Circuits run on hardware qubits; [`QubitMap`] swaps
//! abstract qubit 0 with the plan's root and fixes everything else.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::error::{check_dims, Error, Result};
use crate::fanout::{verify_fanout, VerifyMode};
use crate::ghz::GhzPlan;
use crate::pauli::{build_context, Context, PauliString, TritString};

/// `U P U†` for the circuit's unitary `U`, phase exact.
pub fn conjugate_through(pauli: &PauliString, circuit: &Circuit) -> Result<PauliString> {
    check_dims(circuit.num_qubits(), pauli.num_qubits())?;
    let mut p = pauli.clone();
    for g in circuit.gates() {
        match *g {
            Gate::H(q) => p.conj_h(q),
            Gate::S(q) => p.conj_s(q),
            Gate::Sdg(q) => p.conj_sdg(q),
            Gate::X(q) => p.conj_x(q),
            Gate::Z(q) => p.conj_z(q),
            Gate::Cx { control, target } => p.conj_cx(control, target),
        }
    }
    Ok(p)
}

/// Transposition between abstract qubit 0 and the hardware root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitMap {
    n: usize,
    root: usize,
}

impl QubitMap {
    pub fn new(n: usize, root: usize) -> Result<Self> {
        crate::error::check_index(root, n)?;
        Ok(QubitMap { n, root })
    }

    pub fn physical(&self, abstract_qubit: usize) -> usize {
        if abstract_qubit == 0 {
            self.root
        } else if abstract_qubit == self.root {
            0
        } else {
            abstract_qubit
        }
    }

    /// The map is its own inverse.
    pub fn abstract_of(&self, physical: usize) -> usize {
        self.physical(physical)
    }

    fn table(&self) -> Vec<usize> {
        (0..self.n).map(|q| self.physical(q)).collect()
    }

    pub fn to_physical(&self, p: &PauliString) -> Result<PauliString> {
        p.permuted(&self.table())
    }
}

/// `|φ_α, C^s_β⟩ = Γ_β (Z^α₁ S^s ⊗ X^α₂ ⊗ … ⊗ X^αₙ) |GHZ₀⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GhzClassLabel {
    alpha: Vec<u8>,
    s: u8,
    beta: TritString,
}

impl GhzClassLabel {
    pub fn new(alpha: Vec<u8>, s: u8, beta: TritString) -> Result<Self> {
        check_dims(alpha.len(), beta.len())?;
        if alpha.iter().any(|&a| a > 1) || s > 1 {
            return Err(Error::Domain("alpha bits and s must be 0 or 1".into()));
        }
        Ok(GhzClassLabel { alpha, s, beta })
    }

    /// Parse `alpha` as a bitstring with α₁ first.
    pub fn parse(alpha: &str, s: u8, beta: TritString) -> Result<Self> {
        let bits = parse_bits(alpha)?;
        Self::new(bits, s, beta)
    }

    pub fn num_qubits(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u8] {
        &self.alpha
    }

    pub fn alpha_string(&self) -> String {
        bits_to_string(&self.alpha)
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn beta(&self) -> &TritString {
        &self.beta
    }

    pub fn context(&self) -> Result<Context> {
        Context::new(self.num_qubits(), self.s, self.beta.clone())
    }
}

fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse {
                line: 1,
                message: format!("invalid bit {c:?} in {text:?}"),
            }),
        })
        .collect()
}

fn bits_to_string(bits: &[u8]) -> String {
    bits.iter()
        .map(|&b| if b == 1 { '1' } else { '0' })
        .collect()
}

/// Gate sequence (application order) for `Γ_b`.
fn gamma_gates(b: u8, q: usize) -> Vec<Gate> {
    match b {
        0 => vec![],
        // Γ₁ = H Z S
        1 => vec![Gate::S(q), Gate::Z(q), Gate::H(q)],
        // Γ₂ = S H
        _ => vec![Gate::H(q), Gate::S(q)],
    }
}

/// Gate sequence (application order) for `Γ_b†`.
fn gamma_dagger_gates(b: u8, q: usize) -> Vec<Gate> {
    gamma_gates(b, q).iter().rev().map(Gate::dagger).collect()
}

/// `H(root)`, the plan's CNOTs, the `Z^α₁ S^s` / `X^αᵢ` dressing, then `Γ_β`.
pub fn prepare_state_circuit(label: &GhzClassLabel, plan: &GhzPlan) -> Result<Circuit> {
    let n = label.num_qubits();
    check_dims(n, plan.num_qubits())?;
    let map = QubitMap::new(n, plan.root())?;
    let mut c = plan.preparation_circuit();
    let first = map.physical(0);
    if label.s == 1 {
        c.push(Gate::S(first))?;
    }
    if label.alpha[0] == 1 {
        c.push(Gate::Z(first))?;
    }
    for i in 1..n {
        if label.alpha[i] == 1 {
            c.push(Gate::X(map.physical(i)))?;
        }
    }
    for (i, &b) in label.beta.trits().iter().enumerate() {
        for g in gamma_gates(b, map.physical(i)) {
            c.push(g)?;
        }
    }
    Ok(c)
}

/// Measurement circuit for one context: `Γ_β†`, `(S†)^s` on the root, the
/// fanout, `H` on the root, then a computational-basis readout of every
/// qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementCircuit {
    context: Context,
    map: QubitMap,
    circuit: Circuit,
}

impl MeasurementCircuit {
    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn root(&self) -> usize {
        self.map.root
    }

    pub fn qubit_map(&self) -> &QubitMap {
        &self.map
    }

    /// The unitary part; measurement of all qubits follows it.
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn to_qasm(&self) -> String {
        self.circuit.to_qasm_measured()
    }
}

/// Build the measurement circuit for `ctx`. The fanout must tableau-verify
/// against `root`.
pub fn measurement_circuit(
    ctx: &Context,
    fanout: &Circuit,
    root: usize,
) -> Result<MeasurementCircuit> {
    let n = ctx.num_qubits();
    check_dims(n, fanout.num_qubits())?;
    let verdict = verify_fanout(fanout, root, VerifyMode::Tableau, 0)?;
    if !verdict.pass {
        return Err(Error::Precondition(format!(
            "circuit is not a fanout from qubit {root} (failing generators {:?})",
            verdict.failures
        )));
    }
    let map = QubitMap::new(n, root)?;
    let mut c = Circuit::new(n);
    for (i, &b) in ctx.beta().trits().iter().enumerate() {
        for g in gamma_dagger_gates(b, map.physical(i)) {
            c.push(g)?;
        }
    }
    if ctx.s() == 1 {
        c.push(Gate::Sdg(root))?;
    }
    c.extend(fanout)?;
    c.push(Gate::H(root))?;
    Ok(MeasurementCircuit {
        context: ctx.clone(),
        map,
        circuit: c,
    })
}

/// One decoded measurement outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedShot {
    /// Raw outcome, hardware qubit 0 first.
    pub raw_bits: String,
    /// Every context observable (abstract qubits) with its ±1 value.
    pub eigenvalues: Vec<(PauliString, i8)>,
    /// Recovered α, α₁ first.
    pub recovered_alpha: Vec<u8>,
    pub s: u8,
    pub beta: TritString,
}

impl DecodedShot {
    pub fn label(&self) -> GhzClassLabel {
        GhzClassLabel {
            alpha: self.recovered_alpha.clone(),
            s: self.s,
            beta: self.beta.clone(),
        }
    }

    /// JSON `{bits, eigenvalues: {letters: ±1}, alpha, s, beta}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc<'a> {
            bits: &'a str,
            eigenvalues: BTreeMap<String, i8>,
            alpha: String,
            s: u8,
            beta: String,
        }
        serde_json::to_value(Doc {
            bits: &self.raw_bits,
            eigenvalues: self
                .eigenvalues
                .iter()
                .map(|(p, v)| (p.to_string(), *v))
                .collect(),
            alpha: bits_to_string(&self.recovered_alpha),
            s: self.s,
            beta: self.beta.to_string(),
        })
        .expect("plain data serializes")
    }
}

/// ±1 value that a post-circuit outcome assigns to `observable` (abstract
/// qubits). The conjugated operator must be diagonal.
fn eigenvalue(observable: &PauliString, mc: &MeasurementCircuit, bits: &[u8]) -> Result<i8> {
    let physical = mc.map.to_physical(observable)?;
    let image = conjugate_through(&physical, &mc.circuit)?;
    if !image.is_diagonal() {
        return Err(Error::Consistency(format!(
            "{observable} maps to non-diagonal {image}; wrong measurement circuit"
        )));
    }
    let sign = image
        .sign()
        .ok_or_else(|| Error::Consistency(format!("{observable} maps to non-Hermitian {image}")))?;
    let parity = (0..bits.len())
        .filter(|&q| image.z_bit(q) && bits[q] == 1)
        .count()
        % 2;
    Ok(if parity == 1 { -sign } else { sign })
}

/// Recover α from the context generators alone; works at any width.
pub fn recover_alpha(bits: &str, mc: &MeasurementCircuit) -> Result<Vec<u8>> {
    let raw = parse_bits(bits)?;
    check_dims(mc.context.num_qubits(), raw.len())?;
    mc.context
        .generators()
        .iter()
        .map(|g| eigenvalue(g, mc, &raw).map(|v| u8::from(v < 0)))
        .collect()
}

/// Eigenvalues of every context observable plus the recovered label.
pub fn decode_shot(bits: &str, ctx: &Context, mc: &MeasurementCircuit) -> Result<DecodedShot> {
    if ctx != &mc.context {
        return Err(Error::Precondition(
            "measurement circuit was built for a different context".into(),
        ));
    }
    let raw = parse_bits(bits)?;
    check_dims(ctx.num_qubits(), raw.len())?;
    let eigenvalues = build_context(ctx)?
        .into_iter()
        .map(|o| eigenvalue(&o, mc, &raw).map(|v| (o, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecodedShot {
        raw_bits: bits.trim().to_string(),
        eigenvalues,
        recovered_alpha: recover_alpha(bits, mc)?,
        s: ctx.s(),
        beta: ctx.beta().clone(),
    })
}

/// Shots as one bitstring per line (blank lines and `#` comments skipped) or
/// as a JSON array of bitstrings. Qubit 0 is the leftmost character.
pub fn parse_shots(text: &str) -> Result<Vec<String>> {
    if text.trim_start().starts_with('[') {
        let shots: Vec<String> = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        for shot in &shots {
            parse_bits(shot)?;
        }
        return Ok(shots);
    }
    let mut shots = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        parse_bits(line).map_err(|_| Error::Parse {
            line: idx + 1,
            message: format!("invalid shot {line:?}"),
        })?;
        shots.push(line.to_string());
    }
    Ok(shots)
}

/// Observables whose value changed between shots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InconsistencyReport {
    pub shots: usize,
    /// `(observable, first shot index where it differs from shot 0)`.
    pub differing: Vec<(PauliString, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identification {
    Label(GhzClassLabel),
    Inconsistent(InconsistencyReport),
}

/// Label read from the first shot, unless some eigenvalue disagrees across
/// shots.
pub fn identify_state(shots: &[DecodedShot]) -> Result<Identification> {
    let first = shots.first().ok_or(Error::EmptyShots)?;
    let mut differing = Vec::new();
    for (k, (obs, value)) in first.eigenvalues.iter().enumerate() {
        if let Some(idx) = shots
            .iter()
            .position(|s| s.eigenvalues.get(k).map(|(_, v)| v) != Some(value))
        {
            differing.push((obs.clone(), idx));
        }
    }
    if differing.is_empty() {
        Ok(Identification::Label(first.label()))
    } else {
        Ok(Identification::Inconsistent(InconsistencyReport {
            shots: shots.len(),
            differing,
        }))
    }
}
