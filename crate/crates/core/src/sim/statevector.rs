use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{check_dims, check_index, Error, Result};
use crate::pauli::PauliString;

pub const MAX_STATEVECTOR_QUBITS: usize = 24;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense `2^n` amplitude vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n > MAX_STATEVECTOR_QUBITS {
            return Err(Error::ResourceGuard(format!(
                "statevector on {n} qubits exceeds {MAX_STATEVECTOR_QUBITS}"
            )));
        }
        check_index(index, 1 << n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Wrap `2^n` amplitudes; the norm must be 1 within 1e-12.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n > MAX_STATEVECTOR_QUBITS {
            return Err(Error::ResourceGuard(format!(
                "statevector on {n} qubits exceeds {MAX_STATEVECTOR_QUBITS}"
            )));
        }
        check_dims(1 << n, amps.len())?;
        let norm: f64 = amps.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("state norm {norm} is not 1")));
        }
        Ok(StateVector { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            check_index(q, self.n)?;
        }
        match *gate {
            Gate::H(q) => {
                let bit = 1usize << q;
                for i in (0..self.amps.len()).filter(|i| i & bit == 0) {
                    let (a, b) = (self.amps[i], self.amps[i | bit]);
                    self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                    self.amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
                }
            }
            Gate::S(q) => self.phase_on(q, I),
            Gate::Sdg(q) => self.phase_on(q, -I),
            Gate::Z(q) => self.phase_on(q, Complex64::new(-1.0, 0.0)),
            Gate::X(q) => {
                let bit = 1usize << q;
                for i in (0..self.amps.len()).filter(|i| i & bit == 0) {
                    self.amps.swap(i, i | bit);
                }
            }
            Gate::Cx { control, target } => {
                let (cb, tb) = (1usize << control, 1usize << target);
                for i in (0..self.amps.len()).filter(|i| i & cb != 0 && i & tb == 0) {
                    self.amps.swap(i, i | tb);
                }
            }
        }
        Ok(())
    }

    fn phase_on(&mut self, q: usize, factor: Complex64) {
        let bit = 1usize << q;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit != 0 {
                *a *= factor;
            }
        }
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        check_dims(self.n, circuit.num_qubits())?;
        for g in circuit.gates() {
            self.apply(g)?;
        }
        Ok(())
    }

    /// `P|ψ⟩` computed letter by letter on basis states.
    pub fn apply_pauli(&self, pauli: &PauliString) -> Result<StateVector> {
        check_dims(self.n, pauli.num_qubits())?;
        let mut flip = 0usize;
        let mut zmask = 0usize;
        let mut ys = 0u32;
        for q in 0..self.n {
            let (x, z) = (pauli.x_bit(q), pauli.z_bit(q));
            if x {
                flip |= 1 << q;
            }
            if z {
                zmask |= 1 << q;
            }
            if x && z {
                ys += 1;
            }
        }
        // Y|b⟩ = i(-1)^b |b⊕1⟩, so each Y adds a factor i on top of the Z sign
        let global = I.powu(pauli.phase_exp() as u32 + ys);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            let sign = if (i & zmask).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[i ^ flip] += a * global * sign;
        }
        Ok(StateVector {
            n: self.n,
            amps: out,
        })
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, pauli: &PauliString) -> Result<Complex64> {
        Ok(self.inner(&self.apply_pauli(pauli)?))
    }

    /// JSON array of `[re, im]` pairs in basis-index order.
    pub fn to_json(&self) -> String {
        let pairs: Vec<[f64; 2]> = self.amps.iter().map(|a| [a.re, a.im]).collect();
        serde_json::to_string(&pairs).expect("plain data serializes")
    }
}

/// Draw `count` computational-basis outcomes from `|amplitude|²`.
///
/// The generator is ChaCha20 seeded through `SeedableRng::seed_from_u64`. Each
/// shot draws one `f64` in `[0, 1)` and returns the first basis index whose
/// running probability sum exceeds it (the last index with non-zero weight
/// absorbs rounding). Outcomes are bitstrings with qubit 0 first.
pub fn sample_shots(state: &StateVector, count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let probs: Vec<f64> = state.amps.iter().map(Complex64::norm_sqr).collect();
    let last = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
    (0..count)
        .map(|_| {
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            let mut hit = last;
            for (i, &p) in probs.iter().enumerate().take(last) {
                acc += p;
                if u < acc {
                    hit = i;
                    break;
                }
            }
            index_to_bits(hit, state.n)
        })
        .collect()
}

pub(crate) fn index_to_bits(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| if (index >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}
