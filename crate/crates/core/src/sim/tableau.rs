use crate::circuit::{Circuit, Gate};
use crate::error::{check_dims, check_index, Error, Result};
use crate::pauli::{Letter, PauliString};

/// Destabilizer/stabilizer tableau of an n-qubit stabilizer state.
///
/// Rows `0..n` are destabilizers, rows `n..2n` stabilizers; row `i` and row
/// `n + i` anticommute and every other pair commutes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    rows: Vec<PauliString>,
}

impl Tableau {
    /// `|0…0⟩`: destabilizers `X_i`, stabilizers `Z_i`.
    pub fn zero_state(n: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * n);
        for letter in [Letter::X, Letter::Z] {
            for q in 0..n {
                rows.push(PauliString::single(n, q, letter).expect("q < n"));
            }
        }
        Tableau { n, rows }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn destabilizers(&self) -> &[PauliString] {
        &self.rows[..self.n]
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.rows[self.n..]
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            check_index(q, self.n)?;
        }
        for row in &mut self.rows {
            match *gate {
                Gate::H(q) => row.conj_h(q),
                Gate::S(q) => row.conj_s(q),
                Gate::Sdg(q) => row.conj_sdg(q),
                Gate::X(q) => row.conj_x(q),
                Gate::Z(q) => row.conj_z(q),
                Gate::Cx { control, target } => row.conj_cx(control, target),
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        check_dims(self.n, circuit.num_qubits())?;
        for (k, g) in circuit.gates().iter().enumerate() {
            self.apply(g)?;
            if cfg!(debug_assertions) && (k + 1) % 100 == 0 {
                debug_assert!(
                    self.has_canonical_structure(),
                    "tableau structure broken at gate {k}"
                );
            }
        }
        Ok(())
    }

    /// Check the (anti)commutation pattern between all rows.
    pub fn has_canonical_structure(&self) -> bool {
        let n = self.n;
        (0..2 * n).all(|i| {
            self.rows[i].is_hermitian()
                && (i + 1..2 * n).all(|j| {
                    let paired = j == i + n;
                    self.rows[i].commutes_unchecked(&self.rows[j]) != paired
                })
        })
    }

    /// One signed letter string per line, destabilizers first.
    pub fn dump(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                let s = r.to_string();
                if s.starts_with('-') {
                    s
                } else {
                    format!("+{s}")
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }
}

/// Reduced row-echelon basis with exact phases. Pivot columns index the
/// concatenated `x | z` bit vector.
struct EchelonBasis {
    rows: Vec<(usize, PauliString)>,
}

fn symplectic_bit(p: &PauliString, col: usize) -> bool {
    let n = p.num_qubits();
    if col < n {
        p.x_bit(col)
    } else {
        p.z_bit(col - n)
    }
}

impl EchelonBasis {
    fn new(generators: &[PauliString]) -> Self {
        let mut rows: Vec<PauliString> = generators.to_vec();
        let n = rows.first().map_or(0, PauliString::num_qubits);
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..2 * n {
            let Some(found) = (next..rows.len()).find(|&r| symplectic_bit(&rows[r], col)) else {
                continue;
            };
            rows.swap(next, found);
            for r in 0..rows.len() {
                if r != next && symplectic_bit(&rows[r], col) {
                    rows[r] = rows[r].product_unchecked(&rows[next]);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        EchelonBasis {
            rows: pivots.into_iter().zip(rows).collect(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `p` after cancelling every pivot; the identity (with some
    /// phase) exactly when `p` lies in the span.
    fn reduce(&self, p: &PauliString) -> PauliString {
        let mut r = p.clone();
        for (col, row) in &self.rows {
            if symplectic_bit(&r, *col) {
                r = r.product_unchecked(row);
            }
        }
        r
    }
}

/// True iff every generator is a signed product of the tableau's stabilizer
/// rows with the same sign.
///
/// The generators must number `n` and be independent.
pub fn stabilizer_group_equal(tableau: &Tableau, generators: &[PauliString]) -> Result<bool> {
    let n = tableau.num_qubits();
    check_dims(n, generators.len())?;
    for g in generators {
        check_dims(n, g.num_qubits())?;
    }
    let given = EchelonBasis::new(generators);
    if given.rank() < generators.len() {
        return Err(Error::Rank {
            rank: given.rank(),
            count: generators.len(),
        });
    }
    let basis = EchelonBasis::new(tableau.stabilizers());
    Ok(generators.iter().all(|g| {
        // g · b_1 · … · b_k = i^e I and stabilizers square to one, so
        // g = i^e · b_k ⋯ b_1 and membership with the right sign means e = 0
        let residual = basis.reduce(g);
        residual.is_identity_letters() && residual.phase_exp() == 0
    }))
}
