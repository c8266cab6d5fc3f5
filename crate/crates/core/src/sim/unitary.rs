use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{check_index, Error, Result};

/// Default qubit cap for unitary construction.
pub const DEFAULT_DENSE_CAP: usize = 14;
/// Cap ceiling, whatever the configuration says.
pub const DENSE_HARD_MAX: usize = 16;
/// Environment variable overriding [`DEFAULT_DENSE_CAP`].
pub const DENSE_CAP_ENV: &str = "FANOUT_FORGE_DENSE_CAP";

/// The configured cap: `FANOUT_FORGE_DENSE_CAP` if set and parseable, else
/// 14, never above 16.
pub fn default_dense_cap() -> usize {
    std::env::var(DENSE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_DENSE_CAP)
        .min(DENSE_HARD_MAX)
}

// entries below this magnitude are exact cancellations up to rounding
const PRUNE: f64 = 1e-14;

/// `2^n × 2^n` matrix stored column by column with zero entries omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary {
    n: usize,
    columns: Vec<Vec<(usize, Complex64)>>,
}

impl Unitary {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Non-zero entries of column `col` as `(row, value)`, sorted by row.
    pub fn column(&self, col: usize) -> &[(usize, Complex64)] {
        &self.columns[col]
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.columns[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|i| self.columns[col][i].1)
            .unwrap_or_default()
    }

    /// Every entry multiplied by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Unitary {
        Unitary {
            n: self.n,
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|&(r, v)| (r, v * factor)).collect())
                .collect(),
        }
    }

    /// Entrywise comparison within `tol`.
    pub fn approx_eq(&self, other: &Unitary, tol: f64) -> bool {
        self.n == other.n && (0..self.dim()).all(|c| self.column_matches(other, c, tol))
    }

    /// Columns whose entries differ from `other` by more than `tol`.
    pub fn mismatched_columns(&self, other: &Unitary, tol: f64) -> Vec<usize> {
        (0..self.dim())
            .filter(|&c| !self.column_matches(other, c, tol))
            .collect()
    }

    fn column_matches(&self, other: &Unitary, col: usize, tol: f64) -> bool {
        let mut merged: BTreeMap<usize, Complex64> = BTreeMap::new();
        for &(r, v) in &self.columns[col] {
            *merged.entry(r).or_default() += v;
        }
        for &(r, v) in &other.columns[col] {
            *merged.entry(r).or_default() -= v;
        }
        merged.values().all(|d| d.norm() <= tol)
    }

    /// True when every column holds a single entry of exactly one.
    pub fn is_permutation(&self, tol: f64) -> bool {
        self.columns
            .iter()
            .all(|c| c.len() == 1 && (c[0].1 - Complex64::new(1.0, 0.0)).norm() <= tol)
    }

    /// Row-major dense copy; only sensible for small `n`.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let d = self.dim();
        let mut m = vec![vec![Complex64::default(); d]; d];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[r][c] = v;
            }
        }
        m
    }
}

/// Build the unitary of `circuit` by pushing every basis state through it.
///
/// Each column is simulated exactly on its non-zero amplitudes only, so
/// permutation-like circuits stay cheap at the full 16-qubit cap.
pub fn unitary_of(circuit: &Circuit, cap: usize) -> Result<Unitary> {
    let n = circuit.num_qubits();
    let cap = cap.min(DENSE_HARD_MAX);
    if n > cap {
        return Err(Error::ResourceGuard(format!(
            "unitary on {n} qubits exceeds the dense cap of {cap}"
        )));
    }
    let columns = (0..1usize << n)
        .map(|col| simulate_column(circuit, col))
        .collect::<Result<Vec<_>>>()?;
    Ok(Unitary { n, columns })
}

fn simulate_column(circuit: &Circuit, col: usize) -> Result<Vec<(usize, Complex64)>> {
    let n = circuit.num_qubits();
    let mut state: BTreeMap<usize, Complex64> = BTreeMap::new();
    state.insert(col, Complex64::new(1.0, 0.0));
    let i = Complex64::new(0.0, 1.0);
    for gate in circuit.gates() {
        for q in gate.qubits() {
            check_index(q, n)?;
        }
        state = match *gate {
            Gate::H(q) => {
                let bit = 1usize << q;
                let mut next: BTreeMap<usize, Complex64> = BTreeMap::new();
                for (&k, &a) in &state {
                    let a = a * FRAC_1_SQRT_2;
                    *next.entry(k & !bit).or_default() += a;
                    *next.entry(k | bit).or_default() += if k & bit == 0 { a } else { -a };
                }
                next.retain(|_, v| v.norm() > PRUNE);
                next
            }
            Gate::S(q) => scale_if(state, q, i),
            Gate::Sdg(q) => scale_if(state, q, -i),
            Gate::Z(q) => scale_if(state, q, Complex64::new(-1.0, 0.0)),
            Gate::X(q) => state.into_iter().map(|(k, a)| (k ^ (1 << q), a)).collect(),
            Gate::Cx { control, target } => state
                .into_iter()
                .map(|(k, a)| {
                    if k >> control & 1 == 1 {
                        (k ^ (1 << target), a)
                    } else {
                        (k, a)
                    }
                })
                .collect(),
        };
    }
    Ok(state.into_iter().collect())
}

fn scale_if(
    state: BTreeMap<usize, Complex64>,
    q: usize,
    factor: Complex64,
) -> BTreeMap<usize, Complex64> {
    state
        .into_iter()
        .map(|(k, a)| {
            if k >> q & 1 == 1 {
                (k, a * factor)
            } else {
                (k, a)
            }
        })
        .collect()
}

/// The permutation matrix of `CX(root → every other qubit)`, built directly
/// from its action on basis indices.
pub fn fanout_permutation(n: usize, root: usize) -> Result<Unitary> {
    check_index(root, n)?;
    if n > DENSE_HARD_MAX {
        return Err(Error::ResourceGuard(format!(
            "fanout matrix on {n} qubits exceeds {DENSE_HARD_MAX}"
        )));
    }
    let others = ((1usize << n) - 1) & !(1 << root);
    let columns = (0..1usize << n)
        .map(|col| {
            let row = if col >> root & 1 == 1 {
                col ^ others
            } else {
                col
            };
            vec![(row, Complex64::new(1.0, 0.0))]
        })
        .collect();
    Ok(Unitary { n, columns })
}
