//! Verification oracles: an exact amplitude simulator, column-wise unitaries,
//! and a stabilizer tableau.
//!
//! Basis states are little-endian: qubit `q` is bit `q` of the basis index.
//! Bitstrings (shots, dumps) list qubit 0 first.

mod statevector;
mod tableau;
mod unitary;

pub use statevector::{sample_shots, StateVector, MAX_STATEVECTOR_QUBITS};
pub use tableau::{stabilizer_group_equal, Tableau};
pub use unitary::{
    default_dense_cap, fanout_permutation, unitary_of, Unitary, DENSE_CAP_ENV, DENSE_HARD_MAX,
};
