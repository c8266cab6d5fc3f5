//! Connectivity-aware fanout synthesis from GHZ preparation circuits, with
//! the Pauli-context machinery needed to identify GHZ-class states from a
//! single measurement shot.
//!
//! The pieces, bottom up:
//!
//! * [`pauli`]: phase-exact Pauli strings, Γ rotations and GHZ contexts.
//! * [`circuit`]: Clifford gate lists with ASAP layering, JSON and OpenQASM 2.
//! * [`topology`]: coupling graphs, including a 156-qubit heavy-hex lattice.
//! * [`ghz`]: depth-minimizing GHZ schedules over a coupling graph.
//! * [`fanout`]: the reverse/sever/append fanout construction and its checks.
//! * [`states`]: state preparation, context measurement and shot decoding.
//! * [`sim`]: state-vector, sparse-unitary and stabilizer-tableau simulators.

pub mod circuit;
pub mod error;
pub mod fanout;
pub mod ghz;
pub mod pauli;
pub mod sim;
pub mod states;
pub mod topology;

pub use circuit::{Circuit, Gate, GateKind, LayerSchedule};
pub use error::{Error, Result};
pub use fanout::{build_fanout_from_ghz, verify_fanout, Verdict, VerifyMode};
pub use ghz::{best_root, schedule_ghz, GhzPlan};
pub use pauli::{Context, Letter, PauliString, TritString};
pub use topology::CouplingGraph;
