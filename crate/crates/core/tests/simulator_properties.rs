mod support;

use fanout_forge::circuit::{Circuit, Gate};
use fanout_forge::sim::{sample_shots, StateVector, Tableau};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn clifford(max_n: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_n, 0..80usize, any::<u64>()).prop_map(|(n, len, seed)| {
        support::random_clifford(&mut ChaCha20Rng::seed_from_u64(seed), n, len)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn tableau_stabilizers_have_expectation_one(c in clifford(8)) {
        let mut t = Tableau::zero_state(c.num_qubits());
        t.apply_circuit(&c).unwrap();
        prop_assert!(t.has_canonical_structure());
        let mut sv = StateVector::zero(c.num_qubits()).unwrap();
        sv.apply_circuit(&c).unwrap();
        prop_assert!((sv.norm_sqr() - 1.0).abs() < 1e-12);
        for p in t.stabilizers() {
            let e = sv.expectation(p).unwrap();
            prop_assert!((e.re - 1.0).abs() < 1e-10 && e.im.abs() < 1e-10, "{} has {}", p, e);
        }
    }
}

proptest! {
    #[test]
    fn sampling_is_seed_deterministic(c in clifford(6), seed in any::<u64>()) {
        let mut sv = StateVector::zero(c.num_qubits()).unwrap();
        sv.apply_circuit(&c).unwrap();
        prop_assert_eq!(sample_shots(&sv, 20, seed), sample_shots(&sv, 20, seed));
    }
}

#[test]
fn bell_frequencies_are_balanced() {
    let bell = Circuit::from_gates(2, vec![Gate::H(0), Gate::cx(0, 1)]).unwrap();
    let mut sv = StateVector::zero(2).unwrap();
    sv.apply_circuit(&bell).unwrap();
    for seed in 0..5 {
        let shots = sample_shots(&sv, 10_000, seed);
        assert!(shots.iter().all(|s| s == "00" || s == "11"));
        let ones = shots.iter().filter(|s| *s == "11").count() as f64 / 1e4;
        assert!((ones - 0.5).abs() < 0.02, "seed {seed}: {ones}");
    }
}

#[test]
fn uniform_marginals_pass_chi_square() {
    // H on three qubits: eight equally likely outcomes
    let c = Circuit::from_gates(3, (0..3).map(Gate::H).collect()).unwrap();
    let mut sv = StateVector::zero(3).unwrap();
    sv.apply_circuit(&c).unwrap();
    let shots = sample_shots(&sv, 8000, 42);
    let mut counts = std::collections::BTreeMap::<String, f64>::new();
    for s in shots {
        *counts.entry(s).or_default() += 1.0;
    }
    assert_eq!(counts.len(), 8);
    let chi2: f64 = counts
        .values()
        .map(|&k| (k - 1000.0).powi(2) / 1000.0)
        .sum();
    // 7 degrees of freedom, 99.9th percentile
    assert!(chi2 < 24.32, "chi2 = {chi2}");
}
