use fanout_forge::pauli::{
    build_context, observable_from_index, Context, Letter, PauliString, TritString,
};
use fanout_forge::sim::StateVector;
use num_complex::Complex64;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::I),
        Just(Letter::X),
        Just(Letter::Y),
        Just(Letter::Z)
    ]
}

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(letter(), n), 0u8..4)
        .prop_map(|(ls, ph)| PauliString::from_letters(&ls).with_phase(ph))
}

fn pair(max_n: usize) -> impl Strategy<Value = (PauliString, PauliString)> {
    (1..=max_n).prop_flat_map(|n| (pauli(n), pauli(n)))
}

fn random_state(n: usize, seed: u64) -> StateVector {
    // arbitrary dense state; Paulis are unitary so PQψ = ±QPψ decides commutation
    let raw: Vec<Complex64> = (0..1u64 << n)
        .map(|i| {
            Complex64::new(
                ((i * 7 + seed) % 11) as f64 + 1.0,
                ((i * 3 + seed) % 5) as f64,
            )
        })
        .collect();
    let norm = raw.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    StateVector::from_amplitudes(n, raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn same(a: &StateVector, b: &StateVector) -> bool {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .all(|(x, y)| (x - y).norm() < 1e-9)
}

fn dense_commute(p: &PauliString, q: &PauliString) -> bool {
    let psi = random_state(p.num_qubits(), 3);
    let pq = psi.apply_pauli(q).unwrap().apply_pauli(p).unwrap();
    let qp = psi.apply_pauli(p).unwrap().apply_pauli(q).unwrap();
    same(&pq, &qp)
}

#[test]
fn commutation_matches_dense_exhaustively_up_to_three_qubits() {
    for n in 1..=3usize {
        let all: Vec<PauliString> = (0..4usize.pow(n as u32))
            .map(|mut k| {
                let ls: Vec<Letter> = (0..n)
                    .map(|_| {
                        let l = [Letter::I, Letter::X, Letter::Y, Letter::Z][k % 4];
                        k /= 4;
                        l
                    })
                    .collect();
                PauliString::from_letters(&ls)
            })
            .collect();
        for p in &all {
            for q in &all {
                assert_eq!(p.commutes(q).unwrap(), dense_commute(p, q), "{p} {q}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn commutation_matches_dense((p, q) in pair(8)) {
        prop_assert_eq!(p.commutes(&q).unwrap(), dense_commute(&p, &q));
    }
}

proptest! {
    #[test]
    fn product_matches_dense((p, q) in pair(6)) {
        let psi = random_state(p.num_qubits(), 1);
        let seq = psi.apply_pauli(&q).unwrap().apply_pauli(&p).unwrap();
        let prod = psi.apply_pauli(&p.product(&q).unwrap()).unwrap();
        prop_assert!(same(&seq, &prod));
    }

    #[test]
    fn gamma_round_trip(
        (p, beta) in (1..=10usize).prop_flat_map(|n| (pauli(n), prop::collection::vec(0u8..3, n)))
    ) {
        let beta = TritString::new(beta).unwrap();
        let back = p.gamma_conjugate(&beta).unwrap().gamma_conjugate(&beta.inverse()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn display_parse_round_trip(p in (1..=70usize).prop_flat_map(pauli)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<PauliString>().unwrap(), p);
    }

    #[test]
    fn context_elements_commute(n in prop::sample::select(vec![2usize, 4, 6, 8]), s in 0u8..2, seed in any::<u64>()) {
        let beta = TritString::from_index(n, u128::from(seed) % 3u128.pow(n as u32)).unwrap();
        let elems = build_context(&Context::new(n, s, beta).unwrap()).unwrap();
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i + 1..] {
                prop_assert!(a.commutes(b).unwrap());
            }
        }
    }
}

#[test]
fn context_sizes_up_to_twelve_qubits() {
    for n in (2..=12).step_by(2) {
        for s in 0..2 {
            let beta = TritString::new((0..n).map(|i| (i % 3) as u8).collect()).unwrap();
            let elems = build_context(&Context::new(n, s, beta).unwrap()).unwrap();
            assert_eq!(elems.len(), (1 << (n - 1)) + 1);
            let distinct: BTreeSet<String> = elems.iter().map(ToString::to_string).collect();
            assert_eq!(distinct.len(), elems.len());
        }
    }
}

#[test]
fn observable_indexing_is_a_bijection() {
    for n in 1..=6usize {
        let seen: BTreeSet<String> = (0..3u128.pow(n as u32))
            .map(|k| {
                let p = observable_from_index(n, &TritString::from_index(n, k).unwrap()).unwrap();
                assert!(p.is_full_weight_observable());
                p.to_string()
            })
            .collect();
        assert_eq!(seen.len(), 3usize.pow(n as u32));
    }
}
