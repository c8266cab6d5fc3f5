use std::collections::HashSet;

use serde::Serialize;

use super::{Letter, PauliString, TritString};
use crate::error::{check_dims, Error, Result};

/// Largest qubit count for which a context is materialized in full
/// (2^(n-1)+1 observables).
pub const MAX_CONTEXT_QUBITS: usize = 20;

/// The maximal commuting set `C^s_β = Γ_β C^s_0 Γ_β†` on an even number of
/// qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    n: usize,
    s: u8,
    beta: TritString,
}

impl Context {
    pub fn new(n: usize, s: u8, beta: TritString) -> Result<Self> {
        if n < 2 || n % 2 == 1 {
            return Err(Error::UnsupportedContext(format!(
                "contexts need an even qubit count of at least 2, got {n}"
            )));
        }
        if s > 1 {
            return Err(Error::Domain(format!("s must be 0 or 1, got {s}")));
        }
        check_dims(n, beta.len())?;
        Ok(Context { n, s, beta })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn beta(&self) -> &TritString {
        &self.beta
    }

    /// Number of observables in the materialized set.
    pub fn size(&self) -> u128 {
        (1u128 << (self.n - 1)) + 1
    }

    /// Stabilizer generators of the α = 0 eigenstate, in context order: the
    /// rotated X-type string first, then the rotated `Z_0 Z_i` pairs.
    ///
    /// On the eigenstate labelled α the first generator reads `(-1)^α₁` and
    /// the pair with qubit `i` reads `(-1)^α_{i+1}`.
    pub fn generators(&self) -> Vec<PauliString> {
        let mut xs = PauliString::uniform(self.n, Letter::X);
        if self.s == 1 {
            // S X S† = Y
            xs.set_letter(0, Letter::Y);
        }
        let mut gens = vec![xs];
        for i in 1..self.n {
            let mut zz = PauliString::identity(self.n);
            zz.set_letter(0, Letter::Z);
            zz.set_letter(i, Letter::Z);
            gens.push(zz);
        }
        gens.into_iter()
            .map(|g| {
                g.gamma_conjugate(&self.beta)
                    .expect("lengths checked at construction")
            })
            .collect()
    }
}

#[derive(Serialize)]
struct ContextDoc {
    n: usize,
    s: u8,
    beta: String,
    observables: Vec<String>,
}

impl Context {
    /// JSON document `{n, s, beta, observables}`.
    pub fn to_json(&self) -> Result<String> {
        let doc = ContextDoc {
            n: self.n,
            s: self.s,
            beta: self.beta.to_string(),
            observables: build_context(self)?.iter().map(|p| p.to_string()).collect(),
        };
        Ok(serde_json::to_string_pretty(&doc).expect("plain data serializes"))
    }
}

/// Materialize `C^s_β`: `Z^⊗n` followed by the `{X,Y}^⊗n` strings whose X
/// count has parity `s`, all rotated by `Γ_β`.
pub fn build_context(ctx: &Context) -> Result<Vec<PauliString>> {
    let n = ctx.n;
    if n > MAX_CONTEXT_QUBITS {
        return Err(Error::ResourceGuard(format!(
            "context on {n} qubits has 2^{} + 1 elements (limit {MAX_CONTEXT_QUBITS} qubits)",
            n - 1
        )));
    }
    let mut out = Vec::with_capacity((1usize << (n - 1)) + 1);
    out.push(PauliString::uniform(n, Letter::Z));
    // mask bit (n-1-q) set means X on qubit q, so the listing is ordered with
    // qubit 0 as the most significant position
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() % 2 != ctx.s as u32 {
            continue;
        }
        let letters: Vec<Letter> = (0..n)
            .map(|q| {
                if (mask >> (n - 1 - q)) & 1 == 1 {
                    Letter::X
                } else {
                    Letter::Y
                }
            })
            .collect();
        out.push(PauliString::from_letters(&letters));
    }
    out.into_iter()
        .map(|p| p.gamma_conjugate(&ctx.beta))
        .collect()
}

/// The unique observable shared by `C^0_0` and `C^1_0`.
pub fn context_intersection_check(n: usize) -> Result<PauliString> {
    let zeros = TritString::zeros(n);
    let even: HashSet<PauliString> = build_context(&Context::new(n, 0, zeros.clone())?)?
        .into_iter()
        .collect();
    let common: Vec<PauliString> = build_context(&Context::new(n, 1, zeros)?)?
        .into_iter()
        .filter(|p| even.contains(p))
        .collect();
    match common.as_slice() {
        [only] => Ok(only.clone()),
        _ => Err(Error::Consistency(format!(
            "C^0_0 and C^1_0 share {} elements on {n} qubits",
            common.len()
        ))),
    }
}

/// Count distinct observable sets over all `s ∈ {0,1}` and `β ∈ [0, 3^n)`.
///
/// Sets are compared after stripping phases. `max_qubits` bounds the work
/// (2·3^n contexts of 2^(n-1)+1 elements each).
pub fn enumerate_all_contexts(n: usize, max_qubits: usize) -> Result<usize> {
    if n > max_qubits || n > 12 {
        return Err(Error::ResourceGuard(format!(
            "enumerating 2·3^{n} contexts exceeds the limit of {} qubits",
            max_qubits.min(12)
        )));
    }
    let mut seen: HashSet<Vec<(u64, u64)>> = HashSet::new();
    let total = 3u128.pow(n as u32);
    for s in 0..2 {
        for b in 0..total {
            let ctx = Context::new(n, s, TritString::from_index(n, b)?)?;
            let mut key: Vec<(u64, u64)> = build_context(&ctx)?
                .iter()
                .map(|p| (p.x_words()[0], p.z_words()[0]))
                .collect();
            key.sort_unstable();
            seen.insert(key);
        }
    }
    Ok(seen.len())
}
