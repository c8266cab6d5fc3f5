//! n-qubit Pauli operators in symplectic form, the cyclic Γ rotations and
//! the maximal commuting contexts built from them.
//!
//! A [`PauliString`] stands for `i^phase · P_0 ⊗ P_1 ⊗ … ⊗ P_{n-1}` where each
//! `P_q` is one of the Hermitian letters `I, X, Y, Z` and `Y = iXZ`. Qubit 0 is
//! the leftmost letter of the textual form.

mod context;
mod trit;

pub use context::{
    build_context, context_intersection_check, enumerate_all_contexts, Context, MAX_CONTEXT_QUBITS,
};
pub use trit::TritString;

use std::fmt;
use std::str::FromStr;

use crate::error::{check_dims, check_index, Error, Result};

/// Single-qubit Pauli letter.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' | '_' => Some(Letter::I),
            'X' | 'x' => Some(Letter::X),
            'Y' | 'y' => Some(Letter::Y),
            'Z' | 'z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// `Γ_b · letter · Γ_b†` for the rotation family Γ₀ = 1, Γ₁ = HZS, Γ₂ = SH.
///
/// Γ₁ cycles X→Y→Z→X, Γ₂ cycles the other way. No sign is ever picked up and
/// the identity is fixed.
///
/// # Panics
/// If `b > 2`.
pub fn gamma_conjugate_letter(letter: Letter, b: u8) -> Letter {
    use Letter::*;
    match (b, letter) {
        (_, I) => I,
        (0, l) => l,
        (1, X) => Y,
        (1, Y) => Z,
        (1, Z) => X,
        (2, X) => Z,
        (2, Y) => X,
        (2, Z) => Y,
        _ => panic!("trit out of range: {b}"),
    }
}

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Pauli operator with exact quarter-turn phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
            phase: 0,
        }
    }

    /// `letter` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, letter: Letter) -> Result<Self> {
        check_index(q, n)?;
        let mut p = Self::identity(n);
        p.set_letter(q, letter);
        Ok(p)
    }

    /// The same letter on every qubit.
    pub fn uniform(n: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        for q in 0..n {
            p.set_letter(q, letter);
        }
        p
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut p = Self::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set_letter(q, l);
        }
        p
    }

    /// Build from raw bit vectors. `phase` counts powers of `i` in front of the
    /// letter product.
    pub fn from_bits(x_bits: &[bool], z_bits: &[bool], phase: u8) -> Result<Self> {
        check_dims(x_bits.len(), z_bits.len())?;
        let mut p = Self::identity(x_bits.len());
        for (q, (&x, &z)) in x_bits.iter().zip(z_bits).enumerate() {
            p.set_letter(q, Letter::from_bits(x, z));
        }
        p.phase = phase % 4;
        Ok(p)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Power of `i` multiplying the letter product, in `0..4`.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    /// ±1 for Hermitian operators, `None` when the phase is ±i.
    pub fn sign(&self) -> Option<i8> {
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    pub fn letter(&self, q: usize) -> Letter {
        let (w, b) = (q / WORD, q % WORD);
        Letter::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set_letter(&mut self, q: usize, letter: Letter) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (w, b) = (q / WORD, q % WORD);
        let (x, z) = letter.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((x as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((z as u64) << b);
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n).map(|q| self.letter(q))
    }

    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / WORD] >> (q % WORD)) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / WORD] >> (q % WORD)) & 1 == 1
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity_letters(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// True when the operator has no X component.
    pub fn is_diagonal(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    /// A ±1-valued element of `{X,Y,Z}^⊗n`: full support and real sign.
    pub fn is_full_weight_observable(&self) -> bool {
        self.is_hermitian() && self.weight() == self.n
    }

    /// Copy with the phase dropped.
    pub fn stripped(&self) -> Self {
        PauliString {
            phase: 0,
            ..self.clone()
        }
    }

    fn y_count(&self) -> u32 {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x & z).count_ones())
            .sum()
    }

    /// Symplectic commutation test.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        check_dims(self.n, other.n)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliString) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= (self.x[w] & other.z[w]).count_ones() & 1;
            parity ^= (self.z[w] & other.x[w]).count_ones() & 1;
        }
        parity == 0
    }

    /// Operator product `self · other` with exact phase.
    pub fn product(&self, other: &PauliString) -> Result<PauliString> {
        check_dims(self.n, other.n)?;
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &PauliString) -> PauliString {
        // Work in the X^x Z^z ordering where Y = i X Z; moving Z^{z1} past
        // X^{x2} costs (-1)^{z1·x2}.
        let mut swap = 0u32;
        for w in 0..self.x.len() {
            swap += (self.z[w] & other.x[w]).count_ones();
        }
        let x: Vec<u64> = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z: Vec<u64> = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        let mut out = PauliString {
            n: self.n,
            x,
            z,
            phase: 0,
        };
        let e = self.phase as u32
            + other.phase as u32
            + self.y_count()
            + other.y_count()
            + 2 * swap
            + 4 * self.n as u32
            - out.y_count();
        out.phase = (e % 4) as u8;
        out
    }

    /// Apply `Γ_β (·) Γ_β†` letter by letter.
    pub fn gamma_conjugate(&self, beta: &TritString) -> Result<PauliString> {
        check_dims(self.n, beta.len())?;
        let mut out = self.clone();
        for (q, &b) in beta.trits().iter().enumerate() {
            out.set_letter(q, gamma_conjugate_letter(self.letter(q), b));
        }
        Ok(out)
    }

    /// Relabel qubits: letter on qubit `q` moves to `map[q]`.
    pub fn permuted(&self, map: &[usize]) -> Result<PauliString> {
        check_dims(self.n, map.len())?;
        let mut out = PauliString::identity(self.n).with_phase(self.phase);
        for (q, &dst) in map.iter().enumerate() {
            check_index(dst, self.n)?;
            out.set_letter(dst, self.letter(q));
        }
        Ok(out)
    }

    // Conjugation updates `P -> G P G†` for the supported gate set. Each one
    // tracks the letter-form phase through the change in Y count.

    fn bump(&mut self, by: u32) {
        self.phase = ((self.phase as u32 + by) % 4) as u8;
    }

    pub(crate) fn conj_h(&mut self, q: usize) {
        let (x, z) = (self.x_bit(q), self.z_bit(q));
        if x && z {
            self.bump(2);
        }
        self.set_letter(q, Letter::from_bits(z, x));
    }

    pub(crate) fn conj_s(&mut self, q: usize) {
        match self.letter(q) {
            Letter::X => self.set_letter(q, Letter::Y),
            Letter::Y => {
                self.set_letter(q, Letter::X);
                self.bump(2);
            }
            _ => {}
        }
    }

    pub(crate) fn conj_sdg(&mut self, q: usize) {
        match self.letter(q) {
            Letter::X => {
                self.set_letter(q, Letter::Y);
                self.bump(2);
            }
            Letter::Y => self.set_letter(q, Letter::X),
            _ => {}
        }
    }

    pub(crate) fn conj_x(&mut self, q: usize) {
        if self.z_bit(q) {
            self.bump(2);
        }
    }

    pub(crate) fn conj_z(&mut self, q: usize) {
        if self.x_bit(q) {
            self.bump(2);
        }
    }

    pub(crate) fn conj_cx(&mut self, c: usize, t: usize) {
        let before = self.letter(c) == Letter::Y;
        let before_t = self.letter(t) == Letter::Y;
        let (xc, zc) = (self.x_bit(c), self.z_bit(c));
        let (xt, zt) = (self.x_bit(t), self.z_bit(t));
        let new_c = Letter::from_bits(xc, zc ^ zt);
        let new_t = Letter::from_bits(xt ^ xc, zt);
        self.set_letter(c, new_c);
        self.set_letter(t, new_t);
        let ys_before = before as u32 + before_t as u32;
        let ys_after = (new_c == Letter::Y) as u32 + (new_t == Letter::Y) as u32;
        self.bump(4 + ys_before - ys_after);
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            0 => {}
            1 => f.write_str("+i")?,
            2 => f.write_str("-")?,
            _ => f.write_str("-i")?,
        }
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Letter string with an optional leading `+`, `-`, `+i`, `-i` or `i`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('i').filter(|r| !r.is_empty()) {
            // a lone "i" is the identity letter, not a phase
            (1, rest)
        } else {
            (0, s)
        };
        let letters = body
            .chars()
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| Error::Parse {
                    line: 1,
                    message: format!("invalid Pauli letter {c:?} in {s:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::from_letters(&letters).with_phase(phase))
    }
}

/// `O_β = Γ_β Z^⊗n Γ_β†`.
pub fn observable_from_index(n: usize, beta: &TritString) -> Result<PauliString> {
    PauliString::uniform(n, Letter::Z).gamma_conjugate(beta)
}
