use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Base-3 digit string `β = β₁β₂…βₙ`; `β₁` is the most significant trit and
/// addresses qubit 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TritString {
    trits: Vec<u8>,
}

impl TritString {
    pub fn zeros(n: usize) -> Self {
        TritString { trits: vec![0; n] }
    }

    pub fn new(trits: Vec<u8>) -> Result<Self> {
        if let Some(bad) = trits.iter().find(|&&t| t > 2) {
            return Err(Error::Domain(format!("trit value {bad} is not in 0..=2")));
        }
        Ok(TritString { trits })
    }

    /// Decompose `value` into `n` trits. Fails when `value ≥ 3^n`.
    pub fn from_index(n: usize, mut value: u128) -> Result<Self> {
        let mut trits = vec![0u8; n];
        for slot in trits.iter_mut().rev() {
            *slot = (value % 3) as u8;
            value /= 3;
        }
        if value != 0 {
            return Err(Error::Domain(format!("index does not fit in {n} trits")));
        }
        Ok(TritString { trits })
    }

    /// The composed integer, or `None` when it overflows `u128` (n > 80).
    pub fn to_index(&self) -> Option<u128> {
        self.trits
            .iter()
            .try_fold(0u128, |acc, &t| acc.checked_mul(3)?.checked_add(t as u128))
    }

    pub fn len(&self) -> usize {
        self.trits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trits.is_empty()
    }

    pub fn trits(&self) -> &[u8] {
        &self.trits
    }

    /// Trits 1 and 2 swapped, so that `Γ_{β⁻¹} = Γ_β†` up to phase.
    pub fn inverse(&self) -> Self {
        TritString {
            trits: self.trits.iter().map(|&t| (3 - t) % 3).collect(),
        }
    }

    /// Left-pad with zero trits up to `n`.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if self.len() > n {
            return Err(Error::Domain(format!(
                "trit string of length {} exceeds {n} qubits",
                self.len()
            )));
        }
        let mut trits = vec![0; n - self.len()];
        trits.extend_from_slice(&self.trits);
        Ok(TritString { trits })
    }
}

impl fmt::Display for TritString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.trits {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for TritString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::Parse {
                    line: 1,
                    message: format!("invalid trit {c:?}"),
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(TritString { trits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for n in 0..6 {
            for v in 0..3u128.pow(n as u32) {
                let t = TritString::from_index(n, v).unwrap();
                assert_eq!(t.len(), n);
                assert_eq!(t.to_index(), Some(v));
            }
        }
        assert!(TritString::from_index(2, 9).is_err());
    }

    #[test]
    fn most_significant_first() {
        let t = TritString::from_index(3, 5).unwrap();
        assert_eq!(t.trits(), &[0, 1, 2]);
        assert_eq!(t.to_string(), "012");
        assert_eq!(t.inverse().to_string(), "021");
    }

    #[test]
    fn rejects_bad_digits() {
        assert!("0130".parse::<TritString>().is_err());
        assert!(TritString::new(vec![0, 3]).is_err());
        assert_eq!(
            "12".parse::<TritString>()
                .unwrap()
                .padded(4)
                .unwrap()
                .to_string(),
            "0012"
        );
    }
}
