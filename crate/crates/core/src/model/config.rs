use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Assignment of ±1 to every spin of a problem.
///
/// Serialized as a compact string of `+` and `-` characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinConfig(Vec<i8>);

impl SpinConfig {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if let Some((position, &v)) = spins.iter().enumerate().find(|(_, &v)| v != 1 && v != -1) {
            return Err(Error::InvalidSpin {
                position,
                value: v as i64,
            });
        }
        Ok(SpinConfig(spins))
    }

    pub fn uniform(num_spins: usize, value: i8) -> Self {
        assert!(value == 1 || value == -1, "spin must be ±1");
        SpinConfig(vec![value; num_spins])
    }

    /// Bit `i` set means spin `i` is +1.
    pub fn from_bits(bits: u64, num_spins: usize) -> Self {
        assert!(num_spins <= 64, "from_bits supports at most 64 spins");
        SpinConfig(
            (0..num_spins)
                .map(|i| if bits >> i & 1 == 1 { 1 } else { -1 })
                .collect(),
        )
    }

    /// Inverse of [`from_bits`](Self::from_bits).
    pub fn to_bits(&self) -> u64 {
        assert!(self.0.len() <= 64, "to_bits supports at most 64 spins");
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    }

    pub fn random<R: Rng + ?Sized>(num_spins: usize, rng: &mut R) -> Self {
        SpinConfig(
            (0..num_spins)
                .map(|_| if rng.random::<bool>() { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [i8] {
        &mut self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = -self.0[i];
    }

    pub fn flipped(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.flip(i);
        out
    }

    /// First `n` spins.
    pub fn truncated(&self, n: usize) -> Self {
        SpinConfig(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn into_vec(self) -> Vec<i8> {
        self.0
    }
}

impl fmt::Display for SpinConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SpinConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, c)| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::InvalidSpin {
                    position,
                    value: other as i64,
                }),
            })
            .collect::<Result<Vec<i8>>>()
            .map(SpinConfig)
    }
}

impl Serialize for SpinConfig {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SpinConfig {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
