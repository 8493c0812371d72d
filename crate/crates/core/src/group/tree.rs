use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A vertex of the binary rooted tree, written as a string over `{0, 1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVertex {
    bits: Vec<u8>,
}

impl TreeVertex {
    pub fn root() -> Self {
        TreeVertex::default()
    }

    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::input(format!("vertex bit {b} is not 0 or 1")));
        }
        Ok(TreeVertex { bits })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::input(format!("'{ch}' is not a tree letter in {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(TreeVertex { bits })
    }

    /// Vertex with the given lexicographic index on `level` (first letter is the
    /// most significant bit).
    pub fn from_index(index: usize, level: usize) -> Self {
        let bits = (0..level).map(|i| ((index >> (level - 1 - i)) & 1) as u8).collect();
        TreeVertex { bits }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn level(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub(crate) fn bits_mut(&mut self) -> &mut [u8] {
        &mut self.bits
    }

    pub fn concat(&self, other: &TreeVertex) -> TreeVertex {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        TreeVertex { bits }
    }

    /// All vertices of a level in lexicographic order.
    pub fn level_vertices(level: usize) -> impl Iterator<Item = TreeVertex> {
        (0..1usize << level).map(move |i| TreeVertex::from_index(i, level))
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for TreeVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TreeVertex::parse(s)
    }
}

/// Shorthand for vertex literals. Panics on characters other than `0` and `1`.
pub fn vertex(s: &str) -> TreeVertex {
    TreeVertex::parse(s).unwrap_or_else(|e| panic!("bad vertex literal {s:?}: {e}"))
}

/// An element of `Sym(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BitPermutation {
    Identity,
    Swap,
}

impl BitPermutation {
    pub fn apply(self, bit: u8) -> u8 {
        match self {
            BitPermutation::Identity => bit,
            BitPermutation::Swap => bit ^ 1,
        }
    }

    pub fn compose(self, other: BitPermutation) -> BitPermutation {
        if self == other {
            BitPermutation::Identity
        } else {
            BitPermutation::Swap
        }
    }
}
