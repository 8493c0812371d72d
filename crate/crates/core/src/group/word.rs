use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Longest word accepted from parsing or substitution.
pub const MAX_WORD_LEN: usize = 1_000_000;

/// One of the three involutive generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A freely reduced word over `{a, b, c}`.
///
/// Since every generator is an involution, free reduction only cancels equal
/// adjacent letters. The empty word is the identity and prints as `e`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letter(l: Letter) -> Self {
        GroupWord { letters: vec![l] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            if letters.last() == Some(&l) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        GroupWord { letters }
    }

    /// Like [`GroupWord::reduce`] but rejects results longer than [`MAX_WORD_LEN`].
    pub fn try_reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Result<Self> {
        let w = Self::reduce(raw);
        if w.len() > MAX_WORD_LEN {
            return Err(Error::InputSize { len: w.len(), max: MAX_WORD_LEN });
        }
        Ok(w)
    }

    /// Parses a word, reducing it. `e` and the empty string denote the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Self::identity());
        }
        if s.len() > MAX_WORD_LEN {
            return Err(Error::InputSize { len: s.len(), max: MAX_WORD_LEN });
        }
        let letters = s
            .chars()
            .map(|ch| {
                Letter::from_char(ch)
                    .ok_or_else(|| Error::input(format!("'{ch}' is not a generator letter in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::reduce(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &GroupWord) -> GroupWord {
        // Cancel across the seam only; both halves are already reduced.
        let mut left = self.letters.as_slice();
        let mut right = other.letters.as_slice();
        while let (Some(x), Some(y)) = (left.last(), right.first()) {
            if x != y {
                break;
            }
            left = &left[..left.len() - 1];
            right = &right[1..];
        }
        let mut letters = Vec::with_capacity(left.len() + right.len());
        letters.extend_from_slice(left);
        letters.extend_from_slice(right);
        GroupWord { letters }
    }

    /// Inverse of a word of involutions is its reversal.
    pub fn inverse(&self) -> GroupWord {
        GroupWord { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn pow(&self, k: usize) -> GroupWord {
        let mut acc = GroupWord::identity();
        for _ in 0..k {
            acc = acc.multiply(self);
        }
        acc
    }

    /// `g^h = h⁻¹ g h`.
    pub fn conjugate_by(&self, h: &GroupWord) -> GroupWord {
        h.inverse().multiply(self).multiply(h)
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, h: &GroupWord) -> GroupWord {
        self.inverse().multiply(&h.inverse()).multiply(self).multiply(h)
    }

    /// Parity of the number of `a` letters, i.e. whether the root is swapped.
    pub fn swaps_root(&self) -> bool {
        self.letters.iter().filter(|&&l| l == Letter::A).count() % 2 == 1
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupWord::parse(s)
    }
}

impl From<Letter> for GroupWord {
    fn from(l: Letter) -> Self {
        GroupWord::letter(l)
    }
}

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        GroupWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for parsing a literal word in tests and examples.
///
/// Panics on letters outside `{a, b, c, e}`.
pub fn word(s: &str) -> GroupWord {
    GroupWord::parse(s).unwrap_or_else(|e| panic!("bad word literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(word("aab").to_string(), "b");
        assert_eq!(word("abba").to_string(), "e");
        assert_eq!(word("abc").to_string(), "abc");
        assert!(word("abba").is_empty());
    }

    #[test]
    fn multiply_and_inverse() {
        assert!(word("ab").multiply(&word("ba")).is_empty());
        assert!(word("ca").multiply(&word("ac")).is_empty());
        assert_eq!(word("abc").inverse().to_string(), "cba");
        assert_eq!(word("abc").multiply(&word("cab")).to_string(), "abab");
    }

    #[test]
    fn commutator_convention() {
        // [c, ab] = c · ba · c · ab
        assert_eq!(word("c").commutator(&word("ab")).to_string(), "cbacab");
        assert_eq!(word("b").conjugate_by(&word("a")).to_string(), "aba");
    }

    #[test]
    fn parse_rejects_foreign_letters() {
        assert!(matches!(GroupWord::parse("abd"), Err(Error::Input(_))));
        assert_eq!(GroupWord::parse("e").unwrap(), GroupWord::identity());
    }

    #[test]
    fn oversized_words_rejected() {
        let raw = std::iter::repeat([Letter::A, Letter::B]).flatten().take(MAX_WORD_LEN + 2);
        assert!(matches!(GroupWord::try_reduce(raw), Err(Error::InputSize { .. })));
    }

    #[test]
    fn serde_uses_string_form() {
        let json = serde_json::to_string(&word("abc")).unwrap();
        assert_eq!(json, "\"abc\"");
        let back: GroupWord = serde_json::from_str("\"e\"").unwrap();
        assert!(back.is_empty());
    }
}
