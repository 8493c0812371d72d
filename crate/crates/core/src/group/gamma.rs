//! Normal forms in the covering group `Γ = ⟨a, b, c | a², b², c², (ac)⁴⟩ = C₂ ∗ D₄`.
//!
//! The `C₂` factor is generated by `b`, the dihedral factor `D₄` by `a` and
//! `c`. Syllables alternate between the factors, and the geodesic length of
//! an element in `Γ` is the sum of the syllable lengths.

use std::fmt;
use std::sync::OnceLock;

use super::word::{GroupWord, Letter};

/// Geodesic `{a, c}` representatives of the eight elements of `D₄`.
const D4_REPRESENTATIVES: [&str; 8] = ["", "a", "c", "ac", "ca", "aca", "cac", "acac"];

/// An element of the dihedral group of order 8 generated by `a` and `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct D4(u8);

struct D4Table {
    mul: [[u8; 8]; 8],
}

// 2×2 integer matrices: a and c are reflections whose product is a quarter turn.
type Mat2 = [[i8; 2]; 2];

fn mat_mul(x: Mat2, y: Mat2) -> Mat2 {
    let mut out = [[0i8; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

fn rep_matrix(rep: &str) -> Mat2 {
    const A: Mat2 = [[1, 0], [0, -1]];
    const C: Mat2 = [[0, 1], [1, 0]];
    rep.chars().fold([[1, 0], [0, 1]], |acc, ch| mat_mul(acc, if ch == 'a' { A } else { C }))
}

fn table() -> &'static D4Table {
    static TABLE: OnceLock<D4Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mats: Vec<Mat2> = D4_REPRESENTATIVES.iter().map(|r| rep_matrix(r)).collect();
        let mut mul = [[0u8; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                let prod = mat_mul(mats[i], mats[j]);
                let k = mats.iter().position(|m| *m == prod).expect("D4 is closed");
                mul[i][j] = k as u8;
            }
        }
        D4Table { mul }
    })
}

impl D4 {
    pub const IDENTITY: D4 = D4(0);
    pub const A: D4 = D4(1);
    pub const C: D4 = D4(2);

    pub fn all() -> impl Iterator<Item = D4> {
        (0..8).map(D4)
    }

    pub fn mul(self, other: D4) -> D4 {
        D4(table().mul[self.0 as usize][other.0 as usize])
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// Geodesic length in the generators `a`, `c` (at most 4).
    pub fn length(self) -> usize {
        D4_REPRESENTATIVES[self.0 as usize].len()
    }

    pub fn representative(self) -> &'static str {
        D4_REPRESENTATIVES[self.0 as usize]
    }

    fn letters(self) -> impl Iterator<Item = Letter> {
        self.representative().chars().filter_map(Letter::from_char)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Syllable {
    B,
    Dihedral(D4),
}

impl Syllable {
    pub fn length(self) -> usize {
        match self {
            Syllable::B => 1,
            Syllable::Dihedral(d) => d.length(),
        }
    }
}

/// Free-product normal form of an element of `Γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaNormalForm {
    syllables: Vec<Syllable>,
    length: usize,
}

impl GammaNormalForm {
    /// Computes the normal form of any letter sequence.
    pub fn of_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Syllable> = Vec::new();
        for l in letters {
            match l {
                Letter::B => {
                    if stack.last() == Some(&Syllable::B) {
                        stack.pop();
                    } else {
                        stack.push(Syllable::B);
                    }
                }
                Letter::A | Letter::C => {
                    let gen = if l == Letter::A { D4::A } else { D4::C };
                    match stack.last_mut() {
                        Some(Syllable::Dihedral(d)) => {
                            let prod = d.mul(gen);
                            if prod.is_identity() {
                                stack.pop();
                            } else {
                                *d = prod;
                            }
                        }
                        _ => stack.push(Syllable::Dihedral(gen)),
                    }
                }
            }
        }
        let length = stack.iter().map(|s| s.length()).sum();
        GammaNormalForm { syllables: stack, length }
    }

    pub fn of(w: &GroupWord) -> Self {
        Self::of_letters(w.letters().iter().copied())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Word length `l(g)` in `Γ`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// A shortest `{a, b, c}` word for the element.
    pub fn geodesic(&self) -> GroupWord {
        let mut letters = Vec::with_capacity(self.length);
        for s in &self.syllables {
            match s {
                Syllable::B => letters.push(Letter::B),
                Syllable::Dihedral(d) => letters.extend(d.letters()),
            }
        }
        // Syllables alternate between factors, so no free cancellation occurs.
        GroupWord::reduce(letters)
    }
}

impl fmt::Display for GammaNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<&str> = self
            .syllables
            .iter()
            .map(|s| match s {
                Syllable::B => "b",
                Syllable::Dihedral(d) => d.representative(),
            })
            .collect();
        f.write_str(&parts.join("·"))
    }
}

/// Normal form of a reduced word.
pub fn gamma_normal_form(w: &GroupWord) -> GammaNormalForm {
    GammaNormalForm::of(w)
}

/// Geodesic length `l(g)` in `Γ`.
pub fn gamma_length(w: &GroupWord) -> usize {
    GammaNormalForm::of(w).length()
}
