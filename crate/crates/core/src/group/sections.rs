//! Wreath recursion, sections and the action on the tree.
//!
//! Products are read left to right: `gh(w) = h(g(w))`, so
//! `(gh)|_x = g|_x · h|_{g(x)}`.

use super::tree::{BitPermutation, TreeVertex};
use super::word::{GroupWord, Letter};

/// First-level decomposition `g = (g|₀, g|₁)·σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SectionDecomposition {
    pub root: BitPermutation,
    pub left: GroupWord,
    pub right: GroupWord,
}

impl SectionDecomposition {
    pub fn section(&self, bit: u8) -> &GroupWord {
        if bit == 0 {
            &self.left
        } else {
            &self.right
        }
    }
}

/// Wreath recursion of a single generator: `(root, section at 0, section at 1)`.
fn letter_recursion(l: Letter) -> (BitPermutation, Option<Letter>, Option<Letter>) {
    match l {
        Letter::A => (BitPermutation::Swap, None, None),
        Letter::B => (BitPermutation::Identity, Some(Letter::A), Some(Letter::C)),
        Letter::C => (BitPermutation::Identity, Some(Letter::B), None),
    }
}

fn letter_section(l: Letter, bit: u8) -> Option<Letter> {
    let (_, s0, s1) = letter_recursion(l);
    if bit == 0 {
        s0
    } else {
        s1
    }
}

/// Folds the letters of `g` through the wreath product.
pub fn sections(g: &GroupWord) -> SectionDecomposition {
    let mut perm = BitPermutation::Identity;
    let mut parts: [Vec<Letter>; 2] = [Vec::new(), Vec::new()];
    for &l in g.letters() {
        let (sigma, _, _) = letter_recursion(l);
        for (x, part) in parts.iter_mut().enumerate() {
            if let Some(s) = letter_section(l, perm.apply(x as u8)) {
                part.push(s);
            }
        }
        perm = perm.compose(sigma);
    }
    let [left, right] = parts;
    SectionDecomposition { root: perm, left: GroupWord::reduce(left), right: GroupWord::reduce(right) }
}

/// Section of `g` at a single first-level vertex.
pub fn section_at_bit(g: &GroupWord, bit: u8) -> GroupWord {
    let mut cur = bit;
    let mut out = Vec::new();
    for &l in g.letters() {
        if let Some(s) = letter_section(l, cur) {
            out.push(s);
        }
        if l == Letter::A {
            cur ^= 1;
        }
    }
    GroupWord::reduce(out)
}

/// `g|_v`, computed as iterated first-level sections.
pub fn section_at(g: &GroupWord, v: &TreeVertex) -> GroupWord {
    v.bits().iter().fold(g.clone(), |acc, &bit| section_at_bit(&acc, bit))
}

/// Applies one generator to a vertex in place.
pub(crate) fn apply_letter(l: Letter, bits: &mut [u8]) {
    let mut cur = Some(l);
    for bit in bits.iter_mut() {
        match cur {
            None => return,
            Some(Letter::A) => {
                *bit ^= 1;
                return;
            }
            Some(other) => cur = letter_section(other, *bit),
        }
    }
}

/// Image of a vertex: the letters of `g` act one after another.
pub fn act(g: &GroupWord, v: &TreeVertex) -> TreeVertex {
    let mut out = v.clone();
    for &l in g.letters() {
        apply_letter(l, out.bits_mut());
    }
    out
}

/// Sections at every vertex of `level` and the induced permutation of that
/// level, both indexed lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDecomposition {
    pub level: usize,
    pub sections: Vec<GroupWord>,
    pub permutation: Vec<usize>,
}

impl LevelDecomposition {
    /// Cycle notation with each cycle starting at its least point, fixed points
    /// omitted: e.g. `(0213)` or `(02)(13)`. The identity renders as `()`.
    pub fn cycles(&self) -> String {
        permutation_cycles(&self.permutation)
    }
}

pub fn level_decomposition(g: &GroupWord, level: usize) -> LevelDecomposition {
    let vertices: Vec<TreeVertex> = TreeVertex::level_vertices(level).collect();
    let sections = vertices.iter().map(|v| section_at(g, v)).collect();
    let permutation = vertices.iter().map(|v| act(g, v).index()).collect();
    LevelDecomposition { level, sections, permutation }
}

pub fn permutation_cycles(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&i.to_string());
            i = perm[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
