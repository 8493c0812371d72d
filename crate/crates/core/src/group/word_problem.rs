//! The word problem, solved by the contracting recursion.
//!
//! An element is trivial iff it fixes the first level and both of its first
//! level sections are trivial. Geodesic lengths in `Γ` shrink to at most
//! `(l + 1) / 2` every two levels, so the recursion bottoms out at elements of
//! length at most one, of which only the identity is trivial.

use std::collections::HashMap;

use super::gamma::GammaNormalForm;
use super::sections::sections;
use super::word::GroupWord;

/// Outcome of a word-problem run with recursion statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triviality {
    pub trivial: bool,
    /// Deepest tree level the recursion descended to.
    pub depth: usize,
    /// Distinct elements examined (memo size).
    pub visited: usize,
}

#[derive(Default)]
struct Solver {
    memo: HashMap<GroupWord, bool>,
    depth: usize,
}

impl Solver {
    fn trivial(&mut self, g: &GroupWord, level: usize) -> bool {
        self.depth = self.depth.max(level);
        let nf = GammaNormalForm::of(g);
        if nf.is_identity() {
            return true;
        }
        if nf.length() <= 1 {
            return false;
        }
        let w = nf.geodesic();
        if w.swaps_root() {
            return false;
        }
        if let Some(&known) = self.memo.get(&w) {
            return known;
        }
        let d = sections(&w);
        let result = self.trivial(&d.left, level + 1) && self.trivial(&d.right, level + 1);
        self.memo.insert(w, result);
        result
    }
}

/// Decides whether `g` acts trivially on the whole tree.
pub fn is_trivial(g: &GroupWord) -> bool {
    triviality(g).trivial
}

pub fn triviality(g: &GroupWord) -> Triviality {
    let mut solver = Solver::default();
    let trivial = solver.trivial(g, 0);
    Triviality { trivial, depth: solver.depth, visited: solver.memo.len() }
}

/// Whether `g` and `h` define the same tree automorphism.
pub fn equal_in_group(g: &GroupWord, h: &GroupWord) -> bool {
    is_trivial(&g.multiply(&h.inverse()))
}

/// Least `k ≤ cap` with `gᵏ = e`, or `None` when the order exceeds `cap`.
pub fn element_order(g: &GroupWord, cap: usize) -> Option<usize> {
    let mut power = GroupWord::identity();
    for k in 1..=cap {
        power = power.multiply(g);
        if is_trivial(&power) {
            return Some(k);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::word::word;

    #[test]
    fn triviality_examples() {
        assert!(is_trivial(&word("acacacac")));
        assert!(!is_trivial(&word("acac")));
        assert!(is_trivial(&GroupWord::identity()));
        assert!(!is_trivial(&word("c")));
        assert!(!is_trivial(&word("abab")));
    }

    #[test]
    fn acac_sections_are_b_b() {
        let d = sections(&word("acac"));
        assert_eq!((d.left.to_string(), d.right.to_string()), ("b".into(), "b".into()));
    }

    #[test]
    fn generator_orders() {
        assert_eq!(element_order(&word("a"), 16), Some(2));
        assert_eq!(element_order(&word("b"), 16), Some(2));
        assert_eq!(element_order(&word("c"), 16), Some(2));
        assert_eq!(element_order(&word("ac"), 16), Some(4));
        assert_eq!(element_order(&word("ab"), 16), Some(8));
        assert_eq!(element_order(&word("bc"), 16), Some(8));
        assert_eq!(element_order(&word("ab"), 7), None);
    }

    #[test]
    fn equality_of_automorphisms() {
        assert!(!equal_in_group(&word("aca"), &word("b")));
        assert!(equal_in_group(&word("acacacac"), &GroupWord::identity()));
    }
}
