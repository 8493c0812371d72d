//! The substitution `φ: a → b, b → c, c → aba`, the relator families it
//! generates, and identities checked through the word problem.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::group::{act, is_trivial, sections, triviality, word, BitPermutation, GroupWord, Letter, TreeVertex};
use crate::{Error, Result};

/// Largest iteration count accepted by [`verify_relators`].
pub const MAX_SUBSTITUTION_DEPTH: usize = 8;

fn substitute_letter(l: Letter) -> &'static [Letter] {
    match l {
        Letter::A => &[Letter::B],
        Letter::B => &[Letter::C],
        Letter::C => &[Letter::A, Letter::B, Letter::A],
    }
}

/// One unreduced pass of `φ` over a raw letter sequence.
pub fn substitute_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().flat_map(|&l| substitute_letter(l).iter().copied()).collect()
}

/// Applies `φ` `n` times, freely reducing after every pass.
pub fn substitute(w: &GroupWord, n: usize) -> Result<GroupWord> {
    let mut cur = w.clone();
    for _ in 0..n {
        let image = cur.letters().iter().flat_map(|&l| substitute_letter(l).iter().copied());
        cur = GroupWord::try_reduce(image)?;
    }
    Ok(cur)
}

/// One of the seven base relators of the L-presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorFamily {
    pub index: usize,
    /// Human-readable form, e.g. `[c,ab]^2`.
    pub notation: &'static str,
    pub base: GroupWord,
}

fn commutator_square(x: &str, y: &str) -> GroupWord {
    word(x).commutator(&word(y)).pow(2)
}

pub fn relator_families() -> Vec<RelatorFamily> {
    let entries: [(&'static str, GroupWord); 7] = [
        ("a^2", GroupWord::reduce([Letter::A, Letter::A])),
        ("(ac)^4", word("ac").pow(4)),
        ("[c,ab]^2", commutator_square("c", "ab")),
        ("[c,bab]^2", commutator_square("c", "bab")),
        ("[c,ababa]^2", commutator_square("c", "ababa")),
        ("[c,ababab]^2", commutator_square("c", "ababab")),
        ("[c,bababab]^2", commutator_square("c", "bababab")),
    ];
    entries
        .into_iter()
        .enumerate()
        .map(|(i, (notation, base))| RelatorFamily { index: i + 1, notation, base })
        .collect()
}

/// `φⁿ` applied to the base of family `j ∈ 1..=7`.
pub fn relator(j: usize, n: usize) -> Result<GroupWord> {
    let family = relator_families()
        .into_iter()
        .find(|f| f.index == j)
        .ok_or_else(|| Error::input(format!("relator family {j} is not in 1..=7")))?;
    substitute(&family.base, n)
}

/// `U₁ = (ba)⁸` and `U₂ … U₆`, the commutator squares.
pub fn u_words() -> Vec<GroupWord> {
    let mut out = vec![word("ba").pow(8)];
    out.extend(relator_families().into_iter().skip(2).map(|f| f.base));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelatorRow {
    pub family: usize,
    pub n: usize,
    pub reduced_length: usize,
    pub verified: bool,
    /// Deepest tree level reached by the word-problem recursion.
    pub depth: usize,
    pub milliseconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelatorReport {
    pub max_n: usize,
    pub rows: Vec<RelatorRow>,
}

impl RelatorReport {
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.verified)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,n,reduced_length,verified,milliseconds\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{:.3}\n", r.family, r.n, r.reduced_length, r.verified, r.milliseconds));
        }
        out
    }
}

fn verify_word(family: usize, n: usize, w: &GroupWord) -> RelatorRow {
    let start = Instant::now();
    let t = triviality(w);
    RelatorRow {
        family,
        n,
        reduced_length: w.len(),
        verified: t.trivial,
        depth: t.depth,
        milliseconds: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Checks every relator `φⁿ(r_j)` for `j = 1..=7`, `n = 0..=max_n` with the
/// word problem. Each row is handed to `sink` in `(family, n)` order.
pub fn verify_relators(max_n: usize, mut sink: impl FnMut(&RelatorRow)) -> Result<RelatorReport> {
    if max_n > MAX_SUBSTITUTION_DEPTH {
        return Err(Error::input(format!("max_n = {max_n} exceeds {MAX_SUBSTITUTION_DEPTH}")));
    }
    let families = relator_families();
    let jobs: Vec<(usize, usize, GroupWord)> = families
        .iter()
        .flat_map(|f| (0..=max_n).map(move |n| (f.index, n, &f.base)))
        .map(|(j, n, base)| substitute(base, n).map(|w| (j, n, w)))
        .collect::<Result<_>>()?;
    let rows: Vec<RelatorRow> = jobs.par_iter().map(|(j, n, w)| verify_word(*j, *n, w)).collect();
    rows.iter().for_each(&mut sink);
    Ok(RelatorReport { max_n, rows })
}

/// Verifies an arbitrary list of candidate relators, e.g. to show a corrupted
/// relator is caught.
pub fn verify_words(words: &[GroupWord]) -> Vec<RelatorRow> {
    words.iter().enumerate().map(|(i, w)| verify_word(i + 1, 0, w)).collect()
}

/// `φ(w)` fixes the first level and its section at `0` equals `w`.
pub fn phi_section_check(w: &GroupWord) -> bool {
    let Ok(image) = substitute(w, 1) else {
        return false;
    };
    let d = sections(&image);
    d.root == BitPermutation::Identity && is_trivial(&d.left.multiply(&w.inverse()))
}

/// Checks `g = (h, 1)` as tree automorphisms: by the word problem on the
/// sections, and by comparing the action on every vertex of `depth`.
pub fn check_branch_identity(g: &GroupWord, h: &GroupWord, depth: usize) -> bool {
    let d = sections(g);
    let by_word_problem =
        d.root == BitPermutation::Identity && is_trivial(&d.left.multiply(&h.inverse())) && is_trivial(&d.right);
    if !by_word_problem {
        return false;
    }
    if depth == 0 {
        return true;
    }
    TreeVertex::level_vertices(depth).all(|v| {
        let rest = TreeVertex::from_bits(v.bits()[1..].to_vec()).expect("bits");
        let image = act(g, &v);
        let expected = if v.bits()[0] == 0 { act(h, &rest) } else { rest };
        image.bits()[0] == v.bits()[0] && image.bits()[1..] == *expected.bits()
    })
}

/// `[b, c] = ([a, b], 1)` and `[c, bᵃ] = ([b, c], 1)`, with `[a, b]` and
/// `[b, c]` nontrivial.
pub fn branch_identity_check(depth: usize) -> Result<bool> {
    if depth < 2 {
        return Err(Error::input("branch identity depth must be at least 2"));
    }
    let (a, b, c) = (word("a"), word("b"), word("c"));
    let ab = a.commutator(&b);
    let bc = b.commutator(&c);
    let first = check_branch_identity(&bc, &ab, depth);
    let second = check_branch_identity(&c.commutator(&b.conjugate_by(&a)), &bc, depth);
    Ok(first && second && !is_trivial(&ab) && !is_trivial(&bc))
}

/// Presentation of the ascending HNN-extension with stable letter `s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HnnPresentation {
    pub generators: Vec<&'static str>,
    pub relators: Vec<String>,
    /// The seven non-conjugation relators, each verified trivial in the group.
    pub verified: Vec<bool>,
}

pub fn hnn_presentation() -> HnnPresentation {
    let families = relator_families();
    let mut relators: Vec<String> = families.iter().map(|f| f.notation.to_string()).collect();
    relators.extend(["a^s = b", "b^s = c", "c^s = aba"].map(String::from));
    let verified = families.iter().map(|f| is_trivial(&f.base)).collect();
    HnnPresentation { generators: vec!["a", "b", "c", "s"], relators, verified }
}

impl HnnPresentation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serialises")
    }
}
