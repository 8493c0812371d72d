//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use imglab::group::{gamma_length, GroupWord, Letter};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Permutation of level `n` induced by a generator, built from the
/// definition of the automaton by walking each vertex bit by bit (no
/// recursion shared with the library).
pub fn generator_permutation(l: Letter, n: usize) -> Vec<u32> {
    (0..1u32 << n)
        .map(|v| {
            let mut state = l as u8; // 0 = a, 1 = b, 2 = c, 3 = identity
            let mut out = 0u32;
            for i in (0..n).rev() {
                let bit = (v >> i) & 1;
                let (next, o) = match (state, bit) {
                    (0, x) => (3, x ^ 1),
                    (1, 0) => (0, 0),
                    (1, _) => (2, 1),
                    (2, 0) => (1, 0),
                    (2, _) => (3, 1),
                    (_, x) => (3, x),
                };
                out = (out << 1) | o;
                state = next;
            }
            out
        })
        .collect()
}

/// Level used by the exhaustive oracle for a word of length `l`: two levels
/// per halving of the length, plus three so that every nontrivial element of
/// length at most one already moves a vertex.
pub fn oracle_depth(l: usize) -> usize {
    let m = l.saturating_sub(1).max(1);
    let n = usize::BITS as usize - (m - 1).leading_zeros() as usize; // ⌈log₂ m⌉
    2 * (n + 1) + 3
}

/// Exhaustive action check on level `depth` with generator permutations
/// precomputed once; exits at the first moved vertex.
pub struct ActionOracle {
    depth: usize,
    perms: [Vec<u32>; 3],
}

impl ActionOracle {
    pub fn new(depth: usize) -> Self {
        ActionOracle {
            depth,
            perms: [
                generator_permutation(Letter::A, depth),
                generator_permutation(Letter::B, depth),
                generator_permutation(Letter::C, depth),
            ],
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Whether `w` fixes every vertex of the oracle level.
    pub fn fixes_level(&self, w: &GroupWord) -> bool {
        let perms: Vec<&[u32]> = w.letters().iter().map(|&l| self.perms[l as usize].as_slice()).collect();
        (0..1u32 << self.depth).all(|v| perms.iter().fold(v, |x, p| p[x as usize]) == v)
    }
}

pub fn random_letter(r: &mut ChaCha8Rng) -> Letter {
    Letter::ALL[r.random_range(0..3)]
}

/// Uniform random raw word of length `len`, then freely reduced.
pub fn random_word(r: &mut ChaCha8Rng, len: usize) -> GroupWord {
    GroupWord::reduce((0..len).map(|_| random_letter(r)).collect::<Vec<_>>())
}

/// A random word whose Γ-length lies in `lo..=hi`.
pub fn random_word_with_gamma_length(r: &mut ChaCha8Rng, lo: usize, hi: usize) -> GroupWord {
    loop {
        let len = r.random_range(lo..=3 * hi);
        let w = random_word(r, len);
        let g = imglab::group::gamma_normal_form(&w).geodesic();
        if (lo..=hi).contains(&gamma_length(&g)) {
            return g;
        }
    }
}

/// Cyclic Jacobi eigenvalues of a symmetric matrix, sorted ascending.
pub fn jacobi_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut a = m.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].powi(2)).sum();
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}
