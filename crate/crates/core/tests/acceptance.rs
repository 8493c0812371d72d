//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use imglab::automaton::{img_automaton, recursion_mismatch};
use imglab::group::{
    element_order, gamma_length, is_trivial, level_decomposition, section_at, word, GroupWord, TreeVertex,
};
use imglab::measure::{fixed_point, self_affinity_residual, uniqueness_scan, walk_oracle, FiniteMeasure};
use imglab::presentation::{branch_identity_check, relator_families, verify_relators};
use imglab::schreier::SchreierGraph;
use imglab::spectral::{
    conjecture_report, conjugator, inclusion_check, level_ops, map_f, map_g, markov, markov_spectrum, plane_p,
    quadratic_form, random_admissible_points, schur_residual, special_point_check, Point3,
};
use rand::Rng;

use common::{jacobi_eigenvalues, oracle_depth, random_word, random_word_with_gamma_length, rng, ActionOracle};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c01_generator_orders() -> Outcome {
    for (w, expected) in [("a", 2), ("b", 2), ("c", 2), ("ac", 4), ("ab", 8), ("bc", 8)] {
        let order = element_order(&word(w), 64);
        ensure(order == Some(expected), || format!("|{w}| = {order:?}, expected {expected}"))?;
    }
    Ok("|a|=|b|=|c|=2, |ac|=4, |ab|=|bc|=8".into())
}

fn c02_relators() -> Outcome {
    let report = verify_relators(4, |_| {}).map_err(|e| e.to_string())?;
    ensure(report.rows.len() == 7 * 5, || format!("{} rows, expected 35", report.rows.len()))?;
    if let Some(bad) = report.rows.iter().find(|r| !r.verified) {
        return Err(format!("family {} at n = {} is not trivial", bad.family, bad.n));
    }
    let longest = report.rows.iter().map(|r| r.reduced_length).max().unwrap_or(0);
    Ok(format!("7 families × n = 0..4 trivial, longest reduced relator {longest}"))
}

fn c03_branch_identities() -> Outcome {
    let ok = branch_identity_check(12).map_err(|e| e.to_string())?;
    ensure(ok, || "branch identity check failed".into())?;
    let (a, b, c) = (word("a"), word("b"), word("c"));
    ensure(!is_trivial(&a.commutator(&b)) && !is_trivial(&b.commutator(&c)), || "commutator is trivial".into())?;
    Ok("[b,c] = ([a,b],1), [c,b^a] = ([b,c],1) on 12 levels; [a,b], [b,c] ≠ 1".into())
}

/// Known-trivial words: conjugates of the defining relations and of the
/// substituted relators, kept to at most 40 letters.
fn trivial_sample(r: &mut rand_chacha::ChaCha8Rng, count: usize) -> Vec<GroupWord> {
    let mut bases: Vec<GroupWord> = vec![word("acacacac"), word("abababababababab"), word("bcbcbcbcbcbcbcbc")];
    bases.extend(relator_families().into_iter().map(|f| f.base).filter(|w| w.len() <= 36 && !w.is_empty()));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let base = &bases[r.random_range(0..bases.len())];
        let room = (40 - base.len()) / 2;
        let len = r.random_range(0..=room);
        let g = random_word(r, len);
        let w = base.conjugate_by(&g);
        if w.len() <= 40 {
            out.push(w);
        }
    }
    out
}

fn c04_oracle_equivalence() -> Outcome {
    let mut r = rng(4);
    let mut words: Vec<GroupWord> = (0..800)
        .map(|_| {
            let len = r.random_range(0..=40);
            random_word(&mut r, len)
        })
        .collect();
    words.extend(trivial_sample(&mut r, 200));
    let mut oracles: Vec<Option<ActionOracle>> = (0..=20).map(|_| None).collect();
    let mut trivial = 0;
    for w in &words {
        let d = oracle_depth(w.len());
        let oracle = oracles[d].get_or_insert_with(|| ActionOracle::new(d));
        let expected = oracle.fixes_level(w);
        let got = is_trivial(w);
        ensure(got == expected, || format!("{w}: word problem {got}, level-{d} action {expected}"))?;
        trivial += usize::from(got);
    }
    Ok(format!("1000 words agree ({trivial} trivial), oracle depth ≤ {}", oracle_depth(40)))
}

fn c05_contraction() -> Outcome {
    let mut r = rng(5);
    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let g = random_word_with_gamma_length(&mut r, 2, 64);
        let l = gamma_length(&g);
        for v in TreeVertex::level_vertices(2) {
            let s = gamma_length(&section_at(&g, &v));
            ensure(2 * s <= l + 1, || format!("{g}|{v} has Γ-length {s} > ({l}+1)/2"))?;
            worst = worst.max(s as f64 / l as f64);
        }
    }
    Ok(format!("10⁴ words, max section/length ratio {worst:.3}"))
}

fn c06_section_table() -> Outcome {
    let rows: [(&str, [&str; 4], &str); 9] = [
        ("aa", ["e", "e", "e", "e"], "()"),
        ("bb", ["e", "e", "e", "e"], "()"),
        ("cc", ["e", "e", "e", "e"], "()"),
        ("ab", ["b", "e", "e", "e"], "(0213)"),
        ("ba", ["e", "e", "b", "e"], "(0312)"),
        ("ac", ["e", "e", "a", "c"], "(02)(13)"),
        ("ca", ["a", "c", "e", "e"], "(02)(13)"),
        ("bc", ["c", "a", "b", "e"], "(01)"),
        ("cb", ["a", "c", "b", "e"], "(01)"),
    ];
    for (w, secs, cycles) in rows {
        let d = level_decomposition(&GroupWord::parse(w).map_err(|e| e.to_string())?, 2);
        let got: Vec<String> = d.sections.iter().map(|s| s.to_string()).collect();
        ensure(got == secs && d.cycles() == cycles, || format!("{w}: ({}) {} ≠ ({}) {cycles}", got.join(","), d.cycles(), secs.join(",")))?;
    }
    Ok("nine rows reproduced".into())
}

fn c07_spectral_nesting() -> Outcome {
    let spectra = (0..=9).map(|n| markov_spectrum(n, 1e-9)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    for n in 0..=8 {
        for &l in &spectra[n].eigenvalues {
            ensure(spectra[n + 1].contains(l, 1e-9), || format!("{l} ∈ sp(M{n}) missing from sp(M{})", n + 1))?;
        }
    }
    let s1 = &spectra[1].eigenvalues;
    ensure(s1.len() == 2 && (s1[0] - 1.0 / 3.0).abs() <= 1e-12 && (s1[1] - 1.0).abs() <= 1e-12, || format!("sp(M1) = {s1:?}"))?;
    let s9 = &spectra[9];
    ensure(s9.len() == 512, || format!("level 9 has {} eigenvalues", s9.len()))?;
    ensure(s9.eigenvalues.iter().all(|l| (-1.0..=1.0).contains(l)), || "level-9 eigenvalue outside [−1, 1]".into())?;
    ensure(s9.multiplicity_of(1.0, 1e-9) == 1, || "eigenvalue 1 is not simple at level 9".into())?;
    for n in 1..=5 {
        let reference = jacobi_eigenvalues(&markov(n).map_err(|e| e.to_string())?);
        let diff = reference.iter().zip(&spectra[n].eigenvalues).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        ensure(diff <= 1e-10, || format!("level {n}: solver and Jacobi oracle differ by {diff:e}"))?;
    }
    Ok("nested for n ≤ 8, sp(M1) = {1/3, 1}, level 9: 512 in [−1,1], 1 simple".into())
}

fn c08_schur_identity() -> Outcome {
    let mut worst = 0.0_f64;
    for n in 2..=6 {
        for p in random_admissible_points(100, 8 + n as u64) {
            let res = schur_residual(n, p).map_err(|e| format!("n = {n}, {p}: {e}"))?;
            ensure(res <= 1e-9, || format!("n = {n}, {p}: residual {res:e}"))?;
            worst = worst.max(res);
        }
    }
    Ok(format!("n = 2..6 × 100 points, max residual {worst:.1e}"))
}

fn c09_inclusion() -> Outcome {
    let mut fractions = Vec::new();
    for n in 1..=6 {
        let r = inclusion_check(n, 1e-6).map_err(|e| e.to_string())?;
        if let Some(e) = r.entries.iter().find(|e| e.hit.is_none()) {
            return Err(format!("level {n}: λ = {} reaches no variety", e.lambda));
        }
        fractions.push(conjecture_report(n, 1e-6).map_err(|e| e.to_string())?.fraction);
    }
    let shown: Vec<String> = fractions.iter().map(|f| format!("{f:.3}")).collect();
    Ok(format!("all eigenvalues accounted for n = 1..6; P-only fraction (reported) [{}]", shown.join(", ")))
}

fn c10_special_point() -> Outcome {
    let mut worst = 0.0_f64;
    for n in 2..=9 {
        let r = special_point_check(n, 1e-8).map_err(|e| e.to_string())?;
        ensure(r.found, || format!("n − 1 = {}: nearest eigenvalue {}", n - 1, r.nearest_to_four))?;
        worst = worst.max((r.nearest_to_four - 4.0).abs());
    }
    Ok(format!("4 found for n − 1 = 1..8, max error {worst:.1e}"))
}

fn c11_invariance_and_conjugacy() -> Outcome {
    let mut r = rng(11);
    let mut worst_plane = 0.0_f64;
    let mut plane = 0;
    while plane < 1000 {
        let (y, z): (f64, f64) = (r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
        let p = Point3::new(y, z, 1.0 + y + z);
        if y.abs() < 0.1 || quadratic_form(p).abs() < 0.1 {
            continue;
        }
        let image = map_f(p).map_err(|e| format!("{p}: {e}"))?;
        let res = plane_p(image).abs();
        ensure(res <= 1e-9, || format!("F({p}) = {image} is {res:e} off P"))?;
        worst_plane = worst_plane.max(res);
        plane += 1;
    }
    let mut worst_conj = 0.0_f64;
    let mut conj = 0;
    while conj < 1000 {
        let p = Point3::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
        let (Ok(lhs), Ok(rhs)) = (map_f(p).and_then(conjugator), conjugator(p).and_then(map_g)) else { continue };
        if !(lhs.is_finite() && rhs.is_finite()) || lhs.max_abs_diff(&Point3::new(0.0, 0.0, 0.0)) > 1e3 {
            continue;
        }
        let d = lhs.max_abs_diff(&rhs);
        ensure(d <= 1e-9, || format!("C∘F and G∘C differ by {d:e} at {p}"))?;
        worst_conj = worst_conj.max(d);
        conj += 1;
    }
    Ok(format!("F(P) ⊆ P max {worst_plane:.1e}; C∘F = G∘C max {worst_conj:.1e}"))
}

fn c12_measure_fixed_point() -> Outcome {
    let fp = fixed_point(1e-15);
    ensure((fp.x - 0.4786202932).abs() <= 1e-9, || format!("x* = {}", fp.x))?;
    ensure(fp.cubic_residual <= 1e-12, || format!("cubic residual {:e}", fp.cubic_residual))?;
    let sa = self_affinity_residual(&fp.measure()).map_err(|e| e.to_string())?;
    ensure(sa <= 1e-10, || format!("self-affinity residual {sa:e}"))?;
    let scan = uniqueness_scan(100).map_err(|e| e.to_string())?;
    ensure(scan.is_unique(), || format!("uniqueness scan found {:?}", scan.fixed_points))?;
    ensure(scan.plus_branch_error <= 1e-9, || format!("plus branch off by {:e}", scan.plus_branch_error))?;
    Ok(format!("x* = {:.10}, α = {:.10}, unique among {} starts", fp.x, fp.alpha, scan.starts))
}

fn c13_monte_carlo() -> Outcome {
    let m = FiniteMeasure::uniform();
    let first = walk_oracle(&m, 1_000_000, 2024, 8).map_err(|e| e.to_string())?;
    let target = FiniteMeasure { e: 2.0 / 9.0, a: 1.0 / 3.0, b: 1.0 / 3.0, c: 1.0 / 9.0 };
    let l1 = first.empirical.l1_distance(&target);
    ensure(l1 <= 0.01, || format!("L1 distance {l1}"))?;
    let second = walk_oracle(&m, 1_000_000, 2024, 8).map_err(|e| e.to_string())?;
    ensure(first.tally == second.tally, || "tallies differ under the same seed".into())?;
    Ok(format!("10⁶ returns, L1 = {l1:.4}, reproducible"))
}

fn c14_cross_module() -> Outcome {
    for n in 0..=8 {
        let adjacency = SchreierGraph::build(n, true).and_then(|g| g.adjacency_matrix()).map_err(|e| e.to_string())?;
        let sum = level_ops(n).map_err(|e| e.to_string())?.sum();
        ensure(adjacency == sum, || format!("level {n}: adjacency ≠ a + b + c"))?;
    }
    let mismatch = recursion_mismatch(&img_automaton(), 10).map_err(|e| e.to_string())?;
    ensure(mismatch.is_none(), || format!("automaton and recursion differ: {mismatch:?}"))?;
    Ok("adjacency = aₙ+bₙ+cₙ for n ≤ 8; automaton = recursion on |v| ≤ 10".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 14] = [
        ("generator orders", 1, c01_generator_orders),
        ("L-presentation relators n = 0..4", 60, c02_relators),
        ("branch identities", 5, c03_branch_identities),
        ("word problem vs exhaustive action oracle", 60, c04_oracle_equivalence),
        ("contraction of level-2 sections", 30, c05_contraction),
        ("level-2 section table", 1, c06_section_table),
        ("spectral nesting", 120, c07_spectral_nesting),
        ("Schur identity", 60, c08_schur_identity),
        ("spectrum reaches P ∪ Z1 ∪ Z2", 300, c09_inclusion),
        ("special point 4 ∈ sp((a+1)(c+1))", 60, c10_special_point),
        ("plane invariance and conjugacy", 10, c11_invariance_and_conjugacy),
        ("measure fixed point", 30, c12_measure_fixed_point),
        ("Monte-Carlo walk oracle", 120, c13_monte_carlo),
        ("cross-module consistency", 60, c14_cross_module),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("{detail}; took {:.2}s, budget {budget}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(outcome.is_err());
        println!("{tag} [{:02}] {name} ({:.2}s / {budget}s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
