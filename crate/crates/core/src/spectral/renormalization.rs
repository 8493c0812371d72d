//! Locating the spectrum on the line `y = z = 1` through the dynamics of `F`.
//!
//! A point `(y, z, λ)` is singular at level `n` only if some iterate
//! `Fᵏ(y, z, λ)`, `k ≤ n`, lands on `P`, or an earlier iterate lands on
//! `Z1 ∪ Z2`. These routines test that inclusion for the actual level spectra
//! and enumerate the candidate points it predicts.

use serde::Serialize;

use super::eigen::eigenvalues;
use super::maps::{map_f, quadratic_form, Point3};
use super::operators::{level_ops, pencil_matrix};
use super::varieties::{plane_p, scaled_residual, z1_form, VarietyTag};
use crate::{Error, Result};

/// Eigen-solve tolerance used for the level spectra analysed here.
const SPECTRUM_TOL: f64 = 1e-9;
/// Half-width of the window searched when refining an eigenvalue to an
/// exact preimage.
const REFINE_WINDOW: f64 = 1e-7;
const REFINE_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hit {
    P,
    Z1,
    Z2,
    /// The iterate lies on a pole of `F` (so `F` is undefined beyond it).
    Pole,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionEntry {
    pub lambda: f64,
    /// Least `k` whose iterate hits a variety or a pole.
    pub k: Option<usize>,
    pub hit: Option<Hit>,
    pub residual: f64,
    /// Set when the hit needed a nearby exact root instead of `lambda` itself.
    pub refined_lambda: Option<f64>,
    /// Least `k` with `Fᵏ(1, 1, λ) ∈ P`, if any.
    pub p_depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionReport {
    pub level: usize,
    pub tol: f64,
    pub entries: Vec<InclusionEntry>,
}

impl InclusionReport {
    pub fn accounted(&self) -> usize {
        self.entries.iter().filter(|e| e.hit.is_some()).count()
    }

    pub fn all_accounted(&self) -> bool {
        self.accounted() == self.entries.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Signed defining function of `tag` along the line at iterate `k`.
fn line_function(lambda: f64, k: usize, tag: VarietyTag) -> Option<f64> {
    let mut p = Point3::on_line(lambda);
    for _ in 0..k {
        p = map_f(p).ok()?;
    }
    match tag {
        VarietyTag::P => Some(plane_p(p)),
        VarietyTag::Z1 => Some(z1_form(p)),
        _ => None,
    }
}

/// Looks for a sign change of the defining function near `lambda` and
/// bisects it; accepts the root if the scaled residual there is within `tol`.
fn refine_near(lambda: f64, k: usize, tag: VarietyTag, tol: f64) -> Option<(f64, f64)> {
    let lo = lambda - REFINE_WINDOW;
    let step = 2.0 * REFINE_WINDOW / REFINE_SAMPLES as f64;
    let xs: Vec<f64> = (0..=REFINE_SAMPLES).map(|i| lo + i as f64 * step).collect();
    let vals: Vec<Option<f64>> = xs.iter().map(|&x| line_function(x, k, tag)).collect();
    let mut best: Option<(f64, f64)> = None;
    for i in 0..REFINE_SAMPLES {
        let (Some(fa), Some(fb)) = (vals[i], vals[i + 1]) else { continue };
        if fa.signum() == fb.signum() && fa != 0.0 && fb != 0.0 {
            continue;
        }
        let root = bisect(|x| line_function(x, k, tag), xs[i], xs[i + 1], fa, 1e-15)?;
        let p = iterate_line(root, k)?;
        let residual = scaled_residual(p, tag);
        if residual <= tol && best.is_none_or(|(b, _)| (root - lambda).abs() < (b - lambda).abs()) {
            best = Some((root, residual));
        }
    }
    best
}

fn iterate_line(lambda: f64, k: usize) -> Option<Point3> {
    let mut p = Point3::on_line(lambda);
    for _ in 0..k {
        p = map_f(p).ok()?;
    }
    Some(p)
}

fn bisect(f: impl Fn(f64) -> Option<f64>, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> Option<f64> {
    if fa == 0.0 {
        return Some(a);
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol || m == a || m == b {
            return Some(m);
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

fn classify_eigenvalue(lambda: f64, n: usize, tol: f64) -> InclusionEntry {
    let mut entry =
        InclusionEntry { lambda, k: None, hit: None, residual: f64::NAN, refined_lambda: None, p_depth: None };

    // Direct evaluation along the orbit.
    let mut p = Point3::on_line(lambda);
    for k in 0..=n {
        let candidates = [(VarietyTag::P, Hit::P), (VarietyTag::Z1, Hit::Z1), (VarietyTag::Z2, Hit::Z2)];
        for (tag, hit) in candidates {
            let r = scaled_residual(p, tag);
            if r <= tol {
                if entry.hit.is_none() {
                    (entry.k, entry.hit, entry.residual) = (Some(k), Some(hit), r);
                }
                if tag == VarietyTag::P && entry.p_depth.is_none() {
                    entry.p_depth = Some(k);
                }
            }
        }
        if entry.p_depth.is_some() {
            break;
        }
        match map_f(p) {
            Ok(next) => p = next,
            Err(_) => {
                if entry.hit.is_none() {
                    (entry.k, entry.hit, entry.residual) = (Some(k), Some(Hit::Pole), quadratic_form(p).abs());
                }
                break;
            }
        }
    }
    if entry.hit.is_some() && entry.p_depth.is_some() {
        return entry;
    }

    // Local refinement: the eigenvalue is only known to rounding, and the
    // iterates amplify that error.
    for k in 0..=n {
        if entry.p_depth.is_none() {
            if let Some((root, r)) = refine_near(lambda, k, VarietyTag::P, tol) {
                entry.p_depth = Some(k);
                if entry.hit.is_none() || entry.k.is_some_and(|hk| k < hk) {
                    (entry.k, entry.hit, entry.residual, entry.refined_lambda) = (Some(k), Some(Hit::P), r, Some(root));
                }
            }
        }
        if entry.hit.is_none() && k < n {
            if let Some((root, r)) = refine_near(lambda, k, VarietyTag::Z1, tol) {
                (entry.k, entry.hit, entry.residual, entry.refined_lambda) = (Some(k), Some(Hit::Z1), r, Some(root));
            }
        }
    }
    entry
}

fn line_spectrum(n: usize) -> Result<Vec<f64>> {
    let m = level_ops(n)?.sum();
    Ok(eigenvalues(&m, SPECTRUM_TOL)?.eigenvalues)
}

/// For every eigenvalue `λ` of `aₙ + bₙ + cₙ`, the least `k ≤ n` with
/// `Fᵏ(1, 1, λ)` within `tol` of `P ∪ Z1 ∪ Z2` or on a pole.
pub fn inclusion_check(n: usize, tol: f64) -> Result<InclusionReport> {
    if !(1..=8).contains(&n) {
        return Err(Error::input(format!("inclusion check needs 1 ≤ n ≤ 8, got {n}")));
    }
    let entries = line_spectrum(n)?.into_iter().map(|l| classify_eigenvalue(l, n, tol)).collect();
    Ok(InclusionReport { level: n, tol, entries })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub level: usize,
    pub total: usize,
    /// Eigenvalues lying on some `F⁻ᵏ(P)` or on `Z3`.
    pub matched: usize,
    /// Eigenvalues explained only through `Z1` or a pole.
    pub z1_only: usize,
    pub unmatched: usize,
    pub fraction: f64,
    pub entries: Vec<InclusionEntry>,
}

impl ConjectureReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Fraction of the level spectrum on the line explained by preimages of `P`
/// (and `Z3`) alone. Informational; nothing is asserted.
pub fn conjecture_report(n: usize, tol: f64) -> Result<ConjectureReport> {
    if n > 6 {
        return Err(Error::input(format!("conjecture report is limited to n ≤ 6, got {n}")));
    }
    let entries: Vec<InclusionEntry> =
        line_spectrum(n)?.into_iter().map(|l| classify_eigenvalue(l, n.max(1), tol)).collect();
    let total = entries.len();
    let on_z3 = |e: &InclusionEntry| matches!(e.hit, Some(Hit::Z2));
    let matched = entries.iter().filter(|e| e.p_depth.is_some() || on_z3(e)).count();
    let z1_only = entries
        .iter()
        .filter(|e| e.p_depth.is_none() && matches!(e.hit, Some(Hit::Z1) | Some(Hit::Pole)))
        .count();
    let unmatched = total - matched - z1_only;
    Ok(ConjectureReport { level: n, total, matched, z1_only, unmatched, fraction: matched as f64 / total as f64, entries })
}

/// Candidate spectrum points on the line predicted by the dynamics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineCandidates {
    pub level: usize,
    /// Sorted roots of `ψₖ`, `k ≤ n`, merged with `Z1 ∩ line = {0, 2}`.
    pub roots: Vec<f64>,
    /// Grid cells in which some denominator of the orbit changes sign.
    pub pole_cells: Vec<(f64, f64)>,
}

const LINE_LO: f64 = -3.0;
const LINE_HI: f64 = 3.0;
const MERGE_TOL: f64 = 1e-9;
const POLE_SUBDIVISION: usize = 64;

/// `ψₖ` on the line together with the sign pattern of every denominator met
/// along the orbit (a change of pattern marks a pole in between).
fn psi_with_signature(lambda: f64, k: usize) -> Option<(f64, u64)> {
    let mut p = Point3::on_line(lambda);
    let mut signs = 0u64;
    for i in 0..k {
        let q = quadratic_form(p);
        if p.y < 0.0 {
            signs |= 1 << (2 * i);
        }
        if q < 0.0 {
            signs |= 1 << (2 * i + 1);
        }
        p = map_f(p).ok()?;
    }
    p.is_finite().then(|| (plane_p(p), signs))
}

fn scan_cells(k: usize, xs: &[f64], tol: f64, depth: usize, roots: &mut Vec<f64>, poles: &mut Vec<(f64, f64)>) {
    let vals: Vec<Option<(f64, u64)>> = xs.iter().map(|&x| psi_with_signature(x, k)).collect();
    for i in 0..xs.len() - 1 {
        let (a, b) = (xs[i], xs[i + 1]);
        let (Some((fa, sa)), Some((fb, sb))) = (vals[i], vals[i + 1]) else {
            if depth == 0 {
                let sub: Vec<f64> = (0..=POLE_SUBDIVISION).map(|j| a + (b - a) * j as f64 / POLE_SUBDIVISION as f64).collect();
                scan_cells(k, &sub, tol, depth + 1, roots, poles);
            }
            continue;
        };
        if sa != sb {
            poles.push((a, b));
            if depth == 0 {
                let sub: Vec<f64> = (0..=POLE_SUBDIVISION).map(|j| a + (b - a) * j as f64 / POLE_SUBDIVISION as f64).collect();
                scan_cells(k, &sub, tol, depth + 1, roots, poles);
            }
            continue;
        }
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa.signum() == fb.signum() {
            continue;
        }
        let f = |x: f64| psi_with_signature(x, k).map(|(v, _)| v);
        if let Some(root) = bisect(f, a, b, fa, tol) {
            let ok = iterate_line(root, k).is_some_and(|p| scaled_residual(p, VarietyTag::P) <= 1e-6);
            if ok {
                roots.push(root);
            } else {
                poles.push((a, b));
            }
        }
    }
    if let (Some(&x), Some(Some((0.0, _)))) = (xs.last(), vals.last()) {
        roots.push(x);
    }
}

/// Roots of `ψₖ(λ) = 1 + yₖ + zₖ − λₖ` on `[−3, 3]` for `k ≤ n` (sign scan on
/// `grid` cells, bisection to `tol`), plus `{0, 2}`.
pub fn line_spectrum_candidates(n: usize, grid: usize, tol: f64) -> Result<LineCandidates> {
    if n > 10 {
        return Err(Error::input(format!("line candidates are limited to n ≤ 10, got {n}")));
    }
    if grid < 2 {
        return Err(Error::input("grid needs at least two cells"));
    }
    let xs: Vec<f64> = (0..=grid).map(|i| LINE_LO + (LINE_HI - LINE_LO) * i as f64 / grid as f64).collect();
    let mut roots = vec![0.0, 2.0];
    let mut pole_cells = Vec::new();
    for k in 0..=n {
        scan_cells(k, &xs, tol, 0, &mut roots, &mut pole_cells);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= MERGE_TOL);
    pole_cells.sort_by(|x, y| x.0.total_cmp(&y.0));
    pole_cells.dedup();
    Ok(LineCandidates { level: n, roots, pole_cells })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialPointReport {
    pub level: usize,
    /// Eigenvalue of `(cₙ₋₁ + 1)(aₙ₋₁ + 1)(cₙ₋₁ + 1)/2` closest to 4.
    pub nearest_to_four: f64,
    /// Smallest `|μ|` over eigenvalues `μ` of `M̃ₙ(−1/2, 0, 1/2)`.
    pub pencil_min_abs_eigenvalue: f64,
    pub found: bool,
}

/// The pencil is singular at `(−1/2, 0, 1/2) ∈ Z1` because 4 is an eigenvalue
/// of `(aₙ₋₁ + 1)(cₙ₋₁ + 1)`, checked through the symmetric conjugate.
pub fn special_point_check(n: usize, tol: f64) -> Result<SpecialPointReport> {
    if n < 2 {
        return Err(Error::input("special point check needs n ≥ 2"));
    }
    let ops = level_ops(n - 1)?;
    let dim = ops.dim();
    let id = nalgebra::DMatrix::<f64>::identity(dim, dim);
    let a1 = ops.a.matrix() + &id;
    let c1 = ops.c.matrix() + &id;
    let sym = &c1 * a1 * &c1 / 2.0;
    let spec = eigenvalues(&sym, SPECTRUM_TOL)?;
    let nearest_to_four =
        spec.eigenvalues.iter().copied().min_by(|x, y| (x - 4.0).abs().total_cmp(&(y - 4.0).abs())).unwrap_or(f64::NAN);
    let pencil = pencil_matrix(n, Point3::new(-0.5, 0.0, 0.5))?;
    let pencil_spec = eigenvalues(&pencil, SPECTRUM_TOL)?;
    let pencil_min_abs_eigenvalue = pencil_spec.eigenvalues.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    Ok(SpecialPointReport {
        level: n,
        nearest_to_four,
        pencil_min_abs_eigenvalue,
        found: (nearest_to_four - 4.0).abs() <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_inclusion() {
        let r = inclusion_check(1, 1e-6).unwrap();
        assert_eq!(r.entries.len(), 2);
        let e1 = &r.entries[0];
        assert!((e1.lambda - 1.0).abs() < 1e-9);
        assert_eq!((e1.k, e1.hit), (Some(1), Some(Hit::P)));
        let e3 = &r.entries[1];
        assert!((e3.lambda - 3.0).abs() < 1e-9);
        assert_eq!((e3.k, e3.hit), (Some(0), Some(Hit::P)));
        assert!(r.all_accounted());
    }

    #[test]
    fn level_one_conjecture() {
        let r = conjecture_report(1, 1e-6).unwrap();
        assert_eq!(r.fraction, 1.0);
        assert!(conjecture_report(7, 1e-6).is_err());
    }

    #[test]
    fn candidates_contain_known_points() {
        let c = line_spectrum_candidates(1, 10_000, 1e-12).unwrap();
        for target in [0.0, 1.0, 2.0, 3.0] {
            assert!(c.roots.iter().any(|r| (r - target).abs() < 1e-9), "missing {target}: {:?}", c.roots);
        }
        assert!(c.roots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn special_point_level_two() {
        let r = special_point_check(2, 1e-10).unwrap();
        assert!(r.found);
        assert!(r.pencil_min_abs_eigenvalue < 1e-10);
        assert!(special_point_check(1, 1e-8).is_err());
    }
}
