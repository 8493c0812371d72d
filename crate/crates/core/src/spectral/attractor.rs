//! Implicit-surface sampling of the preimages `F⁻ᵈ(P)` inside a box.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::maps::{map_f, quadratic_form, Point3};
use super::varieties::plane_p;
use crate::format::fmt_sig;
use crate::{Error, Result};

pub const MAX_ATTRACTOR_DEPTH: usize = 6;
pub const MAX_ATTRACTOR_GRID: usize = 400;

/// Axis-aligned sampling box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxBounds {
    pub y: (f64, f64),
    pub z: (f64, f64),
    pub lambda: (f64, f64),
}

impl BoxBounds {
    pub fn cube(lo: f64, hi: f64) -> Self {
        BoxBounds { y: (lo, hi), z: (lo, hi), lambda: (lo, hi) }
    }

    /// Parses `lo,hi` (a cube) or `ylo,yhi,zlo,zhi,llo,lhi`.
    pub fn parse(s: &str) -> Result<Self> {
        let vals = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::input(format!("bad box bound {t:?}"))))
            .collect::<Result<Vec<f64>>>()?;
        let b = match vals.as_slice() {
            [lo, hi] => BoxBounds::cube(*lo, *hi),
            [a, b, c, d, e, f] => BoxBounds { y: (*a, *b), z: (*c, *d), lambda: (*e, *f) },
            _ => return Err(Error::input("box needs 2 or 6 comma-separated bounds")),
        };
        for (lo, hi) in [b.y, b.z, b.lambda] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::input(format!("box interval [{lo}, {hi}] is empty or not finite")));
            }
        }
        Ok(b)
    }
}

impl Default for BoxBounds {
    fn default() -> Self {
        BoxBounds::cube(-3.0, 3.0)
    }
}

/// `ψ_depth` at a node plus the sign pattern of the orbit's denominators.
fn node_value(p: Point3, depth: usize) -> Option<(f64, u64)> {
    let mut q = p;
    let mut signs = 0u64;
    for i in 0..depth {
        if q.y < 0.0 {
            signs |= 1 << (2 * i);
        }
        if quadratic_form(q) < 0.0 {
            signs |= 1 << (2 * i + 1);
        }
        q = map_f(q).ok()?;
    }
    let v = plane_p(q);
    v.is_finite().then_some((v, signs))
}

fn axis(lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    (0..grid).map(|i| lo + (hi - lo) * i as f64 / (grid - 1) as f64).collect()
}

/// Points where `|ψ_depth| ≤ tol` on a node or changes sign along a grid
/// edge; edges across which a denominator changes sign straddle a pole and
/// are skipped. Edge crossings are placed by linear interpolation.
pub fn attractor_cloud(depth: usize, grid: usize, bounds: BoxBounds, tol: f64) -> Result<Vec<Point3>> {
    if depth > MAX_ATTRACTOR_DEPTH {
        return Err(Error::input(format!("depth {depth} exceeds {MAX_ATTRACTOR_DEPTH}")));
    }
    if !(2..=MAX_ATTRACTOR_GRID).contains(&grid) {
        return Err(Error::input(format!("grid must be in 2..={MAX_ATTRACTOR_GRID}, got {grid}")));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::input(format!("tolerance must be a nonnegative real, got {tol}")));
    }
    let ys = axis(bounds.y.0, bounds.y.1, grid);
    let zs = axis(bounds.z.0, bounds.z.1, grid);
    let ls = axis(bounds.lambda.0, bounds.lambda.1, grid);
    let idx = |i: usize, j: usize, k: usize| (i * grid + j) * grid + k;
    let values: Vec<Option<(f64, u64)>> = (0..grid * grid * grid)
        .into_par_iter()
        .map(|n| {
            let (i, j, k) = (n / (grid * grid), (n / grid) % grid, n % grid);
            node_value(Point3::new(ys[i], zs[j], ls[k]), depth)
        })
        .collect();
    let point = |i: usize, j: usize, k: usize| Point3::new(ys[i], zs[j], ls[k]);

    let slices: Vec<Vec<Point3>> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..grid {
                for k in 0..grid {
                    let Some((f0, s0)) = values[idx(i, j, k)] else { continue };
                    let here = point(i, j, k);
                    if f0.abs() <= tol {
                        out.push(here);
                        continue;
                    }
                    let neighbours = [(i + 1, j, k), (i, j + 1, k), (i, j, k + 1)];
                    for (ni, nj, nk) in neighbours {
                        if ni >= grid || nj >= grid || nk >= grid {
                            continue;
                        }
                        let Some((f1, s1)) = values[idx(ni, nj, nk)] else { continue };
                        if s0 != s1 || f1.abs() <= tol || f0.signum() == f1.signum() {
                            continue;
                        }
                        let t = f0 / (f0 - f1);
                        let there = point(ni, nj, nk);
                        out.push(Point3::new(
                            here.y + t * (there.y - here.y),
                            here.z + t * (there.z - here.z),
                            here.lambda + t * (there.lambda - here.lambda),
                        ));
                    }
                }
            }
            out
        })
        .collect();
    Ok(slices.into_iter().flatten().collect())
}

/// CSV with header `y,z,lambda`.
pub fn cloud_csv(points: &[Point3]) -> String {
    let mut out = String::from("y,z,lambda\n");
    for p in points {
        let _ = writeln!(out, "{},{},{}", fmt_sig(p.y), fmt_sig(p.z), fmt_sig(p.lambda));
    }
    out
}
