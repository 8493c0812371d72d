use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::format::fmt_sig;
use crate::{Error, Result};

/// Largest dimension accepted by the dense solver.
pub const MAX_EIGEN_DIM: usize = 1 << 12;

/// Off-diagonal convergence threshold of the symmetric QR iteration.
const CONVERGENCE_EPS: f64 = 1e-12;

/// Eigenvalues of a symmetric matrix, ascending, with the worst eigenpair
/// residual `‖Mv − λv‖ / ‖M‖` observed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub level: Option<usize>,
    pub eigenvalues: Vec<f64>,
    pub tol: f64,
    pub max_residual: f64,
}

impl SpectrumReport {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Groups eigenvalues closer than `cluster_tol` to their cluster's first
    /// member; each cluster is reported by its mean.
    pub fn multiplicities(&self, cluster_tol: f64) -> Vec<(f64, usize)> {
        let mut clusters: Vec<Vec<f64>> = Vec::new();
        for &x in &self.eigenvalues {
            match clusters.last_mut() {
                Some(c) if (x - c[0]).abs() <= cluster_tol => c.push(x),
                _ => clusters.push(vec![x]),
            }
        }
        clusters.into_iter().map(|c| (c.iter().sum::<f64>() / c.len() as f64, c.len())).collect()
    }

    /// Number of eigenvalues within `tol` of `target`.
    pub fn multiplicity_of(&self, target: f64, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&x| (x - target).abs() <= tol).count()
    }

    /// Whether some eigenvalue lies within `tol` of `target`.
    pub fn contains(&self, target: f64, tol: f64) -> bool {
        self.multiplicity_of(target, tol) > 0
    }

    /// CSV with header `eigenvalue,multiplicity`.
    pub fn to_csv(&self, cluster_tol: f64) -> String {
        let mut out = String::from("eigenvalue,multiplicity\n");
        for (value, count) in self.multiplicities(cluster_tol) {
            let _ = writeln!(out, "{},{count}", fmt_sig(value));
        }
        out
    }
}

fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// All eigenvalues of a symmetric matrix.
///
/// Fails on asymmetric input (beyond `tol · (1 + max|mᵢⱼ|)`), and when an
/// eigenpair residual exceeds `tol · ‖M‖∞`.
pub fn eigenvalues(m: &DMatrix<f64>, tol: f64) -> Result<SpectrumReport> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::input(format!("matrix is {}×{}, not square", n, m.ncols())));
    }
    if n > MAX_EIGEN_DIM {
        return Err(Error::input(format!("dimension {n} exceeds {MAX_EIGEN_DIM}")));
    }
    let scale = 1.0 + m.amax();
    let asym = (m - m.transpose()).amax();
    if asym > tol * scale {
        return Err(Error::input(format!("matrix is not symmetric (defect {asym:e})")));
    }
    if n == 0 {
        return Ok(SpectrumReport { level: None, eigenvalues: Vec::new(), tol, max_residual: 0.0 });
    }
    let eig = SymmetricEigen::try_new(m.clone(), CONVERGENCE_EPS, 0)
        .ok_or_else(|| Error::Numerical("symmetric eigensolver did not converge".into()))?;
    let norm = inf_norm(m).max(f64::MIN_POSITIVE);
    let residuals = m * &eig.eigenvectors - &eig.eigenvectors * DMatrix::from_diagonal(&eig.eigenvalues);
    let max_residual = residuals.column_iter().map(|c| c.norm()).fold(0.0, f64::max) / norm;
    if max_residual > tol {
        return Err(Error::Numerical(format!("eigenpair residual {max_residual:e} exceeds {tol:e}")));
    }
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(SpectrumReport { level: None, eigenvalues, tol, max_residual })
}

/// Equal-width histogram over `[−1, 1]`; the right end is closed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn bin_center(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * self.bin_width()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// CSV with header `lambda,count`; `lambda` is the bin centre.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{c}", fmt_sig(self.bin_center(i)));
        }
        out
    }
}

pub fn histogram(r: &SpectrumReport, bins: usize) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::input("histogram needs at least one bin"));
    }
    let (lo, hi) = (-1.0, 1.0);
    let mut counts = vec![0usize; bins];
    let width = (hi - lo) / bins as f64;
    for &x in &r.eigenvalues {
        // eigenvalues may overshoot ±1 by rounding
        let clamped = x.clamp(lo, hi);
        let i = (((clamped - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    Ok(Histogram { lo, hi, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::markov;

    #[test]
    fn two_by_two() {
        let r = eigenvalues(&markov(1).unwrap(), 1e-12).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r.eigenvalues[0] - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.eigenvalues[1] - 1.0).abs() < 1e-12);
        let r0 = eigenvalues(&markov(0).unwrap(), 1e-12).unwrap();
        assert_eq!(r0.eigenvalues, vec![1.0]);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(eigenvalues(&m, 1e-12), Err(Error::Input(_))));
    }

    #[test]
    fn multiplicities_cluster() {
        let r = SpectrumReport { level: None, eigenvalues: vec![-1.0, 0.5, 0.5 + 1e-13, 1.0], tol: 0.0, max_residual: 0.0 };
        let m = r.multiplicities(1e-9);
        assert_eq!(m.len(), 3);
        assert_eq!(m[1].1, 2);
        assert!(r.to_csv(1e-9).starts_with("eigenvalue,multiplicity\n-1.0,1\n0.5"));
    }

    #[test]
    fn histogram_counts() {
        let r = eigenvalues(&markov(5).unwrap(), 1e-10).unwrap();
        let h = histogram(&r, 7).unwrap();
        assert_eq!(h.total(), 32);
        assert!(*h.counts.last().unwrap() > 0);
        assert!(histogram(&r, 0).is_err());
        assert!(h.to_csv().starts_with("lambda,count\n"));
    }
}
