use nalgebra::DMatrix;

use super::maps::Point3;
use crate::group::Letter;
use crate::{Error, Result};

pub const MAX_OPERATOR_LEVEL: usize = 12;

/// The permutation operator of one generator on the `2ⁿ`-dimensional level
/// space, stored as the underlying involution of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelOperator {
    level: usize,
    role: Letter,
    perm: Vec<usize>,
}

impl LevelOperator {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn role(&self) -> Letter {
        self.role
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Image of basis index `i`.
    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (i, &j) in self.perm.iter().enumerate() {
            m[(i, j)] = 1.0;
        }
        m
    }

    /// Adds `coeff · self` into `m`.
    pub fn add_scaled_to(&self, m: &mut DMatrix<f64>, coeff: f64) {
        for (i, &j) in self.perm.iter().enumerate() {
            m[(i, j)] += coeff;
        }
    }
}

/// `(aₙ, bₙ, cₙ)` from the block recursion
///
/// ```text
/// aₙ = [0 I; I 0],  bₙ = diag(aₙ₋₁, cₙ₋₁),  cₙ = diag(bₙ₋₁, I),
/// ```
///
/// starting from the `1 × 1` identity at level 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelOperators {
    pub a: LevelOperator,
    pub b: LevelOperator,
    pub c: LevelOperator,
}

impl LevelOperators {
    pub fn level(&self) -> usize {
        self.a.level
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `aₙ + bₙ + cₙ`.
    pub fn sum(&self) -> DMatrix<f64> {
        self.combination(1.0, 1.0, 1.0)
    }

    pub fn combination(&self, ca: f64, cb: f64, cc: f64) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        self.a.add_scaled_to(&mut m, ca);
        self.b.add_scaled_to(&mut m, cb);
        self.c.add_scaled_to(&mut m, cc);
        m
    }
}

fn check_level(n: usize) -> Result<()> {
    if n > MAX_OPERATOR_LEVEL {
        return Err(Error::input(format!("level {n} exceeds {MAX_OPERATOR_LEVEL}")));
    }
    Ok(())
}

pub fn level_ops(n: usize) -> Result<LevelOperators> {
    check_level(n)?;
    let mut a = vec![0usize];
    let mut b = vec![0usize];
    let mut c = vec![0usize];
    for _ in 0..n {
        let half = a.len();
        let next_a: Vec<usize> = (0..2 * half).map(|i| i ^ half).collect();
        let next_b: Vec<usize> = a.iter().copied().chain(c.iter().map(|&j| j + half)).collect();
        let next_c: Vec<usize> = b.iter().copied().chain(half..2 * half).collect();
        (a, b, c) = (next_a, next_b, next_c);
    }
    let op = |role, perm| LevelOperator { level: n, role, perm };
    Ok(LevelOperators { a: op(Letter::A, a), b: op(Letter::B, b), c: op(Letter::C, c) })
}

/// Markov operator `Mₙ = (aₙ + bₙ + cₙ) / 3`.
pub fn markov(n: usize) -> Result<DMatrix<f64>> {
    Ok(level_ops(n)?.sum() / 3.0)
}

/// Pencil `M̃ₙ(y, z, λ) = aₙ + y·bₙ + z·cₙ − λ`.
pub fn pencil_matrix(n: usize, p: Point3) -> Result<DMatrix<f64>> {
    let ops = level_ops(n)?;
    let mut m = ops.combination(1.0, p.y, p.z);
    for i in 0..ops.dim() {
        m[(i, i)] -= p.lambda;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_levels() {
        let ops = level_ops(1).unwrap();
        assert_eq!(ops.a.matrix(), DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        assert_eq!(ops.b.matrix(), DMatrix::identity(2, 2));
        assert_eq!(level_ops(2).unwrap().c.matrix(), DMatrix::identity(4, 4));
        assert!(level_ops(13).is_err());
    }

    #[test]
    fn generators_are_involutions() {
        for n in 0..=10 {
            let ops = level_ops(n).unwrap();
            for op in [&ops.a, &ops.b, &ops.c] {
                assert!((0..op.dim()).all(|i| op.image(op.image(i)) == i), "level {n} {:?}", op.role());
            }
        }
        let a = level_ops(4).unwrap().b.matrix();
        assert_eq!(&a * &a, DMatrix::identity(16, 16));
    }

    #[test]
    fn markov_low_levels() {
        assert_eq!(markov(0).unwrap(), DMatrix::from_element(1, 1, 1.0));
        let m1 = markov(1).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]) / 3.0;
        assert!((m1 - expected).abs().max() < 1e-15);
        let m9 = markov(9).unwrap();
        for r in 0..m9.nrows() {
            assert!((m9.row(r).sum() - 1.0).abs() < 1e-12);
        }
        assert_eq!(m9, m9.transpose());
    }

    #[test]
    fn pencil_examples() {
        let p0 = pencil_matrix(0, Point3::new(0.3, -0.7, 2.0)).unwrap();
        assert!((p0[(0, 0)] - (1.0 + 0.3 - 0.7 - 2.0)).abs() < 1e-15);
        let p1 = pencil_matrix(1, Point3::new(1.0, 1.0, 0.0)).unwrap();
        assert_eq!(p1, level_ops(1).unwrap().sum());
        let singular = pencil_matrix(1, Point3::new(1.0, 1.0, 3.0)).unwrap();
        assert!(singular.determinant().abs() < 1e-12);
    }
}
