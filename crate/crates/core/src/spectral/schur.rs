use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::maps::{map_f, quadratic_form, Point3, Pole, POLE_TOLERANCE};
use super::operators::pencil_matrix;
use super::varieties::VarietyTag;
use crate::{Error, Result};

/// First Schur complement `A − B D⁻¹ C` of a matrix split into equal halves.
pub fn schur_complement(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    if n < 2 || n % 2 != 0 || m.ncols() != n {
        return Err(Error::input(format!("cannot split a {}×{} matrix into halves", n, m.ncols())));
    }
    let h = n / 2;
    let a = m.view((0, 0), (h, h));
    let b = m.view((0, h), (h, h));
    let c = m.view((h, 0), (h, h)).into_owned();
    let d = m.view((h, h), (h, h)).into_owned();
    let d_inv_c = d.lu().solve(&c).ok_or(Error::Variety(VarietyTag::Z1))?;
    Ok(a - b * d_inv_c)
}

/// Max elementwise residual of `(1/y)·S₁(M̃ₙ(p)) − M̃ₙ₋₁(F(p))`.
pub fn schur_residual(n: usize, p: Point3) -> Result<f64> {
    if n == 0 {
        return Err(Error::input("the Schur identity needs level n ≥ 1"));
    }
    if p.y.abs() <= POLE_TOLERANCE * (1.0 + p.z.abs()) {
        return Err(Error::Pole(Pole::Y));
    }
    if quadratic_form(p).abs() <= POLE_TOLERANCE {
        return Err(Error::Variety(VarietyTag::Z1));
    }
    let s = schur_complement(&pencil_matrix(n, p)?)? / p.y;
    let renormalised = pencil_matrix(n - 1, map_f(p)?)?;
    Ok((s - renormalised).amax())
}

pub fn schur_identity_check(n: usize, p: Point3, tol: f64) -> Result<bool> {
    Ok(schur_residual(n, p)? <= tol)
}

/// Random points of `[−2, 2]³` at distance from the `y = 0` pole and from
/// `Z1` (`|y| ≥ 0.1`, `|q| ≥ 0.1`), deterministic in `seed`.
pub fn random_admissible_points(count: usize, seed: u64) -> Vec<Point3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = Point3::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        if p.y.abs() >= 0.1 && quadratic_form(p).abs() >= 0.1 {
            out.push(p);
        }
    }
    out
}
