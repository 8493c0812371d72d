//! The renormalisation map `F`, its conjugate `G` and the conjugator `C`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative size below which a denominator counts as vanishing:
/// `|den| ≤ POLE_TOLERANCE · (1 + |num|)`.
pub const POLE_TOLERANCE: f64 = 1e-9;

/// A point `(y, z, λ)` of the pencil parameter space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub y: f64,
    pub z: f64,
    pub lambda: f64,
}

impl Point3 {
    pub const fn new(y: f64, z: f64, lambda: f64) -> Self {
        Point3 { y, z, lambda }
    }

    /// Point on the diagonal line `y = z = 1`.
    pub const fn on_line(lambda: f64) -> Self {
        Point3 { y: 1.0, z: 1.0, lambda }
    }

    pub fn is_finite(&self) -> bool {
        self.y.is_finite() && self.z.is_finite() && self.lambda.is_finite()
    }

    pub fn max_abs_diff(&self, other: &Point3) -> f64 {
        (self.y - other.y).abs().max((self.z - other.z).abs()).max((self.lambda - other.lambda).abs())
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.y, self.z, self.lambda)
    }
}

/// Which denominator vanished.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pole {
    /// `y = 0`.
    Y,
    /// `z = 0`.
    Z,
    /// `λ = 0`.
    Lambda,
    /// `−y² + z² − 2zλ + λ² = 0`, i.e. the point lies on `Z1`.
    Quadratic,
}

impl fmt::Display for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pole::Y => "y",
            Pole::Z => "z",
            Pole::Lambda => "lambda",
            Pole::Quadratic => "-y^2 + z^2 - 2 z lambda + lambda^2",
        };
        f.write_str(s)
    }
}

fn divide(num: f64, den: f64, pole: Pole) -> Result<f64> {
    if den.abs() <= POLE_TOLERANCE * (1.0 + num.abs()) {
        return Err(Error::Pole(pole));
    }
    Ok(num / den)
}

/// `−y² + z² − 2zλ + λ² = (z − λ − y)(z − λ + y)`.
pub fn quadratic_form(p: Point3) -> f64 {
    let Point3 { y, z, lambda: l } = p;
    -y * y + z * z - 2.0 * z * l + l * l
}

/// `F(y, z, λ) = (z/y, 1/q, (−λy² + λz² − 2zλ² + λ³ + z − λ)/(y q))` with
/// `q = −y² + z² − 2zλ + λ²`.
pub fn map_f(p: Point3) -> Result<Point3> {
    let Point3 { y, z, lambda: l } = p;
    let q = quadratic_form(p);
    let first = divide(z, y, Pole::Y)?;
    let second = divide(1.0, q, Pole::Quadratic)?;
    let num = -l * y * y + l * z * z - 2.0 * z * l * l + l * l * l + z - l;
    let third = divide(num, y * q, Pole::Quadratic)?;
    Ok(Point3::new(first, second, third))
}

/// `G(y, z, λ) = (z/y, (λ/y)(−2 + yλ), (1/λ)(−y + yλ² − λ))`.
pub fn map_g(p: Point3) -> Result<Point3> {
    let Point3 { y, z, lambda: l } = p;
    let first = divide(z, y, Pole::Y)?;
    let second = divide(l * (-2.0 + y * l), y, Pole::Y)?;
    let third = divide(-y + y * l * l - l, l, Pole::Lambda)?;
    Ok(Point3::new(first, second, third))
}

/// `C(y, z, λ) = (1/y, 1/z, y + z − λ)`, satisfying `C ∘ F = G ∘ C`.
pub fn conjugator(p: Point3) -> Result<Point3> {
    let Point3 { y, z, lambda: l } = p;
    Ok(Point3::new(divide(1.0, y, Pole::Y)?, divide(1.0, z, Pole::Z)?, y + z - l))
}

/// `Fᵏ(p)`.
pub fn iterate_f(p: Point3, k: usize) -> Result<Point3> {
    (0..k).try_fold(p, |acc, _| map_f(acc))
}

/// `ψₖ(p) = 1 + y + z − λ` evaluated at `Fᵏ(p)`; zero exactly on `F⁻ᵏ(P)`.
pub fn psi(p: Point3, k: usize) -> Result<f64> {
    let q = iterate_f(p, k)?;
    Ok(1.0 + q.y + q.z - q.lambda)
}
