//! Membership in the varieties `P`, `Z1`, `Z2`, `Z3` of the pencil parameter space.
//!
//! * `P`:  `1 + y + z − λ = 0`, the singular set at level 0.
//! * `Z1`: `(z − λ − y)(z − λ + y) = 0`, where the lower diagonal block is singular.
//! * `Z2`: `y = 0` and `(1 − (λ − z)(λ + z))(1 − λ + z)(1 + λ − z) = 0`.
//! * `Z3`: `Z2` together with its preimage, which lies in `z = 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::maps::{map_f, Point3};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarietyTag {
    P,
    Z1,
    Z2,
    Z3,
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VarietyTag::P => "P",
            VarietyTag::Z1 => "Z1",
            VarietyTag::Z2 => "Z2",
            VarietyTag::Z3 => "Z3",
        };
        f.write_str(s)
    }
}

impl FromStr for VarietyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" => Ok(VarietyTag::P),
            "Z1" => Ok(VarietyTag::Z1),
            "Z2" => Ok(VarietyTag::Z2),
            "Z3" => Ok(VarietyTag::Z3),
            other => Err(Error::input(format!("unknown variety {other:?}"))),
        }
    }
}

/// `1 + y + z − λ`.
pub fn plane_p(p: Point3) -> f64 {
    1.0 + p.y + p.z - p.lambda
}

/// `(z − λ − y)(z − λ + y)`.
pub fn z1_form(p: Point3) -> f64 {
    (p.z - p.lambda - p.y) * (p.z - p.lambda + p.y)
}

/// `(1 − (λ − z)(λ + z))(1 − λ + z)(1 + λ − z)`, the `y = 0` determinant factor.
pub fn z2_form(p: Point3) -> f64 {
    let Point3 { z, lambda: l, .. } = p;
    (1.0 - (l - z) * (l + z)) * (1.0 - l + z) * (1.0 + l - z)
}

/// Raw membership test with absolute tolerance on the defining polynomials.
pub fn variety_member(p: Point3, tag: VarietyTag, tol: f64) -> bool {
    match tag {
        VarietyTag::P => plane_p(p).abs() <= tol,
        VarietyTag::Z1 => z1_form(p).abs() <= tol,
        VarietyTag::Z2 => p.y.abs() <= tol && z2_form(p).abs() <= tol,
        VarietyTag::Z3 => {
            if variety_member(p, VarietyTag::Z2, tol) {
                return true;
            }
            if p.z.abs() > tol {
                return false;
            }
            match map_f(p) {
                Ok(image) => variety_member(Point3 { y: 0.0, ..image }, VarietyTag::Z2, tol),
                Err(_) => false,
            }
        }
    }
}

/// Scale-aware distance-like residuals used when iterating far from the
/// origin: each polynomial is divided by the size of its terms.
pub(crate) fn scaled_residual(p: Point3, tag: VarietyTag) -> f64 {
    let size = 1.0 + p.y.abs() + p.z.abs() + p.lambda.abs();
    match tag {
        VarietyTag::P => plane_p(p).abs() / size,
        VarietyTag::Z1 => z1_form(p).abs() / (size * size),
        VarietyTag::Z2 => (p.y.abs() / size).max(z2_form(p).abs() / size.powi(4)),
        VarietyTag::Z3 => {
            let direct = scaled_residual(p, VarietyTag::Z2);
            let via_preimage = match map_f(p) {
                Ok(image) => (p.z.abs() / size).max(scaled_residual(Point3 { y: 0.0, ..image }, VarietyTag::Z2)),
                Err(_) => f64::INFINITY,
            };
            direct.min(via_preimage)
        }
    }
}
