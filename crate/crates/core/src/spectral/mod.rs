//! Level operators, Markov spectra, the operator pencil and its
//! renormalisation by Schur complements.

mod attractor;
mod eigen;
mod maps;
mod operators;
mod renormalization;
mod schur;
mod varieties;

pub use attractor::{attractor_cloud, cloud_csv, BoxBounds, MAX_ATTRACTOR_DEPTH, MAX_ATTRACTOR_GRID};
pub use eigen::{eigenvalues, histogram, Histogram, SpectrumReport, MAX_EIGEN_DIM};
pub use maps::{conjugator, iterate_f, map_f, map_g, psi, quadratic_form, Point3, Pole, POLE_TOLERANCE};
pub use operators::{level_ops, markov, pencil_matrix, LevelOperator, LevelOperators, MAX_OPERATOR_LEVEL};
pub use renormalization::{
    conjecture_report, inclusion_check, line_spectrum_candidates, special_point_check, ConjectureReport, Hit,
    InclusionEntry, InclusionReport, LineCandidates, SpecialPointReport,
};
pub use schur::{random_admissible_points, schur_complement, schur_identity_check, schur_residual};
pub use varieties::{plane_p, variety_member, z1_form, z2_form, VarietyTag};

use crate::Result;

/// Spectrum of the Markov operator `Mₙ`.
pub fn markov_spectrum(n: usize, tol: f64) -> Result<SpectrumReport> {
    let mut report = eigenvalues(&markov(n)?, tol)?;
    report.level = Some(n);
    Ok(report)
}
