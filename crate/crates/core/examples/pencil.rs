//! The pencil a + yb + zc − λ, its Schur-complement renormalisation F, and the
//! eigenvalues of aₙ + bₙ + cₙ traced back to the plane P.

use imglab::spectral::{
    conjecture_report, inclusion_check, map_f, random_admissible_points, schur_residual, special_point_check, Point3,
};

fn main() -> imglab::Result<()> {
    let p = Point3::new(1.0, 1.0, 3.0);
    println!("F{p} = {}", map_f(p)?);

    for n in 1..=6 {
        let worst = random_admissible_points(50, n as u64)
            .into_iter()
            .map(|q| schur_residual(n, q))
            .collect::<imglab::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let inc = inclusion_check(n, 1e-6)?;
        let conj = conjecture_report(n, 1e-6)?;
        println!(
            "n = {n}: Schur residual {worst:.1e}, {}/{} eigenvalues reach a variety, P-preimage fraction {:.3}",
            inc.accounted(),
            inc.entries.len(),
            conj.fraction
        );
    }

    let sp = special_point_check(5, 1e-8)?;
    println!("special point: eigenvalue {} of (c+1)(a+1)(c+1)/2 at level 4", sp.nearest_to_four);
    Ok(())
}
