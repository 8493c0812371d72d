//! The self-affine measure: μ|₀ in closed form, the fixed point of Φ, and a
//! Monte-Carlo check of μ|₀ by the random walk with an internal bit.

use imglab::measure::{fixed_point, restrict0, self_affinity_check, uniqueness_scan, walk_oracle, FiniteMeasure};

fn main() -> imglab::Result<()> {
    let fp = fixed_point(1e-15);
    println!("ζ = {:.12}  μ* = ({:.12}, {:.12}, {:.12})  α = {:.12}", fp.x, fp.x, fp.y, fp.z, fp.alpha);
    println!("cubic residual {:.1e}, map residual {:.1e}", fp.cubic_residual, fp.map_residual);
    println!("self-affine: {}", self_affinity_check(&fp.measure(), 1e-10)?);

    let scan = uniqueness_scan(100)?;
    println!("{} starts → {} interior fixed point(s)", scan.starts, scan.fixed_points.len());

    let uniform = FiniteMeasure::uniform();
    println!("uniform μ|₀ = {}", restrict0(&uniform)?.to_json());
    let walk = walk_oracle(&uniform, 200_000, 7, 8)?;
    println!("walk estimate {} (L1 {:.4})", walk.empirical.to_json(), walk.l1_distance);
    Ok(())
}
