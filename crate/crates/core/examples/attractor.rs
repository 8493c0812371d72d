//! Point cloud on F⁻ᵈ(P), ready for a 3-D scatter plot.
//!
//! ```text
//! cargo run --release --example attractor -- 3 120 > cloud.csv
//! ```

use imglab::spectral::{attractor_cloud, cloud_csv, BoxBounds};

fn main() -> imglab::Result<()> {
    let mut args = std::env::args().skip(1);
    let depth = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let grid = args.next().and_then(|s| s.parse().ok()).unwrap_or(80);
    let cloud = attractor_cloud(depth, grid, BoxBounds::default(), 1e-12)?;
    eprintln!("depth {depth}, grid {grid}: {} points", cloud.len());
    print!("{}", cloud_csv(&cloud));
    Ok(())
}
