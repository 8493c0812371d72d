//! Spectra of the Markov operators Mₙ and their nesting across levels.

use imglab::spectral::{histogram, markov_spectrum};

fn main() -> imglab::Result<()> {
    let top: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(9);
    let mut previous = markov_spectrum(0, 1e-9)?;
    for n in 1..=top {
        let s = markov_spectrum(n, 1e-9)?;
        let nested = previous.eigenvalues.iter().all(|&l| s.contains(l, 1e-9));
        println!(
            "level {n:>2}: {:>4} eigenvalues, min {:+.6}, max residual {:.1e}, contains level {}: {nested}",
            s.len(),
            s.eigenvalues[0],
            s.max_residual,
            n - 1
        );
        previous = s;
    }
    print!("{}", histogram(&previous, 40)?.to_csv());
    Ok(())
}
