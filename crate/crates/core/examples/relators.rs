//! Relators φⁿ(r) of the L-presentation, checked by the word problem, plus
//! the branch identities.

use imglab::presentation::{branch_identity_check, hnn_presentation, relator_families, verify_relators};

fn main() -> imglab::Result<()> {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    for f in relator_families() {
        println!("r{} = {:<12} base word {}", f.index, f.notation, f.base);
    }
    let report = verify_relators(max_n, |row| {
        println!("family {} n={} |w|={:>4} trivial={}", row.family, row.n, row.reduced_length, row.verified);
    })?;
    println!("all verified: {}", report.all_verified());
    println!("branch identities: {}", branch_identity_check(10)?);
    println!("{}", hnn_presentation().to_json());
    Ok(())
}
