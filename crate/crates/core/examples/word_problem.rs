//! Word arithmetic, sections and the contracting word problem.
//!
//! ```text
//! cargo run --example word_problem -- abcacb
//! ```

use imglab::group::{element_order, gamma_normal_form, level_decomposition, triviality, GroupWord};

fn main() -> imglab::Result<()> {
    let input = std::env::args().nth(1).unwrap_or_else(|| "acacacac".into());
    let g = GroupWord::parse(&input)?;
    let nf = gamma_normal_form(&g);
    println!("word          {g}");
    println!("normal form   {nf} (Γ-length {})", nf.length());

    let t = triviality(&g);
    println!("trivial       {} (recursion depth {}, {} distinct sections)", t.trivial, t.depth, t.visited);
    match element_order(&g, 64) {
        Some(k) => println!("order         {k}"),
        None => println!("order         > 64"),
    }

    // The level-2 picture: four sections and a permutation of {00, 01, 10, 11}.
    let d = level_decomposition(&g, 2);
    let sections: Vec<String> = d.sections.iter().map(ToString::to_string).collect();
    println!("level 2       ({}) {}", sections.join(", "), d.cycles());
    Ok(())
}
