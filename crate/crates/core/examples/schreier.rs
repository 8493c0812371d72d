//! Schreier graphs of the level actions, exported as DOT or CSV.
//!
//! ```text
//! cargo run --example schreier -- 6 > level6.dot
//! ```

use imglab::schreier::{ExportFormat, SchreierGraph};

fn main() -> imglab::Result<()> {
    let level: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let g = SchreierGraph::build(level, false)?;
    eprintln!(
        "level {level}: {} vertices, {} edges, {} loops suppressed, connected = {}",
        g.vertex_count(),
        g.edges().len(),
        g.suppressed_loops().len(),
        g.is_connected()
    );
    print!("{}", g.export(ExportFormat::Dot));
    Ok(())
}
