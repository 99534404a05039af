//! Brute-force minimal elimination trees and their structural checks.
//!
//! ```bash
//! cargo run --release --example oracle_minimal_trees
//! ```

use treedepth::{oracle, Family, Forest};

fn main() -> treedepth::Result<()> {
    for fam in [
        Family::Path(6),
        Family::Star(5),
        Family::Cycle(6),
        Family::Grid { rows: 2, cols: 3 },
    ] {
        let g = fam.build()?;
        let report = oracle::minimal_trees(&g)?;
        let violations = oracle::check_minimal_tree_properties(&g)?;
        println!(
            "{fam}: td = {}, {} embeddable trees, {} minimal, {} violations",
            report.td,
            report.embeddable,
            report.minimal_trees.len(),
            violations.len()
        );
        let first = report.minimal_trees[0].clone();
        println!("  levels {:?}", first.level_sequence().0);
        for line in Forest::from(first).to_parent_text().lines() {
            println!("  {line}");
        }
    }
    Ok(())
}
