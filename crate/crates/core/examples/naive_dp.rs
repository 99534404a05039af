//! Tree-depth of small graphs with the connected-subset DP, plus the witness.
//!
//! ```bash
//! cargo run --example naive_dp
//! ```

use treedepth::naive::{reconstruct_naive, td_naive, NaiveTable};
use treedepth::{Family, Forest};

fn main() -> treedepth::Result<()> {
    for fam in [Family::Path(15), Family::Cycle(9), Family::Grid { rows: 3, cols: 4 }] {
        let g = fam.build()?;
        let mut table = NaiveTable::default();
        let td = td_naive(&g, &g.vertices(), &mut table, None)?;
        let tree = reconstruct_naive(&g, &g.vertices(), &table)?;
        println!(
            "{fam}: td = {td}, {} connected sets evaluated, root {}",
            table.len(),
            tree.root()
        );
        print!("{}", Forest::from(tree).to_parent_text());
    }
    Ok(())
}
