//! Measured state counts and branches for several families, as CSV.
//!
//! ```bash
//! cargo run --release --example bench_families
//! ```

use treedepth::state_space::state_bound;
use treedepth::{solve, Algorithm, Epsilon, Family, SolveConfig};

fn main() -> treedepth::Result<()> {
    let cfg = SolveConfig {
        algorithm: Algorithm::Full,
        ..SolveConfig::default()
    };
    println!("family,n,treedepth,states,bound,branches,runtime_ms");
    for n in (12..=20).step_by(2) {
        for fam in [Family::Path(n), Family::Cycle(n), Family::Grid { rows: 2, cols: n / 2 }] {
            let g = fam.build()?;
            let s = solve(&g, &cfg)?;
            println!(
                "{fam},{n},{},{},{},{},{:.1}",
                s.td,
                s.stats.states,
                state_bound(n, Epsilon::default()),
                s.stats.branches,
                s.stats.runtime.as_secs_f64() * 1e3
            );
        }
    }
    Ok(())
}
