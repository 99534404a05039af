//! Exact tree-depth with the branching solver, with counters.
//!
//! ```bash
//! cargo run --release --example full_solve -- 18 0.3 7
//! ```

use treedepth::full::{treedepth_with, FullConfig};
use treedepth::graph::gnp_connected;
use treedepth::Epsilon;

fn main() -> treedepth::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(16);
    let p: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.3);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let (g, used) = gnp_connected(n, p, seed)?;
    println!("G({n}, {p}) seed {used}: {} edges", g.m());
    for eps in [Epsilon::new(1, 10)?, Epsilon::new(1, 8)?] {
        let r = treedepth_with(&g, &FullConfig::without_cutoff(eps))?;
        let s = &r.stats;
        println!(
            "eps {eps}: td = {}, td* = {:?}, {} states, {} branches solved, {} rejected, {} with fallback, {:.1?}",
            r.td, s.pruned_bound, s.states, s.branches, s.rejected, s.fallbacks, s.runtime
        );
    }
    Ok(())
}
