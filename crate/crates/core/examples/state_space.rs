//! Size of the pruned state space against its bound, and the pruned values.
//!
//! ```bash
//! cargo run --release --example state_space -- 22
//! ```

use treedepth::graph::gnp_connected;
use treedepth::state_space::{state_bound, StateStore};
use treedepth::{pruned, Epsilon, Family};

fn main() -> treedepth::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(18);
    let eps = Epsilon::default();
    let graphs = [
        ("path".to_string(), Family::Path(n).build()?),
        ("complete".to_string(), Family::Complete(n).build()?),
        {
            let (g, seed) = gnp_connected(n, 0.2, 1)?;
            (format!("gnp seed {seed}"), g)
        },
    ];
    println!(
        "n = {n}, eps = {eps}, threshold = {}, bound = {}",
        eps.small_threshold(n),
        state_bound(n, eps)
    );
    for (label, g) in graphs {
        let mut store = StateStore::enumerate(&g, eps)?;
        pruned::run_pruned(&g, &mut store)?;
        let star = pruned::td_star(&store, &g.vertices())?;
        println!("{label:>14}: {:>9} states, td* = {star}", store.len());
    }
    Ok(())
}
