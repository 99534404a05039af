#![allow(dead_code)]

use treedepth::graph::gnp_connected;
use treedepth::{Family, Graph};

/// Named families with at most `max_n` vertices, labelled.
pub fn named_families(max_n: usize) -> Vec<(String, Graph)> {
    let mut fams = Vec::new();
    for n in 1..=max_n {
        fams.push(Family::Path(n));
        fams.push(Family::Complete(n));
        if n >= 3 {
            fams.push(Family::Cycle(n));
        }
        if n >= 2 {
            fams.push(Family::Star(n - 1));
        }
    }
    for cols in 1..=max_n / 3 {
        fams.push(Family::Grid { rows: 3, cols });
    }
    if max_n >= 4 {
        fams.push(Family::Grid { rows: 2, cols: 2 });
    }
    fams.into_iter().map(|f| (f.to_string(), f.build().unwrap())).collect()
}

/// Seeded connected G(n, p) samples: `count` graphs, sizes cycling through
/// `sizes`, edge probabilities through `ps`.
pub fn random_graphs(count: usize, sizes: &[usize], ps: &[f64], base_seed: u64) -> Vec<(String, Graph)> {
    (0..count)
        .map(|i| {
            let n = sizes[i % sizes.len()];
            let p = ps[i / sizes.len() % ps.len()];
            let (g, seed) = gnp_connected(n, p, base_seed + 1000 * i as u64).unwrap();
            (format!("gnp:{n}:{p}:{seed}"), g)
        })
        .collect()
}
