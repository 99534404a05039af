//! Solve a disconnected graph and print the witness forest as DOT.
//!
//! ```bash
//! cargo run --example witness_dot | dot -Tsvg > forest.svg
//! ```

use treedepth::graph::{parse_graph, Format};
use treedepth::{solve, SolveConfig};

const INPUT: &str = "\
c two triangles sharing a vertex, and a separate edge
p edge 7 7
e 1 2
e 2 3
e 1 3
e 3 4
e 4 5
e 3 5
e 6 7
";

fn main() -> treedepth::Result<()> {
    let g = parse_graph(INPUT, Format::Dimacs)?;
    let sol = solve(&g, &SolveConfig::default())?;
    eprintln!("treedepth {}", sol.td);
    print!("{}", sol.witness.to_dot());
    Ok(())
}
