//! Ordering a root path so that hanging subtrees stay shallow.
//!
//! Four path vertices `a, b, c, d`; subtrees of depth 3 attach below `{a}`,
//! of depth 1 below `{b, c}` and of depth 2 below `{d}`.
//!
//! ```bash
//! cargo run --example moid_ordering
//! ```

use treedepth::moid::{self, Constraint, MoidInstance};
use treedepth::oracle::exhaustive_moid;

fn main() -> treedepth::Result<()> {
    let names = ["a", "b", "c", "d"];
    let inst = MoidInstance::new(
        vec![0, 1, 2, 3],
        vec![
            Constraint {
                members: vec![0],
                delay: 3,
            },
            Constraint {
                members: vec![1, 2],
                delay: 1,
            },
            Constraint {
                members: vec![3],
                delay: 2,
            },
        ],
    )?;
    let sol = moid::solve(&inst);
    let order: Vec<&str> = sol.order(&inst).into_iter().map(|i| names[i]).collect();
    println!("order {order:?}, mu = {}", sol.mu);
    println!("attachment positions {:?}", moid::attachment_positions(&inst, &sol));
    println!("exhaustive mu = {}", exhaustive_moid(&inst)?.mu);

    // identity order for comparison
    println!("identity order mu = {}", moid::mu(&inst, &[1, 2, 3, 4])?);
    Ok(())
}
