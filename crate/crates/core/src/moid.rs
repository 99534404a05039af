//! Minimum Ordering with Independent Delays.
//!
//! Given a set `Z`, subsets `Z_i` of it and delays `h_i`, find a bijection
//! `sigma: Z -> 1..=|Z|` minimizing
//!
//! ```text
//! mu(sigma) = max(|Z|, max_i (max sigma(Z_i) + h_i))
//! ```
//!
//! For a candidate value `M`, orderings with `mu <= M` are exactly the
//! perfect matchings of the bipartite graph joining `z` to every position `j`
//! with `j + h_i <= M` for each `Z_i` containing `z`. [`solve`] scans `M`
//! upward and grows a single augmenting-path matching as edges appear.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    /// Indices into [`MoidInstance::z`].
    pub members: Vec<usize>,
    pub delay: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoidInstance {
    z: Vec<usize>,
    constraints: Vec<Constraint>,
}

impl MoidInstance {
    pub fn new(z: Vec<usize>, constraints: Vec<Constraint>) -> Result<Self> {
        let mut sorted = z.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("ordering elements must be distinct".into()));
        }
        for c in &constraints {
            if c.members.is_empty() {
                return Err(Error::InvalidParameter("empty constraint set".into()));
            }
            if c.delay == 0 {
                return Err(Error::InvalidParameter("delays must be positive".into()));
            }
            if let Some(&bad) = c.members.iter().find(|&&i| i >= z.len()) {
                return Err(Error::InvalidParameter(format!("constraint index {bad} outside Z")));
            }
        }
        Ok(MoidInstance { z, constraints })
    }

    pub fn z(&self) -> &[usize] {
        &self.z
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// Largest delay of any constraint containing each element, 0 if none.
    fn element_delays(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.z.len()];
        for c in &self.constraints {
            for &i in &c.members {
                d[i] = d[i].max(c.delay);
            }
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoidSolution {
    /// `sigma[i]` is the 1-based position of `z[i]`.
    pub sigma: Vec<usize>,
    pub mu: u32,
}

impl MoidSolution {
    /// Elements of `Z` listed by position.
    pub fn order(&self, inst: &MoidInstance) -> Vec<usize> {
        let mut out = vec![0; self.sigma.len()];
        for (i, &pos) in self.sigma.iter().enumerate() {
            out[pos - 1] = inst.z[i];
        }
        out
    }
}

fn check_bijection(n: usize, sigma: &[usize]) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::InvalidParameter(format!(
            "ordering has {} positions for {n} elements",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n + 1];
    for &p in sigma {
        if p == 0 || p > n || seen[p] {
            return Err(Error::InvalidParameter(
                "ordering is not a bijection onto 1..=|Z|".into(),
            ));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Weight of an ordering.
pub fn mu(inst: &MoidInstance, sigma: &[usize]) -> Result<u32> {
    check_bijection(inst.len(), sigma)?;
    Ok(mu_unchecked(inst, sigma))
}

pub(crate) fn mu_unchecked(inst: &MoidInstance, sigma: &[usize]) -> u32 {
    inst.constraints
        .iter()
        .map(|c| c.members.iter().map(|&i| sigma[i]).max().unwrap_or(0) as u32 + c.delay)
        .fold(inst.len() as u32, u32::max)
}

/// Position of the last element of each constraint under `sol`.
pub fn attachment_positions(inst: &MoidInstance, sol: &MoidSolution) -> Vec<usize> {
    inst.constraints
        .iter()
        .map(|c| c.members.iter().map(|&i| sol.sigma[i]).max().unwrap_or(0))
        .collect()
}

struct Matching {
    // position (0-based) of each element, or usize::MAX
    left: Vec<usize>,
    // element at each position, or usize::MAX
    right: Vec<usize>,
    size: usize,
}

impl Matching {
    fn new(k: usize) -> Self {
        Matching {
            left: vec![usize::MAX; k],
            right: vec![usize::MAX; k],
            size: 0,
        }
    }

    /// Kuhn augmenting path from element `z`; `limit[z]` is the number of
    /// positions `z` may occupy (a prefix of `0..k`).
    fn augment(&mut self, z: usize, limit: &[usize], visited: &mut [bool]) -> bool {
        for j in 0..limit[z] {
            if visited[j] {
                continue;
            }
            visited[j] = true;
            let owner = self.right[j];
            if owner == usize::MAX || self.augment(owner, limit, visited) {
                self.left[z] = j;
                self.right[j] = z;
                return true;
            }
        }
        false
    }
}

/// Optimal ordering by threshold scan with matching feasibility.
pub fn solve(inst: &MoidInstance) -> MoidSolution {
    let k = inst.len();
    let delays = inst.element_delays();
    let max_delay = delays.iter().copied().max().unwrap_or(0) as usize;
    let mut matching = Matching::new(k);
    let mut visited = vec![false; k];

    // At M = |Z| + max delay every element may take every position, so the
    // scan always terminates.
    for m in k..=k + max_delay {
        let limit: Vec<usize> = delays.iter().map(|&d| m.saturating_sub(d as usize).min(k)).collect();
        let before = matching.size;
        for z in 0..k {
            if matching.left[z] == usize::MAX {
                visited.iter_mut().for_each(|v| *v = false);
                if matching.augment(z, &limit, &mut visited) {
                    matching.size += 1;
                }
            }
        }
        debug_assert!(matching.size >= before);
        if matching.size == k {
            let sigma: Vec<usize> = matching.left.iter().map(|&j| j + 1).collect();
            let mu = mu_unchecked(inst, &sigma);
            debug_assert!(mu as usize <= m);
            return MoidSolution { sigma, mu };
        }
    }
    unreachable!("the matching is perfect once every position is allowed")
}
