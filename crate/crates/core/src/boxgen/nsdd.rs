//! Uniform-weight permutation boxes in `(X, Y, d, d)`.
//!
//! Block `(x, y)` is `1/d` times a permutation matrix: the identity on the
//! first block row and column, `P^k` at `(1, 1)` and arbitrary permutations
//! elsewhere.

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::rational;
use crate::relabel::all_permutations;
use crate::scenario::Scenario;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NsddSpec {
    pub scenario: Scenario,
    /// Multiplicative order of the permutation at block `(1, 1)`.
    pub k: usize,
    /// `perms[x - 1][y - 1]` is the permutation at block `(x, y)`, for
    /// `x, y >= 1`; `b = perm[a]`.
    pub perms: Vec<Vec<Vec<usize>>>,
}

/// Multiplicative order of a permutation.
pub fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

impl NsddSpec {
    pub fn check(&self) -> Result<()> {
        let s = self.scenario;
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if s.alice_outputs != s.bob_outputs {
            return bad(format!("permutation family needs A = B, scenario is {s}"));
        }
        let d = s.alice_outputs;
        if self.perms.len() != s.alice_inputs - 1
            || self.perms.iter().any(|row| row.len() != s.bob_inputs - 1)
        {
            return bad(format!(
                "permutation grid must be {} x {}",
                s.alice_inputs - 1,
                s.bob_inputs - 1
            ));
        }
        for perm in self.perms.iter().flatten() {
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if sorted != (0..d).collect::<Vec<_>>() {
                return bad(format!("{perm:?} is not a permutation of 0..{d}"));
            }
        }
        let order = permutation_order(&self.perms[0][0]);
        if order != self.k {
            return bad(format!(
                "block (1, 1) has order {order}, spec says k = {}",
                self.k
            ));
        }
        Ok(())
    }
}

pub fn nsdd_box(spec: &NsddSpec) -> Result<Behavior> {
    spec.check()?;
    let s = spec.scenario;
    let d = s.alice_outputs;
    let inv = rational::frac(1, d as i64);
    let mut table = vec![rational::zero(); s.table_len()];
    for x in 0..s.alice_inputs {
        for y in 0..s.bob_inputs {
            for a in 0..d {
                let b = if x == 0 || y == 0 {
                    a
                } else {
                    spec.perms[x - 1][y - 1][a]
                };
                table[s.index(x, y, a, b)] = inv.clone();
            }
        }
    }
    Behavior::new(s, table)
}

/// Every spec for `s` whose `(1, 1)` block is a single `d`-cycle, in a fixed
/// order: permutation grids as little-endian counters over
/// `all_permutations(d)`.
pub fn enumerate_nsdd(s: Scenario) -> Result<Vec<NsddSpec>> {
    if s.alice_outputs != s.bob_outputs {
        return Err(Error::InvalidSpec(format!(
            "permutation family needs A = B, scenario is {s}"
        )));
    }
    let d = s.alice_outputs;
    let perms = all_permutations(d);
    let cycles: Vec<&Vec<usize>> = perms
        .iter()
        .filter(|p| permutation_order(p) == d && is_single_cycle(p))
        .collect();
    let cells = (s.alice_inputs - 1) * (s.bob_inputs - 1);
    let mut specs = Vec::new();
    for first in &cycles {
        super::for_each_assignment(perms.len(), cells - 1, |digits| {
            let mut grid = vec![vec![Vec::new(); s.bob_inputs - 1]; s.alice_inputs - 1];
            for cell in 0..cells {
                let perm = if cell == 0 {
                    (*first).clone()
                } else {
                    perms[digits[cell - 1]].clone()
                };
                grid[cell / (s.bob_inputs - 1)][cell % (s.bob_inputs - 1)] = perm;
            }
            specs.push(NsddSpec {
                scenario: s,
                k: d,
                perms: grid,
            });
        });
    }
    Ok(specs)
}

fn is_single_cycle(perm: &[usize]) -> bool {
    let mut len = 1;
    let mut i = perm[0];
    while i != 0 {
        i = perm[i];
        len += 1;
    }
    len == perm.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(permutation_order(&[0, 1, 2]), 1);
        assert_eq!(permutation_order(&[1, 0, 2]), 2);
        assert_eq!(permutation_order(&[1, 2, 0]), 3);
        assert_eq!(permutation_order(&[1, 0, 3, 4, 2]), 6);
    }

    #[test]
    fn spec_order_is_checked() {
        let s = Scenario::new(2, 2, 3, 3).unwrap();
        let spec = NsddSpec {
            scenario: s,
            k: 2,
            perms: vec![vec![vec![1, 2, 0]]],
        };
        assert!(nsdd_box(&spec).is_err());
        let spec = NsddSpec { k: 3, ..spec };
        let b = nsdd_box(&spec).unwrap();
        assert!(b.validate().is_ok());
        assert_eq!(b.zero_count(), 4 * 6);
    }
}
