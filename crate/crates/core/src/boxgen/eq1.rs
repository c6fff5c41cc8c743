//! Block-circulant candidate boxes for scenarios with `A = B`.
//!
//! The table is an `X x Y` array of `A x A` blocks:
//!
//! ```text
//!   S  S   ..  S   L .. L
//!   S  T   ..  T   L .. L
//!   :  :       :   :    :
//!   S  T   ..  T   L .. L
//!   K  K   ..  K   M .. M
//!   :  :       :   :    :
//!   K  K   ..  K   M .. M
//! ```
//!
//! `S` is the identity over `A`, `K` (resp. `L`) puts `1/A` along its first
//! row (resp. column), `M` is a single one at `(0, 0)`, and each `T` is
//! `1/A` times the cyclic shift `b = a + offset (mod A)`.

use num_integer::Integer;

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::rational;
use crate::scenario::Scenario;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Eq1Spec {
    pub scenario: Scenario,
    /// Number of leading block rows carrying `S`/`T` blocks, in `2..=X`.
    pub g: usize,
    /// Number of leading block columns carrying `S`/`T` blocks, in `2..=Y`.
    pub h: usize,
    /// `t_blocks[i][j]` is the shift of block `T` at block position
    /// `(i + 1, j + 1)`; shape `(g - 1) x (h - 1)`.
    pub t_blocks: Vec<Vec<usize>>,
}

impl Eq1Spec {
    pub fn check(&self) -> Result<()> {
        let s = self.scenario;
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if s.alice_outputs != s.bob_outputs {
            return bad(format!("block family needs A = B, scenario is {s}"));
        }
        if !(2..=s.alice_inputs).contains(&self.g) || !(2..=s.bob_inputs).contains(&self.h) {
            return bad(format!(
                "g = {} must lie in 2..={} and h = {} in 2..={}",
                self.g, s.alice_inputs, self.h, s.bob_inputs
            ));
        }
        if self.t_blocks.len() != self.g - 1
            || self.t_blocks.iter().any(|row| row.len() != self.h - 1)
        {
            return bad(format!(
                "offset grid must be {} x {}",
                self.g - 1,
                self.h - 1
            ));
        }
        if self
            .t_blocks
            .iter()
            .flatten()
            .any(|&o| o >= s.alice_outputs)
        {
            return bad(format!("t_blocks must lie in 0..{}", s.alice_outputs));
        }
        Ok(())
    }

    /// Whether every shift offset is coprime to `A`, so that each `T` block
    /// is a single `A`-cycle.
    pub fn is_coprime(&self) -> bool {
        let n = self.scenario.alice_outputs;
        self.t_blocks.iter().flatten().all(|&o| o.gcd(&n) == 1)
    }
}

/// Multiplicative order of the cyclic shift by `offset` on `n` symbols.
pub fn shift_order(offset: usize, n: usize) -> usize {
    n / offset.gcd(&n)
}

pub fn eq1_box(spec: &Eq1Spec) -> Result<Behavior> {
    spec.check()?;
    let s = spec.scenario;
    let n = s.alice_outputs;
    let inv = rational::frac(1, n as i64);
    let mut table = vec![rational::zero(); s.table_len()];
    for x in 0..s.alice_inputs {
        for y in 0..s.bob_inputs {
            let core_row = x < spec.g;
            let core_col = y < spec.h;
            for a in 0..n {
                for b in 0..n {
                    let value = match (core_row, core_col) {
                        (true, true) if x == 0 || y == 0 => (a == b).then(|| inv.clone()),
                        (true, true) => {
                            let offset = spec.t_blocks[x - 1][y - 1];
                            (b == (a + offset) % n).then(|| inv.clone())
                        }
                        // L: Bob answers 0
                        (true, false) => (b == 0).then(|| inv.clone()),
                        // K: Alice answers 0
                        (false, true) => (a == 0).then(|| inv.clone()),
                        // M
                        (false, false) => (a == 0 && b == 0).then(rational::one),
                    };
                    if let Some(v) = value {
                        table[s.index(x, y, a, b)] = v;
                    }
                }
            }
        }
    }
    Behavior::new(s, table)
}

/// Every spec of the family for `s` in a fixed order (by `g`, `h`, then the
/// offset grid as a little-endian counter), optionally restricted to offsets
/// coprime to `A`.
pub fn enumerate_eq1(
    s: Scenario,
    coprime_only: bool,
) -> Result<impl Iterator<Item = (Eq1Spec, Behavior)>> {
    if s.alice_outputs != s.bob_outputs {
        return Err(Error::InvalidSpec(format!(
            "block family needs A = B, scenario is {s}"
        )));
    }
    let n = s.alice_outputs;
    let allowed: Vec<usize> = (0..n)
        .filter(|&o| !coprime_only || o.gcd(&n) == 1)
        .collect();
    let mut specs = Vec::new();
    for g in 2..=s.alice_inputs {
        for h in 2..=s.bob_inputs {
            let cells = (g - 1) * (h - 1);
            super::for_each_assignment(allowed.len(), cells, |digits| {
                let t_blocks = (0..g - 1)
                    .map(|i| {
                        (0..h - 1)
                            .map(|j| allowed[digits[i * (h - 1) + j]])
                            .collect()
                    })
                    .collect();
                specs.push(Eq1Spec {
                    scenario: s,
                    g,
                    h,
                    t_blocks,
                });
            });
        }
    }
    Ok(specs.into_iter().map(|spec| {
        let b = eq1_box(&spec).expect("enumerated specs are valid");
        (spec, b)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_orders() {
        assert_eq!(shift_order(0, 4), 1);
        assert_eq!(shift_order(1, 4), 4);
        assert_eq!(shift_order(2, 4), 2);
        assert_eq!(shift_order(2, 3), 3);
    }

    #[test]
    fn rejects_bad_specs() {
        let s = Scenario::new(3, 3, 2, 2).unwrap();
        let spec = Eq1Spec {
            scenario: s,
            g: 1,
            h: 2,
            t_blocks: vec![],
        };
        assert!(eq1_box(&spec).is_err());
        let spec = Eq1Spec {
            scenario: s,
            g: 2,
            h: 2,
            t_blocks: vec![vec![2]],
        };
        assert!(eq1_box(&spec).is_err());
        let s = Scenario::new(3, 3, 2, 3).unwrap();
        assert!(enumerate_eq1(s, false).is_err());
    }

    #[test]
    fn every_emitted_box_is_valid() {
        let s = Scenario::new(3, 3, 2, 2).unwrap();
        let all: Vec<_> = enumerate_eq1(s, false).unwrap().collect();
        // g, h in {2, 3}: grids of 1, 2, 2 and 4 cells over two t_blocks
        assert_eq!(all.len(), 2 + 4 + 4 + 16);
        for (_, b) in &all {
            assert!(b.validate().is_ok());
        }
    }

    #[test]
    fn coprime_filter_keeps_units_mod_four() {
        let s = Scenario::new(2, 2, 4, 4).unwrap();
        let t_blocks: Vec<usize> = enumerate_eq1(s, true)
            .unwrap()
            .map(|(spec, _)| spec.t_blocks[0][0])
            .collect();
        assert_eq!(t_blocks, vec![1, 3]);
    }
}
