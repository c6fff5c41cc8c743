//! Classical simulation with one-way communication.
//!
//! Alice answers deterministically and sends Bob one of `d` messages that
//! depends on her input only. Bob's answer depends on his input and the
//! message. The deterministic strategies span a polytope that contains the
//! local polytope (`d = 1`) and every behavior once `d >= X`.

use std::fmt;

use num_traits::Zero;

use crate::behavior::{Behavior, BellFunctional};
use crate::boxgen::for_each_assignment;
use crate::error::{Error, Result};
use crate::polytope::{critical_visibility, membership, MembershipResult};
use crate::rational::{self, Rational};
use crate::scenario::Scenario;

pub const DEFAULT_MAX_STRATEGIES: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommStrategy {
    pub scenario: Scenario,
    pub d: usize,
    pub alice_out: Vec<usize>,
    pub message: Vec<usize>,
    /// `bob_out[y][m]`.
    pub bob_out: Vec<Vec<usize>>,
}

impl CommStrategy {
    pub fn check(&self) -> Result<()> {
        let s = self.scenario;
        let bad = |m: &str| Err(Error::InvalidSpec(format!("strategy for {s}: {m}")));
        if self.d == 0 {
            return bad("message alphabet must be nonempty");
        }
        if self.alice_out.len() != s.alice_inputs
            || self.alice_out.iter().any(|&a| a >= s.alice_outputs)
        {
            return bad("Alice's output map is out of range");
        }
        if self.message.len() != s.alice_inputs || self.message.iter().any(|&m| m >= self.d) {
            return bad("message map is out of range");
        }
        if self.bob_out.len() != s.bob_inputs
            || self
                .bob_out
                .iter()
                .any(|row| row.len() != self.d || row.iter().any(|&b| b >= s.bob_outputs))
        {
            return bad("Bob's output map is out of range");
        }
        Ok(())
    }
}

impl fmt::Display for CommStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = |v: &[usize]| v.iter().map(|d| d.to_string()).collect::<String>();
        let bob: Vec<String> = self.bob_out.iter().map(|row| digits(row)).collect();
        write!(
            f,
            "alice={} message={} bob={}",
            digits(&self.alice_out),
            digits(&self.message),
            bob.join("/")
        )
    }
}

/// The 0/1 table of a strategy. It may signal from Alice to Bob.
pub fn strategy_behavior(strategy: &CommStrategy) -> Result<Behavior> {
    strategy.check()?;
    let s = strategy.scenario;
    let mut table = vec![rational::zero(); s.table_len()];
    for x in 0..s.alice_inputs {
        let a = strategy.alice_out[x];
        let m = strategy.message[x];
        for y in 0..s.bob_inputs {
            table[s.index(x, y, a, strategy.bob_out[y][m])] = rational::one();
        }
    }
    Behavior::new(s, table)
}

fn raw_strategy_count(s: Scenario, d: usize) -> Option<u128> {
    let pow = |base: usize, exp: usize| (base as u128).checked_pow(exp as u32);
    pow(s.alice_outputs, s.alice_inputs)?
        .checked_mul(pow(d, s.alice_inputs)?)?
        .checked_mul(pow(s.bob_outputs, s.bob_inputs.checked_mul(d)?)?)
}

/// Alice's `(output, message)` maps, the loop of the functional maximum.
fn alice_side_count(s: Scenario, d: usize) -> Option<u128> {
    (s.alice_outputs as u128)
        .checked_pow(s.alice_inputs as u32)?
        .checked_mul((d as u128).checked_pow(s.alice_inputs as u32)?)
}

fn check_guard(count: Option<u128>, d: usize, max_strategies: u128) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidSpec(
            "message alphabet must be nonempty".into(),
        ));
    }
    match count {
        Some(n) if n <= max_strategies => Ok(()),
        _ => Err(Error::GuardExceeded {
            what: "communication strategies",
            limit: usize::try_from(max_strategies).unwrap_or(usize::MAX),
        }),
    }
}

/// Message maps labelling messages by first appearance, at most `d` labels.
fn message_maps(inputs: usize, d: usize) -> Vec<(Vec<usize>, usize)> {
    fn grow(
        prefix: &mut Vec<usize>,
        used: usize,
        inputs: usize,
        d: usize,
        out: &mut Vec<(Vec<usize>, usize)>,
    ) {
        if prefix.len() == inputs {
            out.push((prefix.clone(), used));
            return;
        }
        for m in 0..(used + 1).min(d) {
            prefix.push(m);
            grow(prefix, used.max(m + 1), inputs, d, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 0, inputs, d, &mut out);
    out
}

/// One strategy per distinct behavior: messages labelled by first
/// appearance, distinct Bob answers for distinct used messages and answer
/// `0` for unused ones.
pub fn enumerate_strategies(
    s: Scenario,
    d: usize,
    max_strategies: u128,
) -> Result<Vec<CommStrategy>> {
    check_guard(raw_strategy_count(s, d), d, max_strategies)?;
    let mut bob_fns: Vec<Vec<usize>> = Vec::new();
    for_each_assignment(s.bob_outputs, s.bob_inputs, |f| bob_fns.push(f.to_vec()));
    let mut alice_fns: Vec<Vec<usize>> = Vec::new();
    for_each_assignment(s.alice_outputs, s.alice_inputs, |f| {
        alice_fns.push(f.to_vec())
    });
    let messages = message_maps(s.alice_inputs, d);
    let mut out = Vec::new();
    for alice_out in &alice_fns {
        for (message, used) in &messages {
            let mut chosen: Vec<usize> = Vec::with_capacity(*used);
            distinct_tuples(bob_fns.len(), *used, &mut chosen, &mut |picks| {
                let bob_out = (0..s.bob_inputs)
                    .map(|y| {
                        (0..d)
                            .map(|m| picks.get(m).map_or(0, |&f| bob_fns[f][y]))
                            .collect()
                    })
                    .collect();
                out.push(CommStrategy {
                    scenario: s,
                    d,
                    alice_out: alice_out.clone(),
                    message: message.clone(),
                    bob_out,
                });
            });
        }
    }
    Ok(out)
}

fn distinct_tuples(n: usize, len: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if chosen.len() == len {
        f(chosen);
        return;
    }
    for i in 0..n {
        if !chosen.contains(&i) {
            chosen.push(i);
            distinct_tuples(n, len, chosen, f);
            chosen.pop();
        }
    }
}

pub fn strategy_behaviors(s: Scenario, d: usize, max_strategies: u128) -> Result<Vec<Behavior>> {
    enumerate_strategies(s, d, max_strategies)?
        .iter()
        .map(strategy_behavior)
        .collect()
}

/// Maximum of `functional` over all strategies with `d` messages, and the
/// first strategy attaining it.
pub fn lhvd_optimum(
    functional: &BellFunctional,
    d: usize,
    max_strategies: u128,
) -> Result<(Rational, CommStrategy)> {
    let s = functional.scenario();
    check_guard(alice_side_count(s, d), d, max_strategies)?;
    let mut alice_fns: Vec<Vec<usize>> = Vec::new();
    for_each_assignment(s.alice_outputs, s.alice_inputs, |f| {
        alice_fns.push(f.to_vec())
    });
    let messages = message_maps(s.alice_inputs, d);
    let mut best: Option<(Rational, CommStrategy)> = None;
    for alice_out in &alice_fns {
        for (message, _) in &messages {
            // Bob answers each (y, m) separately
            let mut value = rational::zero();
            let mut bob_out = vec![vec![0usize; d]; s.bob_inputs];
            for (y, row) in bob_out.iter_mut().enumerate() {
                for (m, slot) in row.iter_mut().enumerate() {
                    let mut top: Option<Rational> = None;
                    for b in 0..s.bob_outputs {
                        let mut score = rational::zero();
                        for x in (0..s.alice_inputs).filter(|&x| message[x] == m) {
                            let c = functional.coefficient(x, y, alice_out[x], b);
                            if !c.is_zero() {
                                score += c;
                            }
                        }
                        if top.as_ref().is_none_or(|t| score > *t) {
                            top = Some(score);
                            *slot = b;
                        }
                    }
                    value += top.expect("at least two outputs");
                }
            }
            if best.as_ref().is_none_or(|(v, _)| value > *v) {
                let strategy = CommStrategy {
                    scenario: s,
                    d,
                    alice_out: alice_out.clone(),
                    message: message.clone(),
                    bob_out,
                };
                best = Some((value, strategy));
            }
        }
    }
    Ok(best.expect("strategy set is nonempty"))
}

pub fn lhvd_value(functional: &BellFunctional, d: usize, max_strategies: u128) -> Result<Rational> {
    Ok(lhvd_optimum(functional, d, max_strategies)?.0)
}

fn check_m(m: usize) -> Result<Scenario> {
    if m < 2 {
        return Err(Error::InvalidSpec(format!("need m >= 2, got {m}")));
    }
    Scenario::new(m, m, 2, 2)
}

/// The `(m, m, 2, 2)` box with `a = b` everywhere except `a != b` on the
/// diagonal inputs `x = y >= 1`, each allowed pair with probability `1/2`.
pub fn diagonal_box(m: usize) -> Result<Behavior> {
    let s = check_m(m)?;
    let mut table = vec![rational::zero(); s.table_len()];
    for x in 0..m {
        for y in 0..m {
            let flip = usize::from(x == y && x >= 1);
            for a in 0..2 {
                table[s.index(x, y, a, a ^ flip)] = rational::frac(1, 2);
            }
        }
    }
    Behavior::new(s, table)
}

/// `4 p - 1` for `p` the diagonal box: `+1` on its support, `-1` elsewhere.
pub fn build_f(m: usize) -> Result<BellFunctional> {
    let p = diagonal_box(m)?;
    let four = rational::int(4);
    let coefficients = p
        .table()
        .iter()
        .map(|v| &four * v - rational::one())
        .collect();
    BellFunctional::new(p.scenario(), coefficients)
}

/// `m^2 - 2 (m - d)` for `1 <= d <= m`.
pub fn f_bound(m: usize, d: usize) -> Option<i64> {
    (1..=m)
        .contains(&d)
        .then(|| (m * m) as i64 - 2 * (m - d) as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDit {
    /// Smallest alphabet size that simulates the behavior, if within the cap.
    pub d: Option<usize>,
    /// Separating functional against the largest alphabet that fails.
    pub witness: Option<(usize, MembershipResult)>,
}

pub fn min_dit(behavior: &Behavior, d_max: usize, max_strategies: u128) -> Result<MinDit> {
    behavior.ensure_valid()?;
    let s = behavior.scenario();
    let mut witness = None;
    for d in 1..=d_max {
        let vertices = strategy_behaviors(s, d, max_strategies)?;
        let result = membership(behavior, &vertices)?;
        if result.is_inside() {
            return Ok(MinDit {
                d: Some(d),
                witness,
            });
        }
        witness = Some((d, result));
    }
    Ok(MinDit { d: None, witness })
}

pub fn comm_visibility(behavior: &Behavior, d: usize, max_strategies: u128) -> Result<Rational> {
    behavior.ensure_valid()?;
    let vertices = strategy_behaviors(behavior.scenario(), d, max_strategies)?;
    critical_visibility(behavior, &vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxgen::{local_deterministic_boxes, pr_box};
    use crate::rational::{frac, int};

    #[test]
    fn one_message_is_local() {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        let mut strategies = strategy_behaviors(s, 1, 1000).unwrap();
        strategies.sort();
        let mut local = local_deterministic_boxes(s, 1000).unwrap();
        local.sort();
        assert_eq!(strategies, local);
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let s = Scenario::new(3, 3, 2, 2).unwrap();
        let all = strategy_behaviors(s, 2, 1_000_000).unwrap();
        let unique: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
        // 8 Alice maps x (8 one-message + 3 * 8 * 7 two-message Bob tables)
        assert_eq!(all.len(), 8 * (8 + 3 * 56));
    }

    #[test]
    fn f_values() {
        for m in 2..=4 {
            let f = build_f(m).unwrap();
            let p = diagonal_box(m).unwrap();
            assert_eq!(f.evaluate(&p).unwrap(), int((m * m) as i64));
        }
        let f2 = build_f(2).unwrap();
        assert_eq!(lhvd_value(&f2, 1, 1000).unwrap(), int(2));
        let f3 = build_f(3).unwrap();
        assert_eq!(lhvd_value(&f3, 2, 1_000_000).unwrap(), int(7));
    }

    #[test]
    fn pr_needs_one_bit() {
        let r = min_dit(&pr_box(), 3, 1_000_000).unwrap();
        assert_eq!(r.d, Some(2));
        assert_eq!(comm_visibility(&pr_box(), 1, 1000).unwrap(), frac(1, 2));
    }

    #[test]
    fn guard_trips() {
        let s = Scenario::new(3, 3, 2, 2).unwrap();
        assert!(matches!(
            enumerate_strategies(s, 2, 10),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
