//! Local orthogonality: exclusivity graphs of independent copies of a
//! behavior and weighted clique search.
//!
//! A joint event of `k` copies lists `(a, b, x, y)` per copy. Two joint
//! events are locally orthogonal when, in some copy, one party has the same
//! input in both but different outputs. The probabilities of pairwise
//! orthogonal events sum to at most one for any behavior obeying the
//! principle; a clique of total weight above one is a violation.

mod clique;
pub mod witnesses;

use std::fmt;

use num_traits::Zero;

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::scenario::Scenario;

pub use clique::{
    find_violating_clique, find_violating_clique_with_limit, max_weight_clique, CliqueOutcome,
    DEFAULT_MAX_CLIQUE_NODES,
};

pub const DEFAULT_MAX_GRAPH_VERTICES: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CopyEvent {
    pub a: usize,
    pub b: usize,
    pub x: usize,
    pub y: usize,
}

/// Outcomes and inputs of `k` independent copies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointEvent {
    pub copies: Vec<CopyEvent>,
}

impl JointEvent {
    pub fn k(&self) -> usize {
        self.copies.len()
    }

    pub fn is_orthogonal_to(&self, other: &JointEvent) -> bool {
        self.copies
            .iter()
            .zip(&other.copies)
            .any(|(e, f)| (e.x == f.x && e.a != f.a) || (e.y == f.y && e.b != f.b))
    }

    /// Product of the single-copy probabilities.
    pub fn weight(&self, behavior: &Behavior) -> Rational {
        self.copies
            .iter()
            .map(|e| behavior.get(e.x, e.y, e.a, e.b).clone())
            .product()
    }
}

/// Digits `a1 b1 a2 b2 ... | x1 y1 x2 y2 ...`.
impl fmt::Display for JointEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.copies {
            write!(f, "{}{}", e.a, e.b)?;
        }
        write!(f, "|")?;
        for e in &self.copies {
            write!(f, "{}{}", e.x, e.y)?;
        }
        Ok(())
    }
}

pub fn parse_event(text: &str, s: Scenario, k: usize) -> Result<JointEvent> {
    let bad = |m: String| Error::Parse(format!("event '{text}': {m}"));
    let (outs, ins) = text
        .trim()
        .split_once('|')
        .ok_or_else(|| bad("missing '|' separator".into()))?;
    let digits = |part: &str| -> Result<Vec<usize>> {
        part.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| bad(format!("'{c}' is not a digit")))
            })
            .collect()
    };
    let outs = digits(outs)?;
    let ins = digits(ins)?;
    if outs.len() != 2 * k || ins.len() != 2 * k {
        return Err(bad(format!("expected {} digits on each side", 2 * k)));
    }
    let copies = (0..k)
        .map(|c| {
            let e = CopyEvent {
                a: outs[2 * c],
                b: outs[2 * c + 1],
                x: ins[2 * c],
                y: ins[2 * c + 1],
            };
            if e.a >= s.alice_outputs
                || e.b >= s.bob_outputs
                || e.x >= s.alice_inputs
                || e.y >= s.bob_inputs
            {
                return Err(bad(format!("copy {} is out of range for {s}", c + 1)));
            }
            Ok(e)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JointEvent { copies })
}

/// Joint events of positive weight and their orthogonality relation.
#[derive(Clone, Debug)]
pub struct ExclusivityGraph {
    scenario: Scenario,
    k: usize,
    events: Vec<JointEvent>,
    weights: Vec<Rational>,
    adjacency: Vec<Vec<u64>>,
}

impl ExclusivityGraph {
    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[JointEvent] {
        &self.events
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn neighbors(&self, i: usize) -> &[u64] {
        &self.adjacency[i]
    }

    /// Position of `event` among the vertices, if it has positive weight.
    pub fn position(&self, event: &JointEvent) -> Option<usize> {
        self.events.binary_search(event).ok()
    }
}

/// Vertices are sorted by event, i.e. by copy-wise `(a, b, x, y)`.
pub fn build_exclusivity_graph(
    behavior: &Behavior,
    k: usize,
    max_vertices: usize,
) -> Result<ExclusivityGraph> {
    behavior.ensure_valid()?;
    if k == 0 {
        return Err(Error::InvalidSpec("copy count must be at least 1".into()));
    }
    let s = behavior.scenario();
    let mut single: Vec<(CopyEvent, Rational)> = Vec::new();
    for a in 0..s.alice_outputs {
        for b in 0..s.bob_outputs {
            for x in 0..s.alice_inputs {
                for y in 0..s.bob_inputs {
                    let p = behavior.get(x, y, a, b);
                    if !p.is_zero() {
                        single.push((CopyEvent { a, b, x, y }, p.clone()));
                    }
                }
            }
        }
    }
    let count = (single.len() as u128)
        .checked_pow(k as u32)
        .unwrap_or(u128::MAX);
    if count > max_vertices as u128 {
        return Err(Error::GuardExceeded {
            what: "exclusivity graph vertices",
            limit: max_vertices,
        });
    }
    let mut events = vec![(Vec::new(), rational::one())];
    for _ in 0..k {
        events = events
            .into_iter()
            .flat_map(|(prefix, w): (Vec<CopyEvent>, Rational)| {
                single.iter().map(move |(e, p)| {
                    let mut copies = prefix.clone();
                    copies.push(*e);
                    (copies, &w * p)
                })
            })
            .collect();
    }
    events.sort();
    let (events, weights): (Vec<JointEvent>, Vec<Rational>) = events
        .into_iter()
        .map(|(copies, w)| (JointEvent { copies }, w))
        .unzip();
    let n = events.len();
    let words = n.div_ceil(64);
    let mut adjacency = vec![vec![0u64; words]; n];
    for i in 0..n {
        for j in i + 1..n {
            if events[i].is_orthogonal_to(&events[j]) {
                adjacency[i][j / 64] |= 1 << (j % 64);
                adjacency[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    Ok(ExclusivityGraph {
        scenario: s,
        k,
        events,
        weights,
        adjacency,
    })
}

/// Pairwise-orthogonal events with their total weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueWitness {
    pub events: Vec<JointEvent>,
    pub weights: Vec<Rational>,
    pub total_weight: Rational,
}

impl CliqueWitness {
    pub fn is_violation(&self) -> bool {
        self.total_weight > rational::one()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

pub fn verify_clique(graph: &ExclusivityGraph, events: &[JointEvent]) -> Result<CliqueWitness> {
    let mut positions = Vec::with_capacity(events.len());
    for e in events {
        let p = graph.position(e).ok_or_else(|| {
            Error::InvalidSpec(format!(
                "event {e} is not a vertex (zero weight or wrong shape)"
            ))
        })?;
        positions.push(p);
    }
    for (i, &p) in positions.iter().enumerate() {
        for (j, &q) in positions.iter().enumerate().skip(i + 1) {
            if !graph.adjacent(p, q) {
                return Err(Error::NotAClique(
                    events[i].to_string(),
                    events[j].to_string(),
                ));
            }
        }
    }
    let weights: Vec<Rational> = positions
        .iter()
        .map(|&p| graph.weights[p].clone())
        .collect();
    Ok(CliqueWitness {
        events: events.to_vec(),
        total_weight: rational::sum(&weights),
        weights,
    })
}

/// Counts of clique events with weight `1/4`, `1/16` and `1/8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionProfile {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl ConditionProfile {
    /// `4x + y + 2z > 16`, i.e. `x/4 + y/16 + z/8 > 1`.
    pub fn violates(&self) -> bool {
        4 * self.x + self.y + 2 * self.z > 16
    }

    pub fn total_weight(&self) -> Rational {
        rational::frac(self.x as i64, 4)
            + rational::frac(self.y as i64, 16)
            + rational::frac(self.z as i64, 8)
    }
}

pub fn clique_condition_profile(
    graph: &ExclusivityGraph,
    clique: &CliqueWitness,
) -> Result<ConditionProfile> {
    let checked = verify_clique(graph, &clique.events)?;
    let mut profile = ConditionProfile { x: 0, y: 0, z: 0 };
    for (e, w) in checked.events.iter().zip(&checked.weights) {
        if *w == rational::frac(1, 4) {
            profile.x += 1;
        } else if *w == rational::frac(1, 16) {
            profile.y += 1;
        } else if *w == rational::frac(1, 8) {
            profile.z += 1;
        } else {
            return Err(Error::InvalidSpec(format!(
                "event {e} has weight {}, outside 1/4, 1/16, 1/8",
                rational::format(w)
            )));
        }
    }
    Ok(profile)
}
