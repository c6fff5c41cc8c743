//! Exact maximum-weight clique by branch and bound.
//!
//! Weights are scaled to integers by the common denominator. Bounds come
//! from greedy colorings: a clique takes at most one vertex per color class,
//! so the heaviest member of each class bounds its contribution.
//!
//! The violation search branches in color order and stops at the first
//! clique of weight above one. The maximum search first finds the
//! optimal weight, branching on candidates in color order, then reruns the
//! ordered search with that weight as target, which yields the
//! lexicographically least heaviest clique.

use std::cmp::Reverse;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::{CliqueWitness, ExclusivityGraph};

struct Search<'a> {
    graph: &'a ExclusivityGraph,
    weight: Vec<u128>,
    words: usize,
    best: u128,
    best_set: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn visit(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::GuardExceeded {
                what: "clique search nodes",
                limit: self.max_nodes as usize,
            });
        }
        Ok(())
    }

    fn has_edge(&self, v: usize, u: usize) -> bool {
        self.graph.neighbors(v)[u / 64] >> (u % 64) & 1 == 1
    }

    /// Greedy coloring of `vertices` in the given order. Returns the
    /// vertices regrouped by class and, per position, the sum of class
    /// maxima up to and including that vertex's class.
    fn color_order(&self, vertices: &[usize]) -> (Vec<usize>, Vec<u128>) {
        let mut classes: Vec<(Vec<u64>, Vec<usize>, u128)> = Vec::new();
        for &v in vertices {
            let adj = self.graph.neighbors(v);
            let slot = classes
                .iter()
                .position(|(members, _, _)| (0..self.words).all(|k| members[k] & adj[k] == 0));
            let w = self.weight[v];
            match slot {
                Some(c) => {
                    let (members, list, max) = &mut classes[c];
                    members[v / 64] |= 1 << (v % 64);
                    list.push(v);
                    *max = (*max).max(w);
                }
                None => {
                    let mut members = vec![0u64; self.words];
                    members[v / 64] |= 1 << (v % 64);
                    classes.push((members, vec![v], w));
                }
            }
        }
        let mut order = Vec::with_capacity(vertices.len());
        let mut bounds = Vec::with_capacity(vertices.len());
        let mut total = 0u128;
        for (_, list, max) in classes {
            total += max;
            for v in list {
                order.push(v);
                bounds.push(total);
            }
        }
        (order, bounds)
    }

    /// First pass: maximum weight.
    fn maximize(&mut self, candidates: Vec<usize>, current_weight: u128) -> Result<()> {
        self.visit()?;
        if current_weight > self.best {
            self.best = current_weight;
        }
        let (mut order, bounds) = self.color_order(&candidates);
        while let Some(v) = order.pop() {
            if current_weight + bounds[order.len()] <= self.best {
                return Ok(());
            }
            let next: Vec<usize> = order
                .iter()
                .copied()
                .filter(|&u| self.has_edge(v, u))
                .collect();
            self.maximize(next, current_weight + self.weight[v])?;
        }
        Ok(())
    }

    /// Any clique reaching `target`, branching in color order.
    fn reach(
        &mut self,
        candidates: Vec<usize>,
        current_weight: u128,
        target: u128,
    ) -> Result<bool> {
        self.visit()?;
        if current_weight >= target {
            self.best_set = self.current.clone();
            return Ok(true);
        }
        let (mut order, bounds) = self.color_order(&candidates);
        while let Some(v) = order.pop() {
            if current_weight + bounds[order.len()] < target {
                return Ok(false);
            }
            let next: Vec<usize> = order
                .iter()
                .copied()
                .filter(|&u| self.has_edge(v, u))
                .collect();
            self.current.push(v);
            let found = self.reach(next, current_weight + self.weight[v], target)?;
            self.current.pop();
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Second pass: first clique in lexicographic order reaching `target`.
    fn first_reaching(
        &mut self,
        candidates: &[usize],
        current_weight: u128,
        target: u128,
    ) -> Result<bool> {
        self.visit()?;
        if current_weight >= target {
            self.best_set = self.current.clone();
            return Ok(true);
        }
        let bounds = self.suffix_bounds(candidates);
        for (i, &v) in candidates.iter().enumerate() {
            if current_weight + bounds[i] < target {
                return Ok(false);
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| self.has_edge(v, u))
                .collect();
            self.current.push(v);
            let found = self.first_reaching(&next, current_weight + self.weight[v], target)?;
            self.current.pop();
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `bounds[i]` bounds the weight of any clique inside `candidates[i..]`.
    fn suffix_bounds(&self, candidates: &[usize]) -> Vec<u128> {
        let mut classes: Vec<(Vec<u64>, u128)> = Vec::new();
        let mut total = 0u128;
        let mut bounds = vec![0u128; candidates.len()];
        for (i, &v) in candidates.iter().enumerate().rev() {
            let adj = self.graph.neighbors(v);
            let w = self.weight[v];
            let slot = classes
                .iter()
                .position(|(members, _)| (0..self.words).all(|k| members[k] & adj[k] == 0));
            match slot {
                Some(c) => {
                    let (members, max) = &mut classes[c];
                    members[v / 64] |= 1 << (v % 64);
                    if w > *max {
                        total += w - *max;
                        *max = w;
                    }
                }
                None => {
                    let mut members = vec![0u64; self.words];
                    members[v / 64] |= 1 << (v % 64);
                    classes.push((members, w));
                    total += w;
                }
            }
            bounds[i] = total;
        }
        bounds
    }
}

pub const DEFAULT_MAX_CLIQUE_NODES: u64 = 200_000_000;

fn scaled_weights(graph: &ExclusivityGraph) -> Result<(Vec<u128>, u128)> {
    let den = rational::common_denominator(graph.weights().iter());
    let scale = Rational::from_integer(den.clone());
    let weight: Vec<u128> = graph
        .weights()
        .iter()
        .map(|w| {
            let scaled: BigInt = (w * &scale).to_integer();
            scaled.to_u128().ok_or(Error::Overflow("clique weights"))
        })
        .collect::<Result<_>>()?;
    if weight
        .iter()
        .try_fold(0u128, |acc, &w| acc.checked_add(w))
        .is_none()
    {
        return Err(Error::Overflow("clique weights"));
    }
    let den = den.to_u128().ok_or(Error::Overflow("clique weights"))?;
    Ok((weight, den))
}

fn witness(graph: &ExclusivityGraph, set: &[usize]) -> CliqueWitness {
    let events = set.iter().map(|&i| graph.events()[i].clone()).collect();
    let weights: Vec<Rational> = set.iter().map(|&i| graph.weights()[i].clone()).collect();
    CliqueWitness {
        events,
        total_weight: rational::sum(&weights),
        weights,
    }
}

fn new_search(graph: &ExclusivityGraph, weight: Vec<u128>, max_nodes: u64) -> Search<'_> {
    Search {
        graph,
        weight,
        words: graph.len().div_ceil(64),
        best: 0,
        best_set: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        max_nodes,
    }
}

fn degree(graph: &ExclusivityGraph, v: usize) -> u32 {
    graph.neighbors(v).iter().map(|w| w.count_ones()).sum()
}

/// Heavier, then higher-degree vertices first.
fn heavy_first(graph: &ExclusivityGraph, weight: &[u128]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..graph.len()).collect();
    order.sort_by_key(|&v| (Reverse(weight[v]), Reverse(degree(graph, v)), v));
    order
}

/// Initial orders tried by the violation search. Branching pops from the
/// back of each color class sequence, so these orders differ in which
/// vertices are tried first.
fn violation_orders(graph: &ExclusivityGraph, weight: &[u128]) -> Vec<Vec<usize>> {
    let base: Vec<usize> = (0..graph.len()).collect();
    let mut light = base.clone();
    light.sort_by_key(|&v| (weight[v], degree(graph, v), v));
    let mut dense = base.clone();
    dense.sort_by_key(|&v| (Reverse(degree(graph, v)), v));
    let mut sparse = base;
    sparse.sort_by_key(|&v| (Reverse(weight[v]), degree(graph, v), v));
    vec![light, dense, sparse]
}

/// The lexicographically least clique of maximum weight.
pub fn max_weight_clique(graph: &ExclusivityGraph, max_nodes: u64) -> Result<CliqueWitness> {
    let n = graph.len();
    let (weight, _) = scaled_weights(graph)?;
    let mut search = new_search(graph, weight, max_nodes);
    let order = heavy_first(graph, &search.weight);
    search.maximize(order, 0)?;
    let target = search.best;
    if target > 0 {
        let all: Vec<usize> = (0..n).collect();
        search.first_reaching(&all, 0, target)?;
    }
    Ok(witness(graph, &search.best_set))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueOutcome {
    /// A clique of weight above one, events in vertex order.
    Violation(CliqueWitness),
    /// No clique exceeds weight one; the heaviest clique.
    NoViolation { maximum: CliqueWitness },
}

impl CliqueOutcome {
    pub fn violation(&self) -> Option<&CliqueWitness> {
        match self {
            CliqueOutcome::Violation(w) => Some(w),
            CliqueOutcome::NoViolation { .. } => None,
        }
    }
}

pub fn find_violating_clique(graph: &ExclusivityGraph) -> Result<CliqueOutcome> {
    find_violating_clique_with_limit(graph, DEFAULT_MAX_CLIQUE_NODES)
}

pub fn find_violating_clique_with_limit(
    graph: &ExclusivityGraph,
    max_nodes: u64,
) -> Result<CliqueOutcome> {
    let (weight, den) = scaled_weights(graph)?;
    let orders = violation_orders(graph, &weight);
    let mut search = new_search(graph, weight, max_nodes);
    // rounds over the orders with doubling per-order budgets
    let mut budget: u64 = 100_000;
    loop {
        for order in &orders {
            let spent = search.nodes;
            search.max_nodes = max_nodes.min(spent.saturating_add(budget));
            match search.reach(order.clone(), 0, den + 1) {
                Ok(true) => {
                    let mut set = search.best_set.clone();
                    set.sort_unstable();
                    return Ok(CliqueOutcome::Violation(witness(graph, &set)));
                }
                Ok(false) => {
                    return Ok(CliqueOutcome::NoViolation {
                        maximum: max_weight_clique(graph, max_nodes)?,
                    });
                }
                Err(Error::GuardExceeded { .. }) if search.nodes < max_nodes => {
                    search.current.clear();
                }
                Err(e) => {
                    return Err(match e {
                        Error::GuardExceeded { what, .. } => Error::GuardExceeded {
                            what,
                            limit: max_nodes as usize,
                        },
                        e => e,
                    })
                }
            }
        }
        budget = budget.saturating_mul(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxgen::{box2, pr_box};
    use crate::lo::{build_exclusivity_graph, verify_clique};

    #[test]
    fn single_copy_maximum_is_one() {
        let g = build_exclusivity_graph(&pr_box(), 1, 100).unwrap();
        let m = max_weight_clique(&g, 1_000_000).unwrap();
        assert_eq!(m.total_weight, rational::one());
        let r = find_violating_clique(&g).unwrap();
        assert!(r.violation().is_none());
    }

    #[test]
    fn box2_two_copies_violate() {
        let g = build_exclusivity_graph(&box2(), 2, 10_000).unwrap();
        let r = find_violating_clique(&g).unwrap();
        let w = r.violation().expect("violation");
        assert!(w.is_violation());
        let checked = verify_clique(&g, &w.events).unwrap();
        assert_eq!(checked.total_weight, w.total_weight);
    }

    #[test]
    fn node_guard_trips() {
        let g = build_exclusivity_graph(&box2(), 2, 10_000).unwrap();
        assert!(matches!(
            find_violating_clique_with_limit(&g, 3),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
