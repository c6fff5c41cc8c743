//! Convex decomposition into vertices by repeated line search.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::extremality::{is_extremal, perturbation_basis, step_lengths};

pub const DEFAULT_MAX_DECOMPOSITION_NODES: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: Vec<(Rational, Behavior)>,
}

impl Decomposition {
    /// Weights positive and summing to one, every vertex extremal, and the
    /// weighted sum equal to `behavior`.
    pub fn verify(&self, behavior: &Behavior) -> Result<bool> {
        if self.terms.is_empty()
            || self.terms.iter().any(|(w, _)| !w.is_positive())
            || rational::sum(self.terms.iter().map(|(w, _)| w)) != rational::one()
        {
            return Ok(false);
        }
        for (_, v) in &self.terms {
            if !is_extremal(v)? {
                return Ok(false);
            }
        }
        let refs: Vec<(Rational, &Behavior)> =
            self.terms.iter().map(|(w, v)| (w.clone(), v)).collect();
        Ok(&Behavior::combine(&refs)? == behavior)
    }
}

/// Follows kernel directions one way until a vertex is reached. The result
/// lies on the minimal face of `b`.
fn descend(b: &Behavior) -> Result<Behavior> {
    let mut current = b.clone();
    loop {
        let basis = perturbation_basis(&current)?;
        let Some(v) = basis.first() else {
            return Ok(current);
        };
        let (alpha, _) =
            step_lengths(&current, v).expect("kernel directions stay feasible in both senses");
        current = current.shifted(v, &alpha);
    }
}

struct Search {
    nodes: usize,
    max_nodes: usize,
}

impl Search {
    /// Line search along `v = w - b` for a vertex `w` of the minimal face of
    /// `b`: the `+v` end is `w` itself, the `-v` end has strictly more zeros
    /// and is decomposed in turn.
    fn run(&mut self, b: &Behavior) -> Result<Vec<(Rational, Behavior)>> {
        let mut terms = Vec::new();
        let mut scale = rational::one();
        let mut current = b.clone();
        loop {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::GuardExceeded {
                    what: "decomposition nodes",
                    limit: self.max_nodes,
                });
            }
            let vertex = descend(&current)?;
            if vertex == current {
                terms.push((scale, current));
                return Ok(merge(terms));
            }
            let v: Vec<Rational> = vertex
                .table()
                .iter()
                .zip(current.table())
                .map(|(w, p)| w - p)
                .collect();
            let (alpha, beta) =
                step_lengths(&current, &v).expect("face directions stay feasible in both senses");
            debug_assert!(alpha == rational::one());
            let total = &alpha + &beta;
            terms.push((&scale * &beta / &total, vertex));
            scale = &scale * &alpha / &total;
            current = current.shifted(&v, &(-beta));
        }
    }
}

/// Sums weights of repeated vertices, keeping first-appearance order.
fn merge(terms: Vec<(Rational, Behavior)>) -> Vec<(Rational, Behavior)> {
    let mut out: Vec<(Rational, Behavior)> = Vec::new();
    let mut index: HashMap<Behavior, usize> = HashMap::new();
    for (w, v) in terms {
        match index.get(&v) {
            Some(&i) => out[i].0 += w,
            None => {
                index.insert(v.clone(), out.len());
                out.push((w, v));
            }
        }
    }
    out
}

pub fn decompose_into_vertices(behavior: &Behavior) -> Result<Decomposition> {
    decompose_with_limit(behavior, DEFAULT_MAX_DECOMPOSITION_NODES)
}

pub fn decompose_with_limit(behavior: &Behavior, max_nodes: usize) -> Result<Decomposition> {
    behavior.ensure_valid()?;
    let mut search = Search {
        nodes: 0,
        max_nodes,
    };
    let terms: Vec<(Rational, Behavior)> = search
        .run(behavior)?
        .into_iter()
        .filter(|(w, _)| !w.is_zero())
        .collect();
    let decomposition = Decomposition { terms };
    if !decomposition.verify(behavior)? {
        return Err(Error::InvalidBehavior(
            "decomposition failed its self-check".into(),
        ));
    }
    Ok(decomposition)
}
