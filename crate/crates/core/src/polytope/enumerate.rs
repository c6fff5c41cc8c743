//! Vertex enumeration of the non-signaling polytope.
//!
//! Two strategies share the [`VertexEnumerator`] trait:
//!
//! * `dd` runs double description on the homogenized cone over the polytope
//!   and returns every vertex.
//! * `adjacency` walks the vertex graph one relabeling class at a time. For
//!   each class representative it computes the edge directions (the extreme
//!   rays of its tangent cone, again by double description), steps to the
//!   neighbor along each edge, and queues classes not seen before. The
//!   vertex graph is connected, so starting from any vertex reaches every
//!   class.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::behavior::Behavior;
use crate::boxgen::deterministic_box;
use crate::error::{Error, Result};
use crate::linalg;
use crate::ns::{self, Normalization};
use crate::rational::{self, Rational};
use crate::relabel::{self, canonical_form_with_limit, DEFAULT_MAX_CANONICAL_BRANCHES};
use crate::scenario::Scenario;

use super::dd::{self, Ray};
use super::extremality::is_extremal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Ceiling on intermediate rays of any double-description run.
    pub max_rays: usize,
    /// Ceiling on the number of classes explored by the adjacency walk.
    pub max_classes: usize,
    /// Ceiling on vertices produced when expanding classes into orbits.
    pub max_vertices: usize,
    pub max_canonical_branches: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rays: dd::DEFAULT_MAX_RAYS,
            max_classes: 100_000,
            max_vertices: 2_000_000,
            max_canonical_branches: DEFAULT_MAX_CANONICAL_BRANCHES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub scenario: Scenario,
    /// Canonical class representatives, sorted.
    pub classes: Vec<Behavior>,
}

impl Enumeration {
    pub fn nonlocal_classes(&self) -> Vec<&Behavior> {
        self.classes
            .iter()
            .filter(|b| !is_deterministic(b))
            .collect()
    }

    pub fn local_classes(&self) -> Vec<&Behavior> {
        self.classes
            .iter()
            .filter(|b| is_deterministic(b))
            .collect()
    }
}

/// A behavior with only zero and one entries.
pub fn is_deterministic(b: &Behavior) -> bool {
    b.table()
        .iter()
        .all(|p| p.is_zero() || *p == rational::one())
}

pub trait VertexEnumerator: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    /// Every class of vertices of the polytope of `s`.
    fn classes(&self, s: Scenario, seeds: &[Behavior], limits: &Limits) -> Result<Enumeration>;
    /// Every vertex of the polytope of `s`, sorted.
    fn vertices(&self, s: Scenario, seeds: &[Behavior], limits: &Limits) -> Result<Vec<Behavior>>;
}

fn check_seeds(s: Scenario, seeds: &[Behavior]) -> Result<()> {
    for seed in seeds {
        if seed.scenario() != s {
            return Err(Error::MixedScenarios(s, seed.scenario()));
        }
        if !is_extremal(seed)? {
            return Err(Error::InvalidBehavior(
                "seed is not a vertex of the polytope".into(),
            ));
        }
    }
    Ok(())
}

fn subspace(s: Scenario, normalization: Normalization) -> Vec<Vec<Rational>> {
    let all: Vec<usize> = (0..s.table_len()).collect();
    let rows = ns::dense_rows(&ns::equality_rows(s, normalization), &all, s.table_len());
    linalg::kernel(&rows, s.table_len())
}

/// Scales a ray of the homogenized cone so that block `(0, 0)` sums to one.
fn ray_to_behavior(s: Scenario, ray: &Ray) -> Result<Behavior> {
    let total: i128 = ray[..s.block_len()].iter().sum();
    let table = ray
        .iter()
        .map(|&v| Rational::new(v.into(), total.into()))
        .collect();
    Behavior::new(s, table)
}

fn canonical(b: &Behavior, limits: &Limits) -> Result<Behavior> {
    Ok(canonical_form_with_limit(b, limits.max_canonical_branches)?.0)
}

fn sorted_classes(s: Scenario, classes: impl IntoIterator<Item = Behavior>) -> Enumeration {
    let classes: BTreeSet<Behavior> = classes.into_iter().collect();
    Enumeration {
        scenario: s,
        classes: classes.into_iter().collect(),
    }
}

fn expand_orbits(classes: &[Behavior], limits: &Limits) -> Result<Vec<Behavior>> {
    let mut all = BTreeSet::new();
    for c in classes {
        for v in relabel::orbit(c, limits.max_vertices)? {
            all.insert(v);
            if all.len() > limits.max_vertices {
                return Err(Error::GuardExceeded {
                    what: "vertices",
                    limit: limits.max_vertices,
                });
            }
        }
    }
    Ok(all.into_iter().collect())
}

pub struct DoubleDescription;

impl VertexEnumerator for DoubleDescription {
    fn name(&self) -> &'static str {
        "dd"
    }

    fn describe(&self) -> &'static str {
        "double description on the homogenized cone; every vertex"
    }

    fn classes(&self, s: Scenario, seeds: &[Behavior], limits: &Limits) -> Result<Enumeration> {
        let vertices = self.vertices(s, seeds, limits)?;
        let mut classes = HashSet::new();
        for v in &vertices {
            classes.insert(canonical(v, limits)?);
        }
        Ok(sorted_classes(s, classes))
    }

    fn vertices(&self, s: Scenario, seeds: &[Behavior], limits: &Limits) -> Result<Vec<Behavior>> {
        check_seeds(s, seeds)?;
        let basis = subspace(s, Normalization::Equal);
        let all: Vec<usize> = (0..s.table_len()).collect();
        let rays = dd::extreme_rays(&basis, &all, limits.max_rays)?;
        let mut vertices = rays
            .iter()
            .map(|r| ray_to_behavior(s, r))
            .collect::<Result<Vec<_>>>()?;
        vertices.sort();
        for seed in seeds {
            if vertices.binary_search(seed).is_err() {
                return Err(Error::InvalidBehavior(
                    "seed vertex missing from the enumeration".into(),
                ));
            }
        }
        Ok(vertices)
    }
}

pub struct AdjacencyDecomposition;

/// Neighbors of vertex `w` along each edge of the polytope.
pub fn vertex_neighbors(w: &Behavior, limits: &Limits) -> Result<Vec<Behavior>> {
    let s = w.scenario();
    let basis = subspace(s, Normalization::Zero);
    let zeros: Vec<usize> = (0..s.table_len())
        .filter(|&i| w.table()[i].is_zero())
        .collect();
    let edges = dd::extreme_rays(&basis, &zeros, limits.max_rays)?;
    edges
        .iter()
        .map(|r| {
            let mut step: Option<Rational> = None;
            for (p, &d) in w.table().iter().zip(r) {
                if d < 0 {
                    let t = p / Rational::from_integer((-d).into());
                    if step.as_ref().is_none_or(|cur| t < *cur) {
                        step = Some(t);
                    }
                }
            }
            let t = step.ok_or_else(|| {
                Error::InvalidBehavior("edge direction without a negative entry".into())
            })?;
            let direction: Vec<Rational> = r
                .iter()
                .map(|&d| Rational::from_integer(d.into()))
                .collect();
            let next = w.shifted(&direction, &t);
            debug_assert!(next.table().iter().all(|p| !p.is_negative()));
            Ok(next)
        })
        .collect()
}

impl VertexEnumerator for AdjacencyDecomposition {
    fn name(&self) -> &'static str {
        "adjacency"
    }

    fn describe(&self) -> &'static str {
        "class-by-class walk of the vertex graph; tangent cones by double description"
    }

    fn classes(&self, s: Scenario, seeds: &[Behavior], limits: &Limits) -> Result<Enumeration> {
        check_seeds(s, seeds)?;
        let start = deterministic_box(s, &vec![0; s.alice_inputs], &vec![0; s.bob_inputs])?;
        let mut seen: HashSet<Behavior> = HashSet::new();
        let mut queue: VecDeque<Behavior> = VecDeque::new();
        for b in seeds.iter().chain(std::iter::once(&start)) {
            let c = canonical(b, limits)?;
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
        while let Some(rep) = queue.pop_front() {
            for next in vertex_neighbors(&rep, limits)? {
                let c = canonical(&next, limits)?;
                if seen.insert(c.clone()) {
                    if seen.len() > limits.max_classes {
                        return Err(Error::GuardExceeded {
                            what: "vertex classes",
                            limit: limits.max_classes,
                        });
                    }
                    queue.push_back(c);
                }
            }
        }
        Ok(sorted_classes(s, seen))
    }

    fn vertices(&self, s: Scenario, seeds: &[Behavior], limits: &Limits) -> Result<Vec<Behavior>> {
        let enumeration = self.classes(s, seeds, limits)?;
        expand_orbits(&enumeration.classes, limits)
    }
}

pub struct EnumeratorRegistry {
    strategies: Vec<Box<dyn VertexEnumerator>>,
}

impl Default for EnumeratorRegistry {
    fn default() -> Self {
        let mut r = EnumeratorRegistry {
            strategies: Vec::new(),
        };
        r.register(Box::new(AdjacencyDecomposition));
        r.register(Box::new(DoubleDescription));
        r
    }
}

impl EnumeratorRegistry {
    /// Adds a strategy, replacing any with the same name.
    pub fn register(&mut self, strategy: Box<dyn VertexEnumerator>) {
        self.strategies.retain(|e| e.name() != strategy.name());
        self.strategies.push(strategy);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|e| e.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn VertexEnumerator> {
        self.strategies
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "vertex enumerator",
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }
}

pub const DEFAULT_ENUMERATOR: &str = "adjacency";

/// Every vertex of the polytope of `s`, sorted.
pub fn enumerate_vertices(s: Scenario, seeds: &[Behavior]) -> Result<Vec<Behavior>> {
    EnumeratorRegistry::default()
        .get(DEFAULT_ENUMERATOR)?
        .vertices(s, seeds, &Limits::default())
}

/// Every vertex class of the polytope of `s`.
pub fn enumerate_vertex_classes(s: Scenario, seeds: &[Behavior]) -> Result<Enumeration> {
    EnumeratorRegistry::default()
        .get(DEFAULT_ENUMERATOR)?
        .classes(s, seeds, &Limits::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree_on_the_simplest_scenario() {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        let registry = EnumeratorRegistry::default();
        let limits = Limits::default();
        let dd = registry
            .get("dd")
            .unwrap()
            .vertices(s, &[], &limits)
            .unwrap();
        let adj = registry
            .get("adjacency")
            .unwrap()
            .vertices(s, &[], &limits)
            .unwrap();
        assert_eq!(dd.len(), 24);
        assert_eq!(dd, adj);
        let classes = registry
            .get("adjacency")
            .unwrap()
            .classes(s, &[], &limits)
            .unwrap();
        assert_eq!(classes.classes.len(), 2);
        assert_eq!(classes.nonlocal_classes().len(), 1);
    }

    #[test]
    fn ray_guard_trips() {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        let limits = Limits {
            max_rays: 5,
            ..Limits::default()
        };
        assert!(matches!(
            DoubleDescription.vertices(s, &[], &limits),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
