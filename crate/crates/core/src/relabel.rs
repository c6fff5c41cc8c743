//! The relabeling group of a Bell scenario and classification of behaviors
//! up to its action.
//!
//! A relabeling `r` acts by
//! `(r.p)(a,b|x,y) = p'(pi_x(a), rho_y(b) | sigma(x), tau(y))`, where `p'` is
//! `p` with the parties exchanged when `swap_parties` is set and `p`
//! otherwise. Output permutations are indexed by the *new* input label.

use std::collections::HashMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::scenario::Scenario;

pub type Permutation = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relabeling {
    pub swap_parties: bool,
    pub alice_input_perm: Permutation,
    pub bob_input_perm: Permutation,
    pub alice_output_perms: Vec<Permutation>,
    pub bob_output_perms: Vec<Permutation>,
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter()
        .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

fn invert(p: &[usize]) -> Permutation {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `first ∘ second`, i.e. `i -> first[second[i]]`.
fn after(first: &[usize], second: &[usize]) -> Permutation {
    second.iter().map(|&i| first[i]).collect()
}

fn identity(n: usize) -> Permutation {
    (0..n).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current = identity(n);
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

impl Relabeling {
    pub fn identity(s: Scenario) -> Self {
        Relabeling {
            swap_parties: false,
            alice_input_perm: identity(s.alice_inputs),
            bob_input_perm: identity(s.bob_inputs),
            alice_output_perms: vec![identity(s.alice_outputs); s.alice_inputs],
            bob_output_perms: vec![identity(s.bob_outputs); s.bob_inputs],
        }
    }

    /// Flips the outputs of one party for one input.
    pub fn output_flip(s: Scenario, alice: bool, input: usize, perm: Permutation) -> Self {
        let mut r = Relabeling::identity(s);
        if alice {
            r.alice_output_perms[input] = perm;
        } else {
            r.bob_output_perms[input] = perm;
        }
        r
    }

    pub fn check(&self, s: Scenario) -> Result<()> {
        if self.swap_parties && !s.is_party_symmetric() {
            return Err(Error::IllegalRelabeling(format!(
                "party swap requires X = Y and A = B, scenario is {s}"
            )));
        }
        let ok = is_permutation(&self.alice_input_perm, s.alice_inputs)
            && is_permutation(&self.bob_input_perm, s.bob_inputs)
            && self.alice_output_perms.len() == s.alice_inputs
            && self.bob_output_perms.len() == s.bob_inputs
            && self
                .alice_output_perms
                .iter()
                .all(|p| is_permutation(p, s.alice_outputs))
            && self
                .bob_output_perms
                .iter()
                .all(|p| is_permutation(p, s.bob_outputs));
        if ok {
            Ok(())
        } else {
            Err(Error::IllegalRelabeling(format!(
                "permutation shapes do not match scenario {s}"
            )))
        }
    }

    /// The relabeling acting as `self` followed by `then`:
    /// `apply(apply(p, self), then) == apply(p, self.compose(then))`.
    pub fn compose(&self, then: &Relabeling) -> Relabeling {
        if then.swap_parties {
            Relabeling {
                swap_parties: !self.swap_parties,
                alice_input_perm: after(&self.bob_input_perm, &then.alice_input_perm),
                bob_input_perm: after(&self.alice_input_perm, &then.bob_input_perm),
                alice_output_perms: (0..then.alice_input_perm.len())
                    .map(|x| {
                        after(
                            &self.bob_output_perms[then.alice_input_perm[x]],
                            &then.alice_output_perms[x],
                        )
                    })
                    .collect(),
                bob_output_perms: (0..then.bob_input_perm.len())
                    .map(|y| {
                        after(
                            &self.alice_output_perms[then.bob_input_perm[y]],
                            &then.bob_output_perms[y],
                        )
                    })
                    .collect(),
            }
        } else {
            Relabeling {
                swap_parties: self.swap_parties,
                alice_input_perm: after(&self.alice_input_perm, &then.alice_input_perm),
                bob_input_perm: after(&self.bob_input_perm, &then.bob_input_perm),
                alice_output_perms: (0..then.alice_input_perm.len())
                    .map(|x| {
                        after(
                            &self.alice_output_perms[then.alice_input_perm[x]],
                            &then.alice_output_perms[x],
                        )
                    })
                    .collect(),
                bob_output_perms: (0..then.bob_input_perm.len())
                    .map(|y| {
                        after(
                            &self.bob_output_perms[then.bob_input_perm[y]],
                            &then.bob_output_perms[y],
                        )
                    })
                    .collect(),
            }
        }
    }

    pub fn inverse(&self) -> Relabeling {
        if self.swap_parties {
            let sigma_inv = invert(&self.alice_input_perm);
            let tau_inv = invert(&self.bob_input_perm);
            Relabeling {
                swap_parties: true,
                alice_input_perm: tau_inv.clone(),
                bob_input_perm: sigma_inv.clone(),
                alice_output_perms: (0..tau_inv.len())
                    .map(|x| invert(&self.bob_output_perms[tau_inv[x]]))
                    .collect(),
                bob_output_perms: (0..sigma_inv.len())
                    .map(|y| invert(&self.alice_output_perms[sigma_inv[y]]))
                    .collect(),
            }
        } else {
            let sigma_inv = invert(&self.alice_input_perm);
            let tau_inv = invert(&self.bob_input_perm);
            Relabeling {
                swap_parties: false,
                alice_output_perms: (0..sigma_inv.len())
                    .map(|x| invert(&self.alice_output_perms[sigma_inv[x]]))
                    .collect(),
                bob_output_perms: (0..tau_inv.len())
                    .map(|y| invert(&self.bob_output_perms[tau_inv[y]]))
                    .collect(),
                alice_input_perm: sigma_inv,
                bob_input_perm: tau_inv,
            }
        }
    }

    /// Uniformly random group element (party swap only when legal).
    pub fn random<R: Rng + ?Sized>(s: Scenario, rng: &mut R) -> Relabeling {
        let mut perm = |n: usize| {
            let mut p = identity(n);
            p.shuffle(rng);
            p
        };
        let alice_input_perm = perm(s.alice_inputs);
        let bob_input_perm = perm(s.bob_inputs);
        let alice_output_perms = (0..s.alice_inputs).map(|_| perm(s.alice_outputs)).collect();
        let bob_output_perms = (0..s.bob_inputs).map(|_| perm(s.bob_outputs)).collect();
        Relabeling {
            swap_parties: s.is_party_symmetric() && rng.gen_bool(0.5),
            alice_input_perm,
            bob_input_perm,
            alice_output_perms,
            bob_output_perms,
        }
    }

    /// Index map of the action: `apply(p)[i] = p[source[i]]`.
    fn source_map(&self, s: Scenario) -> Vec<usize> {
        let (nx, ny, na, nb) = s.tuple();
        let mut source = Vec::with_capacity(s.table_len());
        for x in 0..nx {
            for y in 0..ny {
                for a in 0..na {
                    for b in 0..nb {
                        let (sx, sy) = (self.alice_input_perm[x], self.bob_input_perm[y]);
                        let (sa, sb) = (self.alice_output_perms[x][a], self.bob_output_perms[y][b]);
                        // p'(sa,sb|sx,sy), with p' the party-swapped table if requested
                        source.push(if self.swap_parties {
                            s.index(sy, sx, sb, sa)
                        } else {
                            s.index(sx, sy, sa, sb)
                        });
                    }
                }
            }
        }
        source
    }
}

pub fn apply_relabeling(behavior: &Behavior, r: &Relabeling) -> Result<Behavior> {
    let s = behavior.scenario();
    r.check(s)?;
    let table = r
        .source_map(s)
        .into_iter()
        .map(|i| behavior.table()[i].clone())
        .collect();
    Behavior::new(s, table)
}

/// Order of the relabeling group of `s`.
pub fn group_order(s: Scenario) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    let (nx, ny, na, nb) = s.tuple();
    let swap = if s.is_party_symmetric() { 2 } else { 1 };
    swap * fact(nx) * fact(ny) * fact(na).pow(nx as u32) * fact(nb).pow(ny as u32)
}

/// Encodes a table as small integers preserving the order of values.
fn value_ranks(behavior: &Behavior) -> (Vec<u32>, Vec<num_rational::BigRational>) {
    let mut distinct: Vec<_> = behavior.table().to_vec();
    distinct.sort();
    distinct.dedup();
    let ranks = behavior
        .table()
        .iter()
        .map(|v| distinct.binary_search(v).unwrap() as u32)
        .collect();
    (ranks, distinct)
}

/// Default ceiling on the number of partial relabelings kept alive by the
/// canonical-form search.
pub const DEFAULT_MAX_CANONICAL_BRANCHES: usize = 2_000_000;

#[derive(Clone)]
struct Partial {
    alice_input: Vec<Option<usize>>,
    bob_input: Vec<Option<usize>>,
    alice_out: Vec<Option<usize>>, // index into the output-permutation list
    bob_out: Vec<Option<usize>>,
    alice_used: u32,
    bob_used: u32,
}

/// Lexicographically minimal table over the orbit of `behavior`, together
/// with one relabeling reaching it.
pub fn canonical_form_with_limit(
    behavior: &Behavior,
    max_branches: usize,
) -> Result<(Behavior, Relabeling)> {
    let s = behavior.scenario();
    let (ranks, values) = value_ranks(behavior);
    let mut best: Option<(Vec<u32>, Relabeling)> = None;
    let swaps: &[bool] = if s.is_party_symmetric() {
        &[false, true]
    } else {
        &[false]
    };
    for &swap in swaps {
        let source = if swap {
            let mut r = Relabeling::identity(s);
            r.swap_parties = true;
            r.source_map(s).into_iter().map(|i| ranks[i]).collect()
        } else {
            ranks.clone()
        };
        let (table, mut relabeling) = minimize_without_swap(s, &source, max_branches)?;
        relabeling.swap_parties = swap;
        if best.as_ref().is_none_or(|(t, _)| table < *t) {
            best = Some((table, relabeling));
        }
    }
    let (table, relabeling) = best.unwrap();
    let table = table
        .into_iter()
        .map(|r| values[r as usize].clone())
        .collect();
    Ok((Behavior::new(s, table)?, relabeling))
}

fn minimize_without_swap(
    s: Scenario,
    ranks: &[u32],
    max_branches: usize,
) -> Result<(Vec<u32>, Relabeling)> {
    let (nx, ny, na, nb) = s.tuple();
    let alice_perms = all_permutations(na);
    let bob_perms = all_permutations(nb);
    let mut survivors = vec![Partial {
        alice_input: vec![None; nx],
        bob_input: vec![None; ny],
        alice_out: vec![None; nx],
        bob_out: vec![None; ny],
        alice_used: 0,
        bob_used: 0,
    }];
    let mut prefix = Vec::with_capacity(s.table_len());
    let mut block = vec![0u32; na * nb];
    for x in 0..nx {
        for y in 0..ny {
            let mut best_block: Option<Vec<u32>> = None;
            let mut next: Vec<Partial> = Vec::new();
            for partial in &survivors {
                let alice_choices: Vec<(usize, usize)> = match partial.alice_input[x] {
                    Some(sx) => vec![(sx, partial.alice_out[x].unwrap())],
                    None => (0..nx)
                        .filter(|i| partial.alice_used & (1 << i) == 0)
                        .flat_map(|i| (0..alice_perms.len()).map(move |p| (i, p)))
                        .collect(),
                };
                let bob_choices: Vec<(usize, usize)> = match partial.bob_input[y] {
                    Some(sy) => vec![(sy, partial.bob_out[y].unwrap())],
                    None => (0..ny)
                        .filter(|i| partial.bob_used & (1 << i) == 0)
                        .flat_map(|i| (0..bob_perms.len()).map(move |p| (i, p)))
                        .collect(),
                };
                for &(sx, pa) in &alice_choices {
                    for &(sy, pb) in &bob_choices {
                        let pi = &alice_perms[pa];
                        let rho = &bob_perms[pb];
                        for a in 0..na {
                            for b in 0..nb {
                                block[a * nb + b] = ranks[s.index(sx, sy, pi[a], rho[b])];
                            }
                        }
                        let keep = match &best_block {
                            None => true,
                            Some(bb) => match block.as_slice().cmp(bb.as_slice()) {
                                std::cmp::Ordering::Less => {
                                    next.clear();
                                    true
                                }
                                std::cmp::Ordering::Equal => true,
                                std::cmp::Ordering::Greater => false,
                            },
                        };
                        if !keep {
                            continue;
                        }
                        if best_block.as_deref() != Some(block.as_slice()) {
                            best_block = Some(block.clone());
                        }
                        let mut p = partial.clone();
                        if p.alice_input[x].is_none() {
                            p.alice_input[x] = Some(sx);
                            p.alice_out[x] = Some(pa);
                            p.alice_used |= 1 << sx;
                        }
                        if p.bob_input[y].is_none() {
                            p.bob_input[y] = Some(sy);
                            p.bob_out[y] = Some(pb);
                            p.bob_used |= 1 << sy;
                        }
                        next.push(p);
                        if next.len() > max_branches {
                            return Err(Error::GuardExceeded {
                                what: "canonical-form branches",
                                limit: max_branches,
                            });
                        }
                    }
                }
            }
            prefix.extend(best_block.unwrap());
            survivors = next;
        }
    }
    let winner = &survivors[0];
    let relabeling = Relabeling {
        swap_parties: false,
        alice_input_perm: winner.alice_input.iter().map(|v| v.unwrap()).collect(),
        bob_input_perm: winner.bob_input.iter().map(|v| v.unwrap()).collect(),
        alice_output_perms: winner
            .alice_out
            .iter()
            .map(|v| alice_perms[v.unwrap()].clone())
            .collect(),
        bob_output_perms: winner
            .bob_out
            .iter()
            .map(|v| bob_perms[v.unwrap()].clone())
            .collect(),
    };
    Ok((prefix, relabeling))
}

/// Lexicographically minimal table (flat index order) over the relabeling orbit.
pub fn canonical_form(behavior: &Behavior) -> Result<Behavior> {
    canonical_form_with_limit(behavior, DEFAULT_MAX_CANONICAL_BRANCHES).map(|(b, _)| b)
}

/// One equivalence class of a classified list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehaviorClass {
    pub representative: Behavior,
    /// Number of members of the input list in this class.
    pub orbit_size_in_input: usize,
    /// Indices into the input list.
    pub members: Vec<usize>,
}

/// Partitions `behaviors` by canonical form; classes are listed in order of
/// first appearance.
pub fn classify(behaviors: &[Behavior]) -> Result<Vec<BehaviorClass>> {
    if let Some(first) = behaviors.first() {
        if let Some(other) = behaviors.iter().find(|b| b.scenario() != first.scenario()) {
            return Err(Error::MixedScenarios(first.scenario(), other.scenario()));
        }
    }
    let mut classes: Vec<BehaviorClass> = Vec::new();
    let mut index: HashMap<Behavior, usize> = HashMap::new();
    for (i, b) in behaviors.iter().enumerate() {
        let canonical = canonical_form(b)?;
        let slot = *index.entry(canonical.clone()).or_insert_with(|| {
            classes.push(BehaviorClass {
                representative: canonical,
                orbit_size_in_input: 0,
                members: Vec::new(),
            });
            classes.len() - 1
        });
        classes[slot].orbit_size_in_input += 1;
        classes[slot].members.push(i);
    }
    Ok(classes)
}

/// Every relabeling of `s`, in a fixed order. Only sensible for small groups.
pub fn enumerate_group(s: Scenario, limit: usize) -> Result<Vec<Relabeling>> {
    let order = group_order(s);
    if order > limit as u128 {
        return Err(Error::GuardExceeded {
            what: "relabeling group size",
            limit,
        });
    }
    let alice_perms = all_permutations(s.alice_outputs);
    let bob_perms = all_permutations(s.bob_outputs);
    let product = |k: usize, count: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..count {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..k).map(move |i| {
                        let mut p = prefix.clone();
                        p.push(i);
                        p
                    })
                })
                .collect();
        }
        out
    };
    let alice_out_choices = product(alice_perms.len(), s.alice_inputs);
    let bob_out_choices = product(bob_perms.len(), s.bob_inputs);
    let swaps: &[bool] = if s.is_party_symmetric() {
        &[false, true]
    } else {
        &[false]
    };
    let mut group = Vec::with_capacity(order as usize);
    for &swap in swaps {
        for sigma in all_permutations(s.alice_inputs) {
            for tau in all_permutations(s.bob_inputs) {
                for ao in &alice_out_choices {
                    for bo in &bob_out_choices {
                        group.push(Relabeling {
                            swap_parties: swap,
                            alice_input_perm: sigma.clone(),
                            bob_input_perm: tau.clone(),
                            alice_output_perms: ao
                                .iter()
                                .map(|&i| alice_perms[i].clone())
                                .collect(),
                            bob_output_perms: bo.iter().map(|&i| bob_perms[i].clone()).collect(),
                        });
                    }
                }
            }
        }
    }
    Ok(group)
}

/// Every distinct image of `behavior` under the relabeling group.
pub fn orbit(behavior: &Behavior, limit: usize) -> Result<Vec<Behavior>> {
    let s = behavior.scenario();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for r in enumerate_group(s, limit)? {
        let image = apply_relabeling(behavior, &r)?;
        if seen.insert(image.clone()) {
            out.push(image);
        }
    }
    Ok(out)
}

/// Number of zero entries, a relabeling invariant used to order classes.
pub fn zero_count(behavior: &Behavior) -> usize {
    behavior.table().iter().filter(|v| v.is_zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pr() -> Behavior {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        Behavior::from_block_rows(
            s,
            2,
            &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 0, 1], &[0, 1, 1, 0]],
        )
        .unwrap()
    }

    fn skewed(s: Scenario) -> Behavior {
        // p(ab|xy) depends on every coordinate, so relabelings are visible.
        let mut t = Vec::new();
        for i in 0..s.table_len() {
            t.push(crate::rational::int(i as i64 + 1));
        }
        Behavior::new(s, t).unwrap()
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = all_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(all_permutations(1), vec![vec![0]]);
    }

    #[test]
    fn identity_acts_trivially() {
        let b = pr();
        let id = Relabeling::identity(b.scenario());
        assert_eq!(apply_relabeling(&b, &id).unwrap(), b);
    }

    #[test]
    fn composition_and_inverse_match_the_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dims in [(2, 2, 2, 2), (3, 3, 2, 2), (2, 3, 3, 2), (3, 3, 3, 3)] {
            let s = Scenario::new(dims.0, dims.1, dims.2, dims.3).unwrap();
            let b = skewed(s);
            for _ in 0..50 {
                let r1 = Relabeling::random(s, &mut rng);
                let r2 = Relabeling::random(s, &mut rng);
                let two_step = apply_relabeling(&apply_relabeling(&b, &r1).unwrap(), &r2).unwrap();
                assert_eq!(apply_relabeling(&b, &r1.compose(&r2)).unwrap(), two_step);
                let back =
                    apply_relabeling(&apply_relabeling(&b, &r1).unwrap(), &r1.inverse()).unwrap();
                assert_eq!(back, b);
                assert_eq!(r1.compose(&r1.inverse()), Relabeling::identity(s));
            }
        }
    }

    #[test]
    fn swap_is_rejected_for_asymmetric_scenarios() {
        let s = Scenario::new(2, 3, 2, 2).unwrap();
        let mut r = Relabeling::identity(s);
        r.swap_parties = true;
        assert!(matches!(
            apply_relabeling(&Behavior::uniform(s), &r),
            Err(Error::IllegalRelabeling(_))
        ));
    }

    #[test]
    fn group_order_matches_enumeration() {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        assert_eq!(group_order(s), 128);
        assert_eq!(enumerate_group(s, 1000).unwrap().len(), 128);
        assert!(enumerate_group(Scenario::new(3, 3, 3, 3).unwrap(), 1000).is_err());
    }

    #[test]
    fn pr_orbit_has_eight_members_and_one_canonical_form() {
        let orbit = orbit(&pr(), 1000).unwrap();
        assert_eq!(orbit.len(), 8);
        let c = canonical_form(&pr()).unwrap();
        for member in &orbit {
            assert_eq!(canonical_form(member).unwrap(), c);
        }
    }

    #[test]
    fn canonical_form_is_the_orbit_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dims in [(2, 2, 2, 2), (2, 2, 2, 3), (2, 3, 2, 2)] {
            let s = Scenario::new(dims.0, dims.1, dims.2, dims.3).unwrap();
            let b = apply_relabeling(&skewed(s), &Relabeling::random(s, &mut rng)).unwrap();
            let brute = orbit(&b, 100_000).unwrap().into_iter().min().unwrap();
            let (canon, r) = canonical_form_with_limit(&b, 1_000_000).unwrap();
            assert_eq!(canon, brute);
            assert_eq!(apply_relabeling(&b, &r).unwrap(), canon);
        }
    }

    #[test]
    fn classify_rejects_mixed_scenarios() {
        let a = Behavior::uniform(Scenario::new(2, 2, 2, 2).unwrap());
        let b = Behavior::uniform(Scenario::new(2, 2, 2, 3).unwrap());
        assert!(matches!(classify(&[a, b]), Err(Error::MixedScenarios(..))));
    }

    #[test]
    fn classify_single_behavior() {
        let classes = classify(&[pr()]).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![0]);
    }
}
