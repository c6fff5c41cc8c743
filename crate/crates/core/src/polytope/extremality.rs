//! Extremality by the rank of the tight-constraint system.
//!
//! A valid behavior `p` is a vertex of the non-signaling polytope iff the
//! only direction `v` that keeps every equality constraint and vanishes
//! wherever `p` vanishes is `v = 0`. Any nonzero such `v` admits `p ± εv`
//! inside the polytope for small `ε > 0`.

use num_traits::{Signed, Zero};

use crate::behavior::Behavior;
use crate::error::Result;
use crate::linalg;
use crate::ns::{self, Normalization};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Extremal,
    NonExtremal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalityCertificate {
    pub verdict: Verdict,
    /// Present iff the verdict is [`Verdict::NonExtremal`]; a primitive
    /// integer direction in flat index order.
    pub perturbation: Option<Vec<Rational>>,
}

impl ExtremalityCertificate {
    pub fn is_extremal(&self) -> bool {
        self.verdict == Verdict::Extremal
    }

    /// Re-checks the certificate against `behavior` from scratch.
    pub fn verify(&self, behavior: &Behavior) -> bool {
        match (&self.verdict, &self.perturbation) {
            (Verdict::Extremal, None) => perturbation_basis(behavior)
                .map(|k| k.is_empty())
                .unwrap_or(false),
            (Verdict::NonExtremal, Some(v)) => {
                let Some((alpha, beta)) = step_lengths(behavior, v) else {
                    return false;
                };
                ns::satisfies(behavior.scenario(), Normalization::Zero, v)
                    && behavior
                        .table()
                        .iter()
                        .zip(v)
                        .all(|(p, d)| !p.is_zero() || d.is_zero())
                    && behavior.shifted(v, &alpha).is_valid()
                    && behavior.shifted(v, &(-beta)).is_valid()
            }
            _ => false,
        }
    }
}

/// A basis of the admissible perturbation directions at `behavior`
/// (full-length vectors, zero outside the support).
pub fn perturbation_basis(behavior: &Behavior) -> Result<Vec<Vec<Rational>>> {
    behavior.ensure_valid()?;
    let s = behavior.scenario();
    let support = behavior.support();
    let rows = ns::dense_rows(
        &ns::equality_rows(s, Normalization::Zero),
        &support,
        s.table_len(),
    );
    Ok(linalg::kernel(&rows, support.len())
        .into_iter()
        .map(|k| {
            let mut full = vec![rational::zero(); s.table_len()];
            let ints = rational::primitive_integer_vector(&k);
            for (&i, v) in support.iter().zip(ints) {
                full[i] = Rational::from_integer(v);
            }
            full
        })
        .collect())
}

pub fn extremality_certificate(behavior: &Behavior) -> Result<ExtremalityCertificate> {
    let basis = perturbation_basis(behavior)?;
    Ok(match basis.into_iter().next() {
        None => ExtremalityCertificate {
            verdict: Verdict::Extremal,
            perturbation: None,
        },
        Some(v) => ExtremalityCertificate {
            verdict: Verdict::NonExtremal,
            perturbation: Some(v),
        },
    })
}

pub fn is_extremal(behavior: &Behavior) -> Result<bool> {
    Ok(perturbation_basis(behavior)?.is_empty())
}

/// Largest `alpha, beta > 0` with `p + alpha v` and `p - beta v` nonnegative,
/// or `None` when `v` is zero or leaves the polytope immediately.
pub fn step_lengths(behavior: &Behavior, v: &[Rational]) -> Option<(Rational, Rational)> {
    let mut alpha: Option<Rational> = None;
    let mut beta: Option<Rational> = None;
    for (p, d) in behavior.table().iter().zip(v) {
        if d.is_zero() {
            continue;
        }
        let ratio = p / d.abs();
        let slot = if d.is_negative() {
            &mut alpha
        } else {
            &mut beta
        };
        if slot.as_ref().is_none_or(|cur| ratio < *cur) {
            *slot = Some(ratio);
        }
    }
    match (alpha, beta) {
        (Some(a), Some(b)) if a.is_positive() && b.is_positive() => Some((a, b)),
        _ => None,
    }
}
