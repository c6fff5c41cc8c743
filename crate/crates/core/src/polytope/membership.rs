//! Exact membership and visibility against the convex hull of a vertex list.

use num_traits::{Signed, Zero};

use crate::behavior::{Behavior, BellFunctional};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::lp::{LinearProgram, LpOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipResult {
    /// Convex weights, one per input vertex.
    Inside { weights: Vec<Rational> },
    /// `F.v <= bound` for every input vertex and `F.b > bound`.
    Outside {
        functional: BellFunctional,
        bound: Rational,
    },
}

impl MembershipResult {
    pub fn is_inside(&self) -> bool {
        matches!(self, MembershipResult::Inside { .. })
    }

    /// Checks the witness against `behavior` and `vertices` by direct
    /// evaluation.
    pub fn verify(&self, behavior: &Behavior, vertices: &[Behavior]) -> bool {
        match self {
            MembershipResult::Inside { weights } => {
                if weights.len() != vertices.len()
                    || weights.iter().any(|w| w.is_negative())
                    || rational::sum(weights) != rational::one()
                {
                    return false;
                }
                let terms: Vec<(Rational, &Behavior)> = weights
                    .iter()
                    .cloned()
                    .zip(vertices)
                    .filter(|(w, _)| !w.is_zero())
                    .collect();
                Behavior::combine(&terms).is_ok_and(|mix| &mix == behavior)
            }
            MembershipResult::Outside { functional, bound } => {
                let Ok(value) = functional.evaluate(behavior) else {
                    return false;
                };
                value > *bound
                    && vertices
                        .iter()
                        .all(|v| functional.evaluate(v).is_ok_and(|fv| fv <= *bound))
            }
        }
    }
}

fn check_inputs(behavior: &Behavior, vertices: &[Behavior]) -> Result<()> {
    if vertices.is_empty() {
        return Err(Error::Empty("vertex list"));
    }
    for v in vertices {
        if v.scenario() != behavior.scenario() {
            return Err(Error::MixedScenarios(behavior.scenario(), v.scenario()));
        }
    }
    Ok(())
}

/// Columns `(V_j, 1)` over rows `0..T` (table entries) and `T` (convexity).
fn hull_program(vertices: &[Behavior], extra_rows: usize) -> LinearProgram {
    let len = vertices[0].table().len();
    let mut lp = LinearProgram::new(len + 1 + extra_rows);
    for v in vertices {
        let mut col: Vec<(usize, Rational)> = v
            .table()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| (i, p.clone()))
            .collect();
        col.push((len, rational::one()));
        lp.add_column(col, rational::zero());
    }
    lp.set_rhs(len, rational::one());
    lp
}

pub fn membership(behavior: &Behavior, vertices: &[Behavior]) -> Result<MembershipResult> {
    check_inputs(behavior, vertices)?;
    let mut lp = hull_program(vertices, 0);
    for (i, p) in behavior.table().iter().enumerate() {
        lp.set_rhs(i, p.clone());
    }
    let result = match lp.solve()? {
        LpOutcome::Optimal { x, .. } => MembershipResult::Inside { weights: x },
        LpOutcome::Infeasible { farkas } => {
            // farkas.(V_j, 1) <= 0 and farkas.(b, 1) > 0
            let len = behavior.table().len();
            let functional = BellFunctional::new(behavior.scenario(), farkas[..len].to_vec())?;
            MembershipResult::Outside {
                functional,
                bound: -farkas[len].clone(),
            }
        }
        LpOutcome::Unbounded => unreachable!("feasibility program has zero cost"),
    };
    debug_assert!(result.verify(behavior, vertices));
    if !result.verify(behavior, vertices) {
        return Err(Error::Infeasible(
            "membership witness failed verification".into(),
        ));
    }
    Ok(result)
}

/// Largest `t` in `[0, 1]` with `t b + (1 - t) u` in the hull, `u` the
/// uniform box.
pub fn critical_visibility(behavior: &Behavior, vertices: &[Behavior]) -> Result<Rational> {
    check_inputs(behavior, vertices)?;
    let uniform = Behavior::uniform(behavior.scenario());
    let len = behavior.table().len();
    // rows: entries, convexity, t + s = 1
    let mut lp = hull_program(vertices, 1);
    let t_col: Vec<(usize, Rational)> = behavior
        .table()
        .iter()
        .zip(uniform.table())
        .enumerate()
        .map(|(i, (p, u))| (i, u - p))
        .chain(std::iter::once((len + 1, rational::one())))
        .collect();
    lp.add_column(t_col, rational::one());
    lp.add_column(vec![(len + 1, rational::one())], rational::zero());
    for (i, u) in uniform.table().iter().enumerate() {
        lp.set_rhs(i, u.clone());
    }
    lp.set_rhs(len + 1, rational::one());
    match lp.solve()? {
        LpOutcome::Optimal { value, x, .. } => {
            let weights = &x[..vertices.len()];
            let mixed = Behavior::combine(&[
                (value.clone(), behavior),
                (rational::one() - &value, &uniform),
            ])?;
            let check = MembershipResult::Inside {
                weights: weights.to_vec(),
            };
            if !check.verify(&mixed, vertices) {
                return Err(Error::Infeasible(
                    "visibility witness failed verification".into(),
                ));
            }
            Ok(value)
        }
        LpOutcome::Infeasible { .. } => Err(Error::Infeasible(
            "the uniform box lies outside the vertex hull".into(),
        )),
        LpOutcome::Unbounded => unreachable!("t is bounded by 1"),
    }
}

/// Exact maximum of `functional` over `vertices`; ties go to the first.
pub fn maximize_functional(
    functional: &BellFunctional,
    vertices: &[Behavior],
) -> Result<(Rational, usize)> {
    let mut best: Option<(Rational, usize)> = None;
    for (i, v) in vertices.iter().enumerate() {
        let value = functional.evaluate(v)?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, i));
        }
    }
    best.ok_or(Error::Empty("vertex list"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxgen::{local_deterministic_boxes, pr_box};
    use crate::rational::frac;
    use crate::scenario::Scenario;

    #[test]
    fn pr_box_against_local_polytope() {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        let local = local_deterministic_boxes(s, 100).unwrap();
        let pr = pr_box();
        let result = membership(&pr, &local).unwrap();
        assert!(!result.is_inside());
        assert!(result.verify(&pr, &local));
        assert_eq!(critical_visibility(&pr, &local).unwrap(), frac(1, 2));
        let mix = Behavior::combine(&[(frac(1, 3), &local[0]), (frac(2, 3), &local[5])]).unwrap();
        let inside = membership(&mix, &local).unwrap();
        assert!(inside.is_inside() && inside.verify(&mix, &local));
        assert_eq!(critical_visibility(&mix, &local).unwrap(), rational::one());
    }
}
