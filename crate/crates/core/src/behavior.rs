use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::scenario::Scenario;

/// A conditional probability table `p(ab|xy)` with exact rational entries.
///
/// Construction only checks the table shape; use [`Behavior::validate`] for
/// the positivity, normalization and no-signaling constraints. Some callers
/// (deterministic communication strategies) legitimately build signaling
/// tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Behavior {
    scenario: Scenario,
    table: Vec<Rational>,
}

/// One violated constraint of the non-signaling polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Negative {
        x: usize,
        y: usize,
        a: usize,
        b: usize,
        value: Rational,
    },
    Normalization {
        x: usize,
        y: usize,
        sum: Rational,
    },
    /// Alice's marginal `p(a|x)` differs between Bob inputs `0` and `y`.
    AliceSignaling {
        x: usize,
        a: usize,
        y: usize,
        reference: Rational,
        found: Rational,
    },
    /// Bob's marginal `p(b|y)` differs between Alice inputs `0` and `x`.
    BobSignaling {
        y: usize,
        b: usize,
        x: usize,
        reference: Rational,
        found: Rational,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use rational::format as r;
        match self {
            Violation::Negative { x, y, a, b, value } => {
                write!(f, "positivity: p({a}{b}|{x}{y}) = {} < 0", r(value))
            }
            Violation::Normalization { x, y, sum } => {
                write!(
                    f,
                    "normalization: sum over ab of p(ab|{x}{y}) = {} != 1",
                    r(sum)
                )
            }
            Violation::AliceSignaling {
                x,
                a,
                y,
                reference,
                found,
            } => write!(
                f,
                "no-signaling (Alice): p(a={a}|x={x}) is {} for y=0 but {} for y={y}",
                r(reference),
                r(found)
            ),
            Violation::BobSignaling {
                y,
                b,
                x,
                reference,
                found,
            } => write!(
                f,
                "no-signaling (Bob): p(b={b}|y={y}) is {} for x=0 but {} for x={x}",
                r(reference),
                r(found)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_normalization_violation(&self) -> bool {
        self.violations
            .iter()
            .any(|v| matches!(v, Violation::Normalization { .. }))
    }

    pub fn has_signaling_violation(&self) -> bool {
        self.violations.iter().any(|v| {
            matches!(
                v,
                Violation::AliceSignaling { .. } | Violation::BobSignaling { .. }
            )
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Behavior {
    pub fn new(scenario: Scenario, table: Vec<Rational>) -> Result<Self> {
        if table.len() != scenario.table_len() {
            return Err(Error::ShapeMismatch {
                scenario,
                expected: scenario.table_len(),
                found: table.len(),
            });
        }
        Ok(Behavior { scenario, table })
    }

    /// Builds `entries / denominator`, entries given in flat index order.
    pub fn from_integers(scenario: Scenario, denominator: i64, entries: &[i64]) -> Result<Self> {
        let table = entries
            .iter()
            .map(|&e| rational::frac(e, denominator))
            .collect();
        Behavior::new(scenario, table)
    }

    /// Builds a behavior from the block-matrix layout:
    /// `rows[x * A + a][y * B + b] = denominator * p(ab|xy)`.
    pub fn from_block_rows(scenario: Scenario, denominator: i64, rows: &[&[i64]]) -> Result<Self> {
        let (nx, ny, na, nb) = scenario.tuple();
        if rows.len() != nx * na || rows.iter().any(|r| r.len() != ny * nb) {
            return Err(Error::ShapeMismatch {
                scenario,
                expected: scenario.table_len(),
                found: rows.iter().map(|r| r.len()).sum(),
            });
        }
        let mut table = vec![rational::zero(); scenario.table_len()];
        for x in 0..nx {
            for a in 0..na {
                for y in 0..ny {
                    for b in 0..nb {
                        table[scenario.index(x, y, a, b)] =
                            rational::frac(rows[x * na + a][y * nb + b], denominator);
                    }
                }
            }
        }
        Behavior::new(scenario, table)
    }

    /// The white-noise box `p(ab|xy) = 1/(AB)`.
    pub fn uniform(scenario: Scenario) -> Self {
        let value = rational::frac(1, scenario.block_len() as i64);
        Behavior {
            scenario,
            table: vec![value; scenario.table_len()],
        }
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    pub fn into_table(self) -> Vec<Rational> {
        self.table
    }

    pub fn get(&self, x: usize, y: usize, a: usize, b: usize) -> &Rational {
        &self.table[self.scenario.index(x, y, a, b)]
    }

    pub fn zero_count(&self) -> usize {
        self.table.iter().filter(|v| v.is_zero()).count()
    }

    /// Flat indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.table.len())
            .filter(|&i| !self.table[i].is_zero())
            .collect()
    }

    pub fn alice_marginal(&self, x: usize, a: usize, y: usize) -> Rational {
        let nb = self.scenario.bob_outputs;
        rational::sum((0..nb).map(|b| self.get(x, y, a, b)))
    }

    pub fn bob_marginal(&self, y: usize, b: usize, x: usize) -> Rational {
        let na = self.scenario.alice_outputs;
        rational::sum((0..na).map(|a| self.get(x, y, a, b)))
    }

    /// Checks positivity, normalization and no-signaling exactly, reporting
    /// every violated constraint.
    pub fn validate(&self) -> ValidationReport {
        let s = self.scenario;
        let (nx, ny, na, nb) = s.tuple();
        let mut violations = Vec::new();
        for (i, v) in self.table.iter().enumerate() {
            if v.is_negative() {
                let (x, y, a, b) = s.coords(i);
                violations.push(Violation::Negative {
                    x,
                    y,
                    a,
                    b,
                    value: v.clone(),
                });
            }
        }
        for x in 0..nx {
            for y in 0..ny {
                let start = s.index(x, y, 0, 0);
                let sum = rational::sum(&self.table[start..start + s.block_len()]);
                if sum != rational::one() {
                    violations.push(Violation::Normalization { x, y, sum });
                }
            }
        }
        for x in 0..nx {
            for a in 0..na {
                let reference = self.alice_marginal(x, a, 0);
                for y in 1..ny {
                    let found = self.alice_marginal(x, a, y);
                    if found != reference {
                        violations.push(Violation::AliceSignaling {
                            x,
                            a,
                            y,
                            reference: reference.clone(),
                            found,
                        });
                    }
                }
            }
        }
        for y in 0..ny {
            for b in 0..nb {
                let reference = self.bob_marginal(y, b, 0);
                for x in 1..nx {
                    let found = self.bob_marginal(y, b, x);
                    if found != reference {
                        violations.push(Violation::BobSignaling {
                            y,
                            b,
                            x,
                            reference: reference.clone(),
                            found,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Returns `self` if valid, an [`Error::InvalidBehavior`] naming the
    /// first violation otherwise.
    pub fn ensure_valid(&self) -> Result<&Self> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::InvalidBehavior(v.to_string())),
        }
    }

    /// Whether every output of both parties occurs with positive probability.
    pub fn is_full_output(&self) -> bool {
        let (nx, ny, na, nb) = self.scenario.tuple();
        (0..nx).all(|x| (0..na).all(|a| !self.alice_marginal(x, a, 0).is_zero()))
            && (0..ny).all(|y| (0..nb).all(|b| !self.bob_marginal(y, b, 0).is_zero()))
    }

    /// Exchanges the roles of Alice and Bob: scenario `(Y, X, B, A)` with
    /// `p'(ba|yx) = p(ab|xy)`.
    pub fn transpose_parties(&self) -> Behavior {
        let s = self.scenario;
        let t = s.transposed();
        let mut table = vec![rational::zero(); s.table_len()];
        for (i, v) in self.table.iter().enumerate() {
            let (x, y, a, b) = s.coords(i);
            table[t.index(y, x, b, a)] = v.clone();
        }
        Behavior { scenario: t, table }
    }

    /// Exact convex (or affine) combination `sum_i w_i * b_i`.
    pub fn combine(terms: &[(Rational, &Behavior)]) -> Result<Behavior> {
        let (_, first) = terms.first().ok_or(Error::Empty("combination terms"))?;
        let scenario = first.scenario;
        let mut table = vec![rational::zero(); scenario.table_len()];
        for (w, b) in terms {
            if b.scenario != scenario {
                return Err(Error::MixedScenarios(scenario, b.scenario));
            }
            if w.is_zero() {
                continue;
            }
            for (t, v) in table.iter_mut().zip(&b.table) {
                if !v.is_zero() {
                    *t += w * v;
                }
            }
        }
        Ok(Behavior { scenario, table })
    }

    /// `self + t * direction`, without validation.
    pub fn shifted(&self, direction: &[Rational], t: &Rational) -> Behavior {
        let table = self
            .table
            .iter()
            .zip(direction)
            .map(|(p, v)| if v.is_zero() { p.clone() } else { p + t * v })
            .collect();
        Behavior {
            scenario: self.scenario,
            table,
        }
    }
}

/// A linear functional on behaviors, `F . p = sum F(ab|xy) p(ab|xy)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BellFunctional {
    scenario: Scenario,
    coefficients: Vec<Rational>,
}

impl BellFunctional {
    pub fn new(scenario: Scenario, coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.len() != scenario.table_len() {
            return Err(Error::ShapeMismatch {
                scenario,
                expected: scenario.table_len(),
                found: coefficients.len(),
            });
        }
        Ok(BellFunctional {
            scenario,
            coefficients,
        })
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, x: usize, y: usize, a: usize, b: usize) -> &Rational {
        &self.coefficients[self.scenario.index(x, y, a, b)]
    }

    pub fn evaluate(&self, behavior: &Behavior) -> Result<Rational> {
        if behavior.scenario() != self.scenario {
            return Err(Error::MixedScenarios(self.scenario, behavior.scenario()));
        }
        Ok(rational::dot(&self.coefficients, behavior.table()))
    }

    pub fn scaled(&self, factor: &Rational) -> BellFunctional {
        BellFunctional {
            scenario: self.scenario,
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
        }
    }

    /// Reinterprets the coefficient table as a behavior-shaped table, for
    /// serialization through the behavior formats.
    pub fn as_table(&self) -> Behavior {
        Behavior {
            scenario: self.scenario,
            table: self.coefficients.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn pr() -> Behavior {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        Behavior::from_block_rows(
            s,
            2,
            &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 0, 1], &[0, 1, 1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn uniform_box_is_valid() {
        for (x, y, a, b) in [(2, 2, 2, 2), (3, 3, 3, 2), (2, 3, 4, 3)] {
            let s = Scenario::new(x, y, a, b).unwrap();
            let u = Behavior::uniform(s);
            assert!(u.validate().is_ok());
            assert_eq!(u.table()[0], frac(1, (a * b) as i64));
        }
    }

    #[test]
    fn shape_is_checked() {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        assert!(matches!(
            Behavior::new(s, vec![rational::zero(); 15]),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn reports_named_violations() {
        let mut t = pr().into_table();
        t[0] = rational::zero();
        let b = Behavior::new(Scenario::new(2, 2, 2, 2).unwrap(), t).unwrap();
        let report = b.validate();
        assert!(report.has_normalization_violation());
        assert!(report.has_signaling_violation());
        assert!(report.to_string().contains("normalization"));
    }

    #[test]
    fn negative_entries_are_reported() {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        let mut t = Behavior::uniform(s).into_table();
        t[0] = frac(1, 2);
        t[1] = rational::zero();
        t[2] = rational::zero();
        t[3] = frac(1, 2);
        t[5] = frac(-1, 4);
        let b = Behavior::new(s, t).unwrap();
        assert!(b
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Negative { .. })));
    }

    #[test]
    fn transpose_is_an_involution() {
        let s = Scenario::new(2, 3, 2, 3).unwrap();
        let u = Behavior::uniform(s);
        assert_eq!(u.transpose_parties().scenario(), s.transposed());
        assert_eq!(u.transpose_parties(), Behavior::uniform(s.transposed()));
        let p = pr();
        assert_eq!(p.transpose_parties().transpose_parties(), p);
    }

    #[test]
    fn functional_evaluation() {
        let p = pr();
        let f = BellFunctional::new(p.scenario(), vec![rational::one(); 16]).unwrap();
        assert_eq!(f.evaluate(&p).unwrap(), rational::int(4));
    }
}
