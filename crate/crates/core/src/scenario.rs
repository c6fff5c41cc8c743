use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bipartite Bell scenario `(X, Y, A, B)`: Alice has `X` inputs with `A`
/// outputs each, Bob has `Y` inputs with `B` outputs each.
///
/// Behavior tables are stored flat, with `(x, y, a, b)` at
/// `((x * Y + y) * A + a) * B + b`. Every module and file format uses this
/// layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 4]", into = "[usize; 4]")]
pub struct Scenario {
    pub alice_inputs: usize,
    pub bob_inputs: usize,
    pub alice_outputs: usize,
    pub bob_outputs: usize,
}

impl Scenario {
    pub fn new(
        alice_inputs: usize,
        bob_inputs: usize,
        alice_outputs: usize,
        bob_outputs: usize,
    ) -> Result<Self> {
        let s = Scenario {
            alice_inputs,
            bob_inputs,
            alice_outputs,
            bob_outputs,
        };
        if [alice_inputs, bob_inputs, alice_outputs, bob_outputs]
            .iter()
            .any(|&n| n < 2)
        {
            return Err(Error::InvalidScenario(s.to_string()));
        }
        Ok(s)
    }

    /// Number of entries of a behavior table.
    pub fn table_len(&self) -> usize {
        self.alice_inputs * self.bob_inputs * self.alice_outputs * self.bob_outputs
    }

    pub fn block_len(&self) -> usize {
        self.alice_outputs * self.bob_outputs
    }

    pub fn index(&self, x: usize, y: usize, a: usize, b: usize) -> usize {
        ((x * self.bob_inputs + y) * self.alice_outputs + a) * self.bob_outputs + b
    }

    /// Inverse of [`Scenario::index`].
    pub fn coords(&self, index: usize) -> (usize, usize, usize, usize) {
        let b = index % self.bob_outputs;
        let rest = index / self.bob_outputs;
        let a = rest % self.alice_outputs;
        let rest = rest / self.alice_outputs;
        let y = rest % self.bob_inputs;
        let x = rest / self.bob_inputs;
        (x, y, a, b)
    }

    /// Affine dimension of the non-signaling polytope.
    pub fn ns_dimension(&self) -> usize {
        let (x, y, a, b) = self.tuple();
        x * y * (a - 1) * (b - 1) + x * (a - 1) + y * (b - 1)
    }

    pub fn transposed(&self) -> Scenario {
        Scenario {
            alice_inputs: self.bob_inputs,
            bob_inputs: self.alice_inputs,
            alice_outputs: self.bob_outputs,
            bob_outputs: self.alice_outputs,
        }
    }

    /// Whether the party swap is a symmetry of this scenario.
    pub fn is_party_symmetric(&self) -> bool {
        self.alice_inputs == self.bob_inputs && self.alice_outputs == self.bob_outputs
    }

    pub fn tuple(&self) -> (usize, usize, usize, usize) {
        (
            self.alice_inputs,
            self.bob_inputs,
            self.alice_outputs,
            self.bob_outputs,
        )
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y, a, b) = self.tuple();
        write!(f, "({x},{y},{a},{b})")
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    /// Accepts `"2,2,2,2"`, `"(2,2,2,2)"` or `"2 2 2 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<usize> = cleaned
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse()
                    .map_err(|_| Error::Parse(format!("bad scenario component '{p}'")))
            })
            .collect::<Result<_>>()?;
        match parts.as_slice() {
            [x, y, a, b] => Scenario::new(*x, *y, *a, *b),
            _ => Err(Error::Parse(format!("scenario needs four numbers: '{s}'"))),
        }
    }
}

impl TryFrom<[usize; 4]> for Scenario {
    type Error = Error;

    fn try_from(v: [usize; 4]) -> Result<Self> {
        Scenario::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Scenario> for [usize; 4] {
    fn from(s: Scenario) -> Self {
        [s.alice_inputs, s.bob_inputs, s.alice_outputs, s.bob_outputs]
    }
}
