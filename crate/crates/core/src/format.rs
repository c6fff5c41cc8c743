//! Text and JSON serialization of behaviors and the objects built on them.
//!
//! Text format: line one is `X Y A B`; then `X * Y` lines, line `x * Y + y`
//! holding the `A * B` entries of `p(.,.|x,y)` in order `a * B + b`, each
//! written `num/den` (or an integer).
//!
//! JSON mirror: `{"scenario":[X,Y,A,B],"table":["num/den",...]}` in flat
//! index order.

use serde::{Deserialize, Serialize};

use crate::behavior::{Behavior, BellFunctional};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::scenario::Scenario;

pub const DATABASE_FORMAT_VERSION: u32 = 1;

pub fn to_text(behavior: &Behavior) -> String {
    let s = behavior.scenario();
    let (nx, ny, _, _) = s.tuple();
    let mut out = format!(
        "{} {} {} {}\n",
        s.alice_inputs, s.bob_inputs, s.alice_outputs, s.bob_outputs
    );
    let block = s.block_len();
    for line in 0..nx * ny {
        let entries: Vec<String> = behavior.table()[line * block..(line + 1) * block]
            .iter()
            .map(rational::format)
            .collect();
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    out
}

pub fn from_text(text: &str) -> Result<Behavior> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty behavior file".into()))?;
    let scenario: Scenario = header.parse()?;
    let (nx, ny, _, _) = scenario.tuple();
    let mut table = Vec::with_capacity(scenario.table_len());
    for line_no in 0..nx * ny {
        let line = lines.next().ok_or_else(|| {
            Error::Parse(format!("expected {} table lines, found {line_no}", nx * ny))
        })?;
        let row: Vec<Rational> = line
            .split_whitespace()
            .map(rational::parse)
            .collect::<Result<_>>()?;
        if row.len() != scenario.block_len() {
            return Err(Error::Parse(format!(
                "table line {} has {} entries, expected {}",
                line_no + 1,
                row.len(),
                scenario.block_len()
            )));
        }
        table.extend(row);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("unexpected trailing line '{extra}'")));
    }
    Behavior::new(scenario, table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehaviorJson {
    pub scenario: Scenario,
    pub table: Vec<String>,
}

impl From<&Behavior> for BehaviorJson {
    fn from(b: &Behavior) -> Self {
        BehaviorJson {
            scenario: b.scenario(),
            table: b.table().iter().map(rational::format).collect(),
        }
    }
}

impl TryFrom<&BehaviorJson> for Behavior {
    type Error = Error;

    fn try_from(j: &BehaviorJson) -> Result<Behavior> {
        let table = j
            .table
            .iter()
            .map(|t| rational::parse(t))
            .collect::<Result<_>>()?;
        Behavior::new(j.scenario, table)
    }
}

pub fn to_json(behavior: &Behavior) -> String {
    serde_json::to_string(&BehaviorJson::from(behavior)).expect("behavior json")
}

pub fn from_json(text: &str) -> Result<Behavior> {
    let j: BehaviorJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Behavior::try_from(&j)
}

/// Reads either format, choosing JSON when the first non-blank character is `{`.
pub fn parse_behavior(text: &str) -> Result<Behavior> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalJson {
    pub scenario: Scenario,
    pub table: Vec<String>,
    pub bound: String,
}

impl FunctionalJson {
    pub fn new(functional: &BellFunctional, bound: &Rational) -> Self {
        FunctionalJson {
            scenario: functional.scenario(),
            table: functional
                .coefficients()
                .iter()
                .map(rational::format)
                .collect(),
            bound: rational::format(bound),
        }
    }

    pub fn parse(&self) -> Result<(BellFunctional, Rational)> {
        let coefficients = self
            .table
            .iter()
            .map(|t| rational::parse(t))
            .collect::<Result<_>>()?;
        Ok((
            BellFunctional::new(self.scenario, coefficients)?,
            rational::parse(&self.bound)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexListJson {
    pub format: u32,
    pub scenario: Scenario,
    pub vertices: Vec<BehaviorJson>,
}

impl VertexListJson {
    pub fn new(scenario: Scenario, vertices: &[Behavior]) -> Self {
        VertexListJson {
            format: DATABASE_FORMAT_VERSION,
            scenario,
            vertices: vertices.iter().map(BehaviorJson::from).collect(),
        }
    }

    pub fn behaviors(&self) -> Result<Vec<Behavior>> {
        self.vertices.iter().map(Behavior::try_from).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub weight: String,
    pub vertex: BehaviorJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_layout_is_exact() {
        let s = Scenario::new(2, 2, 2, 2).unwrap();
        let pr = Behavior::from_block_rows(
            s,
            2,
            &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 0, 1], &[0, 1, 1, 0]],
        )
        .unwrap();
        let text = to_text(&pr);
        assert_eq!(
            text,
            "2 2 2 2\n1/2 0 0 1/2\n1/2 0 0 1/2\n1/2 0 0 1/2\n0 1/2 1/2 0\n"
        );
        assert_eq!(from_text(&text).unwrap(), pr);
        assert_eq!(
            to_json(&pr),
            r#"{"scenario":[2,2,2,2],"table":["1/2","0","0","1/2","1/2","0","0","1/2","1/2","0","0","1/2","0","1/2","1/2","0"]}"#
        );
    }

    #[test]
    fn malformed_text_is_rejected() {
        assert!(from_text("").is_err());
        assert!(from_text("2 2 2 2\n1 0 0 0\n").is_err());
        assert!(from_text("2 2 2\n").is_err());
        assert!(from_text("2 2 2 2\n1 0 0\n1 0 0 0\n1 0 0 0\n1 0 0 0\n").is_err());
        assert!(from_json(r#"{"scenario":[2,2,2,2],"table":["1"]}"#).is_err());
    }

    proptest! {
        #[test]
        fn text_and_json_roundtrip(
            dims in (2usize..4, 2usize..4, 2usize..4, 2usize..4),
            seed in proptest::collection::vec((-5i64..6, 1i64..7), 81..=81),
        ) {
            let s = Scenario::new(dims.0, dims.1, dims.2, dims.3).unwrap();
            let table = (0..s.table_len())
                .map(|i| rational::frac(seed[i % seed.len()].0, seed[i % seed.len()].1))
                .collect();
            let b = Behavior::new(s, table).unwrap();
            prop_assert_eq!(&from_text(&to_text(&b)).unwrap(), &b);
            prop_assert_eq!(&parse_behavior(&to_json(&b)).unwrap(), &b);
        }
    }
}
