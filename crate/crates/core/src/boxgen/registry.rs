//! Box generators selectable by name.

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::scenario::Scenario;

use super::{eq1, fixtures, nsdd};

#[derive(Clone, Debug, Default)]
pub struct GenerateRequest {
    pub scenario: Option<Scenario>,
    pub coprime_only: bool,
    /// Restricts fixture output to one named box.
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedBox {
    pub label: String,
    pub behavior: Behavior,
}

pub trait BoxGenerator: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn generate(&self, request: &GenerateRequest) -> Result<Vec<GeneratedBox>>;
}

fn required_scenario(request: &GenerateRequest, generator: &str) -> Result<Scenario> {
    request
        .scenario
        .ok_or_else(|| Error::InvalidSpec(format!("generator '{generator}' needs a scenario")))
}

pub struct Eq1Generator;

impl BoxGenerator for Eq1Generator {
    fn name(&self) -> &'static str {
        "eq1"
    }

    fn describe(&self) -> &'static str {
        "block-circulant family (A = B)"
    }

    fn generate(&self, request: &GenerateRequest) -> Result<Vec<GeneratedBox>> {
        let s = required_scenario(request, self.name())?;
        Ok(eq1::enumerate_eq1(s, request.coprime_only)?
            .map(|(spec, behavior)| GeneratedBox {
                label: format!("eq1 g={} h={} t={:?}", spec.g, spec.h, spec.t_blocks),
                behavior,
            })
            .collect())
    }
}

pub struct NsddGenerator;

impl BoxGenerator for NsddGenerator {
    fn name(&self) -> &'static str {
        "nsdd"
    }

    fn describe(&self) -> &'static str {
        "uniform-weight permutation family (A = B = d)"
    }

    fn generate(&self, request: &GenerateRequest) -> Result<Vec<GeneratedBox>> {
        let s = required_scenario(request, self.name())?;
        nsdd::enumerate_nsdd(s)?
            .into_iter()
            .map(|spec| {
                Ok(GeneratedBox {
                    label: format!("nsdd k={} perms={:?}", spec.k, spec.perms),
                    behavior: nsdd::nsdd_box(&spec)?,
                })
            })
            .collect()
    }
}

pub struct FixtureGenerator;

impl BoxGenerator for FixtureGenerator {
    fn name(&self) -> &'static str {
        "fixtures"
    }

    fn describe(&self) -> &'static str {
        "named reference boxes"
    }

    fn generate(&self, request: &GenerateRequest) -> Result<Vec<GeneratedBox>> {
        let names: Vec<&str> = match &request.name {
            Some(name) => vec![name.as_str()],
            None => fixtures::FIXTURE_NAMES.to_vec(),
        };
        names
            .into_iter()
            .map(|name| {
                let behavior = fixtures::fixture(name).ok_or_else(|| Error::UnknownStrategy {
                    kind: "fixture",
                    name: name.to_string(),
                    known: fixtures::FIXTURE_NAMES.join(", "),
                })?;
                Ok(GeneratedBox {
                    label: name.to_string(),
                    behavior,
                })
            })
            .filter(|g: &Result<GeneratedBox>| {
                request
                    .scenario
                    .is_none_or(|s| g.as_ref().map_or(true, |g| g.behavior.scenario() == s))
            })
            .collect()
    }
}

pub struct GeneratorRegistry {
    generators: Vec<Box<dyn BoxGenerator>>,
}

impl Default for GeneratorRegistry {
    fn default() -> Self {
        let mut registry = GeneratorRegistry::empty();
        registry.register(Box::new(Eq1Generator));
        registry.register(Box::new(NsddGenerator));
        registry.register(Box::new(FixtureGenerator));
        registry
    }
}

impl GeneratorRegistry {
    pub fn empty() -> Self {
        GeneratorRegistry {
            generators: Vec::new(),
        }
    }

    /// Adds a generator, replacing any with the same name.
    pub fn register(&mut self, generator: Box<dyn BoxGenerator>) {
        self.generators.retain(|g| g.name() != generator.name());
        self.generators.push(generator);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.generators.iter().map(|g| g.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn BoxGenerator> {
        self.generators
            .iter()
            .find(|g| g.name() == name)
            .map(|g| g.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "generator",
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_name() {
        let registry = GeneratorRegistry::default();
        assert_eq!(registry.names(), vec!["eq1", "nsdd", "fixtures"]);
        assert!(registry.get("nope").is_err());
        let out = registry
            .get("fixtures")
            .unwrap()
            .generate(&GenerateRequest {
                name: Some("pr".into()),
                ..Default::default()
            })
            .unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].behavior, fixtures::pr_box());
        assert!(registry
            .get("eq1")
            .unwrap()
            .generate(&GenerateRequest::default())
            .is_err());
    }
}
