pub mod behavior;
pub mod boxgen;
pub mod comm;
pub mod error;
pub mod format;
pub mod linalg;
pub mod lo;
pub mod ns;
pub mod polytope;
pub mod rational;
pub mod relabel;
pub mod scenario;

pub use behavior::{Behavior, BellFunctional, ValidationReport, Violation};
pub use error::{Error, Result};
pub use rational::Rational;
pub use relabel::{apply_relabeling, canonical_form, classify, BehaviorClass, Relabeling};
pub use scenario::Scenario;
