//! Constructors for candidate extremal boxes and named correlations.

pub mod eq1;
pub mod fixtures;
pub mod magic;
pub mod nsdd;
pub mod registry;

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::rational;
use crate::scenario::Scenario;

pub use eq1::{enumerate_eq1, eq1_box, Eq1Spec};
pub use fixtures::{
    box1, box2, box3, box4, box5, fixture, magic_square_behavior, magic_square_functional,
    magic_square_p1_p2, magic_square_q1, pr_box, FIXTURE_NAMES,
};
pub use magic::{quantum_realization, QuantumRealization};
pub use nsdd::{enumerate_nsdd, nsdd_box, NsddSpec};
pub use registry::{BoxGenerator, GenerateRequest, GeneratedBox, GeneratorRegistry};

pub const DEFAULT_MAX_LOCAL_BOXES: usize = 1 << 20;

/// Deterministic behavior with Alice answering `alice[x]` and Bob `bob[y]`.
pub fn deterministic_box(s: Scenario, alice: &[usize], bob: &[usize]) -> Result<Behavior> {
    if alice.len() != s.alice_inputs
        || bob.len() != s.bob_inputs
        || alice.iter().any(|&a| a >= s.alice_outputs)
        || bob.iter().any(|&b| b >= s.bob_outputs)
    {
        return Err(Error::InvalidSpec(format!(
            "output functions do not fit scenario {s}"
        )));
    }
    let mut table = vec![rational::zero(); s.table_len()];
    for (x, &a) in alice.iter().enumerate() {
        for (y, &b) in bob.iter().enumerate() {
            table[s.index(x, y, a, b)] = rational::one();
        }
    }
    Behavior::new(s, table)
}

/// Mixed-radix counter over `count` digits in `0..radix`, little-endian.
pub(crate) fn for_each_assignment(radix: usize, count: usize, mut f: impl FnMut(&[usize])) {
    let mut digits = vec![0usize; count];
    loop {
        f(&digits);
        let mut i = 0;
        loop {
            if i == count {
                return;
            }
            digits[i] += 1;
            if digits[i] < radix {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// All `A^X * B^Y` deterministic behaviors, ordered by Alice's then Bob's
/// output function (little-endian counters).
pub fn local_deterministic_boxes(s: Scenario, limit: usize) -> Result<Vec<Behavior>> {
    let count = (s.alice_outputs as u128).pow(s.alice_inputs as u32)
        * (s.bob_outputs as u128).pow(s.bob_inputs as u32);
    if count > limit as u128 {
        return Err(Error::GuardExceeded {
            what: "local deterministic boxes",
            limit,
        });
    }
    let mut alice_fns = Vec::new();
    for_each_assignment(s.alice_outputs, s.alice_inputs, |d| {
        alice_fns.push(d.to_vec())
    });
    let mut bob_fns = Vec::new();
    for_each_assignment(s.bob_outputs, s.bob_inputs, |d| bob_fns.push(d.to_vec()));
    let mut out = Vec::with_capacity(count as usize);
    for a in &alice_fns {
        for b in &bob_fns {
            out.push(deterministic_box(s, a, b)?);
        }
    }
    Ok(out)
}
