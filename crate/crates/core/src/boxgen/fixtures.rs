//! Named boxes with known properties, used as golden fixtures.
//!
//! Tables are written in the block layout `rows[x * A + a][y * B + b]`,
//! scaled by the stated denominator.

use crate::behavior::{Behavior, BellFunctional};
use crate::rational;
use crate::scenario::Scenario;

fn scenario(x: usize, y: usize, a: usize, b: usize) -> Scenario {
    Scenario::new(x, y, a, b).expect("fixture scenario")
}

fn build(s: Scenario, den: i64, rows: &[&[i64]]) -> Behavior {
    Behavior::from_block_rows(s, den, rows).expect("fixture table")
}

/// The PR box of (2,2,2,2): `p(ab|xy) = 1/2` iff `a xor b = x and y`.
pub fn pr_box() -> Behavior {
    build(
        scenario(2, 2, 2, 2),
        2,
        &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 0, 1], &[0, 1, 1, 0]],
    )
}

/// Full-output nonlocal vertex of (3,3,3,2) with entries in {1/4, 1/2}.
pub fn box1() -> Behavior {
    build(
        scenario(3, 3, 3, 2),
        4,
        &[
            &[0, 1, 0, 1, 0, 1],
            &[0, 1, 1, 0, 1, 0],
            &[2, 0, 0, 2, 0, 2],
            &[0, 2, 0, 2, 0, 2],
            &[1, 0, 0, 1, 1, 0],
            &[1, 0, 1, 0, 0, 1],
            &[0, 1, 0, 1, 1, 0],
            &[0, 1, 1, 0, 0, 1],
            &[2, 0, 0, 2, 0, 2],
        ],
    )
}

/// Full-output nonlocal vertex of (3,3,3,2) with all nonzero entries 1/3.
pub fn box2() -> Behavior {
    build(
        scenario(3, 3, 3, 2),
        3,
        &[
            &[0, 1, 0, 1, 0, 1],
            &[0, 1, 0, 1, 1, 0],
            &[1, 0, 1, 0, 0, 1],
            &[0, 1, 0, 1, 0, 1],
            &[0, 1, 1, 0, 0, 1],
            &[1, 0, 0, 1, 1, 0],
            &[0, 1, 0, 1, 1, 0],
            &[0, 1, 1, 0, 0, 1],
            &[1, 0, 0, 1, 0, 1],
        ],
    )
}

/// Full-output vertex of (2,3,3,3) with 34 zeros.
pub fn box3() -> Behavior {
    build(
        scenario(2, 3, 3, 3),
        4,
        &[
            &[0, 0, 2, 0, 0, 2, 0, 0, 2],
            &[0, 1, 0, 0, 1, 0, 0, 1, 0],
            &[1, 0, 0, 1, 0, 0, 1, 0, 0],
            &[0, 0, 1, 0, 0, 1, 0, 1, 0],
            &[0, 0, 1, 0, 1, 0, 1, 0, 0],
            &[1, 1, 0, 1, 0, 1, 0, 0, 2],
        ],
    )
}

/// Full-output vertex of (2,3,3,3) with 35 zeros.
pub fn box4() -> Behavior {
    build(
        scenario(2, 3, 3, 3),
        4,
        &[
            &[0, 0, 1, 0, 0, 1, 0, 0, 1],
            &[0, 1, 0, 0, 1, 0, 0, 0, 1],
            &[2, 0, 0, 2, 0, 0, 1, 1, 0],
            &[0, 0, 1, 0, 1, 0, 0, 1, 0],
            &[0, 1, 0, 0, 0, 1, 1, 0, 0],
            &[2, 0, 0, 2, 0, 0, 0, 0, 2],
        ],
    )
}

/// Full-output vertex of (2,3,3,3) with 36 zeros, all nonzero entries 1/3.
pub fn box5() -> Behavior {
    build(
        scenario(2, 3, 3, 3),
        3,
        &[
            &[0, 0, 1, 0, 0, 1, 0, 0, 1],
            &[0, 1, 0, 0, 1, 0, 0, 1, 0],
            &[1, 0, 0, 1, 0, 0, 1, 0, 0],
            &[0, 0, 1, 0, 0, 1, 0, 1, 0],
            &[0, 1, 0, 0, 1, 0, 1, 0, 0],
            &[1, 0, 0, 1, 0, 0, 0, 0, 1],
        ],
    )
}

const MAGIC_SQUARE_PATTERN: [[i64; 12]; 12] = [
    [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
    [1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
    [0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1],
    [0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1],
    [1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0],
    [0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
    [1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1],
    [1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0],
    [0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0],
    [0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1],
];

fn rows_of(pattern: &[[i64; 12]; 12]) -> Vec<&[i64]> {
    pattern.iter().map(|r| r.as_slice()).collect()
}

pub fn magic_square_scenario() -> Scenario {
    scenario(3, 3, 4, 4)
}

/// The (3,3,4,4) magic-square correlations, every nonzero entry 1/8.
pub fn magic_square_behavior() -> Behavior {
    build(magic_square_scenario(), 8, &rows_of(&MAGIC_SQUARE_PATTERN))
}

/// The 0/1 Bell functional supported on the magic-square pattern; its
/// maximum over the polytope is 9.
pub fn magic_square_functional() -> BellFunctional {
    let pattern = build(magic_square_scenario(), 1, &rows_of(&MAGIC_SQUARE_PATTERN));
    BellFunctional::new(magic_square_scenario(), pattern.into_table()).expect("functional shape")
}

const P1_PATTERN: [[i64; 12]; 12] = [
    [1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0],
    [1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
];

const P2_PATTERN: [[i64; 12]; 12] = [
    [0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
];

/// The two extremal boxes whose midpoint is the magic-square behavior.
pub fn magic_square_p1_p2() -> (Behavior, Behavior) {
    (
        build(magic_square_scenario(), 4, &rows_of(&P1_PATTERN)),
        build(magic_square_scenario(), 4, &rows_of(&P2_PATTERN)),
    )
}

const Q1_PATTERN: [[i64; 12]; 12] = [
    [2, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
    [0; 12],
    [0; 12],
    [0; 12],
    [1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    [0; 12],
    [0; 12],
    [1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0; 12],
    [0; 12],
];

/// First term of an eight-vertex decomposition of the magic-square
/// behavior into partial-output vertices.
pub fn magic_square_q1() -> Behavior {
    build(magic_square_scenario(), 2, &rows_of(&Q1_PATTERN))
}

/// Stable fixture names for export.
pub const FIXTURE_NAMES: [&str; 9] = [
    "pr", "box1", "box2", "box3", "box4", "box5", "p_ms", "p1", "p2",
];

pub fn fixture(name: &str) -> Option<Behavior> {
    Some(match name {
        "pr" => pr_box(),
        "box1" => box1(),
        "box2" => box2(),
        "box3" => box3(),
        "box4" => box4(),
        "box5" => box5(),
        "p_ms" => magic_square_behavior(),
        "p1" => magic_square_p1_p2().0,
        "p2" => magic_square_p1_p2().1,
        _ => return None,
    })
}

/// The nonzero value of an all-equal fixture table, if it has one.
pub fn uniform_nonzero_value(b: &Behavior) -> Option<rational::Rational> {
    let mut values = b.table().iter().filter(|v| **v != rational::zero());
    let first = values.next()?.clone();
    values.all(|v| *v == first).then_some(first)
}
