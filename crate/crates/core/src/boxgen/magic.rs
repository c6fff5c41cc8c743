//! Two-ququart realization of the magic-square correlations.

use crate::behavior::Behavior;
use crate::rational::{self, Rational};
use crate::scenario::Scenario;

/// Real rank-one measurements on the state `(1/2) sum_i |ii>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumRealization {
    pub dimension: usize,
    /// `alice_vectors[x][a]` spans the projector for outcome `a` of input `x`.
    pub alice_vectors: Vec<Vec<[i64; 4]>>,
    pub bob_vectors: Vec<Vec<[i64; 4]>>,
}

impl QuantumRealization {
    pub fn peres_mermin() -> Self {
        let alice = vec![
            vec![[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            vec![[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]],
            vec![[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]],
        ];
        let bob = vec![
            vec![[1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1]],
            vec![[1, 0, 1, 0], [1, 0, -1, 0], [0, 1, 0, 1], [0, 1, 0, -1]],
            vec![[1, 0, 0, -1], [1, 0, 0, 1], [0, 1, -1, 0], [0, 1, 1, 0]],
        ];
        QuantumRealization {
            dimension: 4,
            alice_vectors: alice,
            bob_vectors: bob,
        }
    }

    /// Whether the vectors of every input are pairwise orthogonal and nonzero.
    pub fn bases_are_orthogonal(&self) -> bool {
        self.alice_vectors
            .iter()
            .chain(&self.bob_vectors)
            .all(|basis| {
                basis.iter().enumerate().all(|(i, u)| {
                    basis.iter().enumerate().all(|(j, w)| {
                        let d = dot(u, w);
                        if i == j {
                            d > 0
                        } else {
                            d == 0
                        }
                    })
                })
            })
    }

    /// `p(ab|xy) = (1/4) <u, w>^2 / (|u|^2 |w|^2)`.
    pub fn behavior(&self) -> Behavior {
        let s = Scenario::new(
            self.alice_vectors.len(),
            self.bob_vectors.len(),
            self.alice_vectors[0].len(),
            self.bob_vectors[0].len(),
        )
        .expect("realization has at least two inputs and outcomes");
        let mut table = vec![rational::zero(); s.table_len()];
        for (x, alice) in self.alice_vectors.iter().enumerate() {
            for (y, bob) in self.bob_vectors.iter().enumerate() {
                for (a, u) in alice.iter().enumerate() {
                    for (b, w) in bob.iter().enumerate() {
                        let overlap = dot(u, w);
                        let norms = dot(u, u) * dot(w, w);
                        table[s.index(x, y, a, b)] =
                            Rational::new((overlap * overlap).into(), (4 * norms).into());
                    }
                }
            }
        }
        Behavior::new(s, table).expect("table has scenario shape")
    }
}

fn dot(u: &[i64; 4], w: &[i64; 4]) -> i64 {
    u.iter().zip(w).map(|(a, b)| a * b).sum()
}

pub fn quantum_realization() -> Behavior {
    QuantumRealization::peres_mermin().behavior()
}
