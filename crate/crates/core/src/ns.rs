//! The equality constraints cutting out the non-signaling polytope.

use crate::rational::{self, Rational};
use crate::scenario::Scenario;

/// How the per-`(x, y)` normalization enters a homogeneous system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Every block sums to zero: directions inside the affine hull.
    Zero,
    /// Every block has the same sum as block `(0, 0)`: the homogenized cone
    /// over the polytope.
    Equal,
}

/// Sparse homogeneous row `sum coeff * v[index] = 0`.
pub type SparseRow = Vec<(usize, i64)>;

pub fn equality_rows(s: Scenario, normalization: Normalization) -> Vec<SparseRow> {
    let (nx, ny, na, nb) = s.tuple();
    let mut rows = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            if normalization == Normalization::Equal && x == 0 && y == 0 {
                continue;
            }
            let mut row: SparseRow = Vec::new();
            for a in 0..na {
                for b in 0..nb {
                    row.push((s.index(x, y, a, b), 1));
                    if normalization == Normalization::Equal {
                        row.push((s.index(0, 0, a, b), -1));
                    }
                }
            }
            rows.push(row);
        }
    }
    for x in 0..nx {
        for a in 0..na {
            for y in 1..ny {
                let mut row: SparseRow = Vec::new();
                for b in 0..nb {
                    row.push((s.index(x, y, a, b), 1));
                    row.push((s.index(x, 0, a, b), -1));
                }
                rows.push(row);
            }
        }
    }
    for y in 0..ny {
        for b in 0..nb {
            for x in 1..nx {
                let mut row: SparseRow = Vec::new();
                for a in 0..na {
                    row.push((s.index(x, y, a, b), 1));
                    row.push((s.index(0, y, a, b), -1));
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Dense rational rows restricted to (and re-indexed by) `columns`.
pub fn dense_rows(rows: &[SparseRow], columns: &[usize], ncols_total: usize) -> Vec<Vec<Rational>> {
    let mut position = vec![usize::MAX; ncols_total];
    for (k, &c) in columns.iter().enumerate() {
        position[c] = k;
    }
    rows.iter()
        .map(|row| {
            let mut dense = vec![rational::zero(); columns.len()];
            for &(i, c) in row {
                if position[i] != usize::MAX {
                    dense[position[i]] += rational::int(c);
                }
            }
            dense
        })
        .filter(|r| r.iter().any(|v| *v != rational::zero()))
        .collect()
}

/// Whether `v` satisfies every homogeneous equality of the given kind.
pub fn satisfies(s: Scenario, normalization: Normalization, v: &[Rational]) -> bool {
    equality_rows(s, normalization).iter().all(|row| {
        rational::sum(
            &row.iter()
                .map(|&(i, c)| &v[i] * rational::int(c))
                .collect::<Vec<_>>(),
        ) == rational::zero()
    })
}
