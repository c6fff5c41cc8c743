//! Double description for pointed cones of the form
//! `{v in L : v_i >= 0 for i in I}`, `L` a linear subspace given by a basis.
//!
//! Rays are kept as primitive integer vectors in the ambient coordinates, so
//! every inequality is a coordinate sign test. Adjacency is decided
//! combinatorially on zero sets.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

pub const DEFAULT_MAX_RAYS: usize = 200_000;
/// Ambient dimension supported by the fixed-width zero sets.
pub const MAX_AMBIENT: usize = 256;

pub type Ray = Vec<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
struct ZeroSet([u64; 4]);

impl ZeroSet {
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet([
            self.0[0] & other.0[0],
            self.0[1] & other.0[1],
            self.0[2] & other.0[2],
            self.0[3] & other.0[3],
        ])
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        (0..4).all(|k| self.0[k] & !other.0[k] == 0)
    }

    fn len(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn to_ray(v: &[Rational]) -> Result<Ray> {
    rational::primitive_integer_vector(v)
        .into_iter()
        .map(|x| x.to_i128().ok_or(Error::Overflow("double-description ray")))
        .collect()
}

/// `a * p + b * n` with overflow checks, then made primitive.
fn combine(a: i128, p: &[i128], b: i128, n: &[i128]) -> Result<Ray> {
    let mut out = Vec::with_capacity(p.len());
    for (x, y) in p.iter().zip(n) {
        let v = a
            .checked_mul(*x)
            .and_then(|u| b.checked_mul(*y).and_then(|w| u.checked_add(w)))
            .ok_or(Error::Overflow("double-description ray"))?;
        out.push(v);
    }
    normalize(&mut out);
    Ok(out)
}

/// Extreme rays of `{v in span(basis) : v_i >= 0, i in nonnegative}`, sorted.
///
/// The cone must be pointed, i.e. the constrained coordinates must
/// determine `v` on the subspace.
pub fn extreme_rays(
    basis: &[Vec<Rational>],
    nonnegative: &[usize],
    max_rays: usize,
) -> Result<Vec<Ray>> {
    let dim = basis.len();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let ambient = basis[0].len();
    if ambient > MAX_AMBIENT {
        return Err(Error::GuardExceeded {
            what: "ambient dimension for double description",
            limit: MAX_AMBIENT,
        });
    }
    // coordinates giving a simplicial starting cone
    let restricted: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| nonnegative.iter().map(|&i| b[i].clone()).collect())
        .collect();
    let mut echelon = restricted.clone();
    let pivots = linalg::rref(&mut echelon, nonnegative.len());
    if pivots.len() < dim {
        return Err(Error::InvalidSpec(
            "cone is not pointed: constraints do not determine the subspace".into(),
        ));
    }
    let start: Vec<usize> = pivots.iter().map(|&p| nonnegative[p]).collect();
    // B[j][k] = basis[k][start[j]]; ray k = sum_k' (B^-1)[k'][k] basis[k']
    let mut augmented: Vec<Vec<Rational>> = (0..dim)
        .map(|j| {
            let mut row: Vec<Rational> = (0..dim).map(|k| basis[k][start[j]].clone()).collect();
            row.extend((0..dim).map(|k| {
                if k == j {
                    rational::one()
                } else {
                    rational::zero()
                }
            }));
            row
        })
        .collect();
    linalg::rref(&mut augmented, dim);
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    let mut zeros: Vec<ZeroSet> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut v = vec![rational::zero(); ambient];
        for (kp, b) in basis.iter().enumerate() {
            let coeff = &augmented[kp][dim + k];
            if coeff.is_zero() {
                continue;
            }
            for (vi, bi) in v.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *vi += coeff * bi;
                }
            }
        }
        let ray = to_ray(&v)?;
        let mut z = ZeroSet::default();
        for &i in &start {
            if ray[i] == 0 {
                z.insert(i);
            }
        }
        rays.push(ray);
        zeros.push(z);
    }
    let mut remaining: Vec<usize> = nonnegative
        .iter()
        .copied()
        .filter(|i| !start.contains(i))
        .collect();
    let needed = dim.saturating_sub(2) as u32;
    while !remaining.is_empty() {
        // next constraint: fewest new pairs
        let (slot, _) = remaining
            .iter()
            .enumerate()
            .map(|(slot, &i)| {
                let pos = rays.iter().filter(|r| r[i] > 0).count();
                let neg = rays.iter().filter(|r| r[i] < 0).count();
                (slot, pos * neg + neg.min(1))
            })
            .min_by_key(|&(slot, cost)| (cost, remaining[slot]))
            .expect("remaining is nonempty");
        let i = remaining.remove(slot);
        let mut next_rays = Vec::with_capacity(rays.len());
        let mut next_zeros = Vec::with_capacity(rays.len());
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (k, r) in rays.iter().enumerate() {
            match r[i].signum() {
                1 => positive.push(k),
                -1 => negative.push(k),
                _ => {}
            }
            if r[i] >= 0 {
                let mut z = zeros[k];
                if r[i] == 0 {
                    z.insert(i);
                }
                next_rays.push(r.clone());
                next_zeros.push(z);
            }
        }
        for &p in &positive {
            for &n in &negative {
                let common = zeros[p].and(&zeros[n]);
                if common.len() < needed {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).all(|t| t == p || t == n || !common.is_subset_of(&zeros[t]));
                if !adjacent {
                    continue;
                }
                let ray = combine(rays[p][i], &rays[n], -rays[n][i], &rays[p])?;
                let mut z = common;
                z.insert(i);
                next_rays.push(ray);
                next_zeros.push(z);
                if next_rays.len() > max_rays {
                    return Err(Error::GuardExceeded {
                        what: "double-description rays",
                        limit: max_rays,
                    });
                }
            }
        }
        rays = next_rays;
        zeros = next_zeros;
    }
    rays.sort();
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn basis(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn orthant_and_square_cone() {
        let b = basis(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let rays = extreme_rays(&b, &[0, 1, 2], 100).unwrap();
        assert_eq!(rays, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        // cone over a square: z +- x >= 0, z +- y >= 0 in coordinates
        // (z+x, z-x, z+y, z-y) of the 3-dimensional subspace
        let b = basis(&[&[1, -1, 0, 0], &[0, 0, 1, -1], &[1, 1, 1, 1]]);
        let rays = extreme_rays(&b, &[0, 1, 2, 3], 100).unwrap();
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert!(r.iter().all(|&v| v >= 0));
            assert_eq!(r.iter().filter(|&&v| v == 0).count(), 2);
        }
    }

    #[test]
    fn lineality_is_rejected() {
        let b = basis(&[&[1, 0], &[0, 1]]);
        assert!(extreme_rays(&b, &[0], 100).is_err());
    }
}
