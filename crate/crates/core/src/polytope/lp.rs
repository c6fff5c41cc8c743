//! Two-phase revised simplex over the rationals.
//!
//! Solves `max c.x` subject to `A x = rhs`, `x >= 0`. Columns are sparse; the
//! basis inverse is kept dense. Pricing is Dantzig's rule with lowest-index
//! tie-break, falling back to Bland's rule after a run of degenerate pivots,
//! which guarantees termination.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub const DEFAULT_MAX_PIVOTS: usize = 1_000_000;
pub const DEFAULT_MAX_ENTRIES: usize = 50_000_000;
const DEGENERATE_RUN_BEFORE_BLAND: usize = 50;

#[derive(Clone, Debug)]
pub struct LinearProgram {
    rows: usize,
    columns: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
    cost: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        x: Vec<Rational>,
        /// `y` with `y.A_j >= c_j` for every column and `y.rhs = value`.
        duals: Vec<Rational>,
    },
    /// `y` with `y.A_j <= 0` for every column and `y.rhs > 0`.
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded,
}

impl LinearProgram {
    pub fn new(rows: usize) -> Self {
        LinearProgram {
            rows,
            columns: Vec::new(),
            rhs: vec![rational::zero(); rows],
            cost: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn columns(&self) -> usize {
        self.columns.len()
    }

    /// Adds a column; zero entries are dropped. Returns its index.
    pub fn add_column(&mut self, entries: Vec<(usize, Rational)>, cost: Rational) -> usize {
        let entries = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.columns.push(entries);
        self.cost.push(cost);
        self.columns.len() - 1
    }

    pub fn set_rhs(&mut self, row: usize, value: Rational) {
        self.rhs[row] = value;
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        self.solve_with_limits(DEFAULT_MAX_PIVOTS, DEFAULT_MAX_ENTRIES)
    }

    pub fn solve_with_limits(&self, max_pivots: usize, max_entries: usize) -> Result<LpOutcome> {
        if self.rows.saturating_mul(self.columns.len() + self.rows) > max_entries {
            return Err(Error::GuardExceeded {
                what: "LP tableau entries",
                limit: max_entries,
            });
        }
        Simplex::new(self, max_pivots).run()
    }
}

struct Simplex<'a> {
    lp: &'a LinearProgram,
    m: usize,
    n: usize,
    /// Row sign flips making the right-hand side nonnegative.
    sign: Vec<bool>,
    /// Integer-scaled columns: `A_j = ints / den` (row signs applied).
    ints: Vec<Vec<(usize, BigInt)>>,
    dens: Vec<BigInt>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
    binv: Vec<Vec<Rational>>,
    xb: Vec<Rational>,
    pivots: usize,
    max_pivots: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl<'a> Simplex<'a> {
    fn new(lp: &'a LinearProgram, max_pivots: usize) -> Self {
        let m = lp.rows;
        let n = lp.columns.len();
        let sign: Vec<bool> = lp.rhs.iter().map(|r| r.is_negative()).collect();
        let mut ints = Vec::with_capacity(n + m);
        let mut dens = Vec::with_capacity(n + m);
        for col in &lp.columns {
            let den = rational::common_denominator(col.iter().map(|(_, v)| v));
            ints.push(
                col.iter()
                    .map(|(r, v)| {
                        let scaled = (v * Rational::from_integer(den.clone())).to_integer();
                        (*r, if sign[*r] { -scaled } else { scaled })
                    })
                    .collect(),
            );
            dens.push(den);
        }
        for i in 0..m {
            ints.push(vec![(i, BigInt::one())]);
            dens.push(BigInt::one());
        }
        let mut binv = vec![vec![rational::zero(); m]; m];
        for (i, row) in binv.iter_mut().enumerate() {
            row[i] = rational::one();
        }
        let xb = lp.rhs.iter().map(|r| r.abs()).collect();
        let mut position = vec![None; n + m];
        for i in 0..m {
            position[n + i] = Some(i);
        }
        Simplex {
            lp,
            m,
            n,
            sign,
            ints,
            dens,
            basis: (n..n + m).collect(),
            position,
            binv,
            xb,
            pivots: 0,
            max_pivots,
        }
    }

    fn column(&self, j: usize) -> Vec<Rational> {
        let den = Rational::from_integer(self.dens[j].clone());
        let mut u = vec![rational::zero(); self.m];
        for (r, v) in &self.ints[j] {
            let a = Rational::from_integer(v.clone()) / &den;
            for (i, ui) in u.iter_mut().enumerate() {
                if !self.binv[i][*r].is_zero() {
                    *ui += &self.binv[i][*r] * &a;
                }
            }
        }
        u
    }

    fn duals(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut y = vec![rational::zero(); self.m];
        for (i, &bj) in self.basis.iter().enumerate() {
            if cost[bj].is_zero() {
                continue;
            }
            for (k, yk) in y.iter_mut().enumerate() {
                if !self.binv[i][k].is_zero() {
                    *yk += &cost[bj] * &self.binv[i][k];
                }
            }
        }
        y
    }

    /// One pricing and pivot step for `max cost.x` over the allowed columns.
    fn step(&mut self, cost: &[Rational], allow_artificial: bool, bland: bool) -> Result<Step> {
        let y = self.duals(cost);
        let scale = rational::common_denominator(y.iter());
        let scale_q = Rational::from_integer(scale.clone());
        let y_int: Vec<BigInt> = y.iter().map(|v| (v * &scale_q).to_integer()).collect();
        let limit = if allow_artificial {
            self.n + self.m
        } else {
            self.n
        };
        let mut entering: Option<(usize, Rational)> = None;
        for j in 0..limit {
            if self.position[j].is_some() {
                continue;
            }
            let mut s = BigInt::zero();
            for (r, v) in &self.ints[j] {
                if !y_int[*r].is_zero() {
                    s += &y_int[*r] * v;
                }
            }
            if cost[j].is_zero() && !s.is_negative() {
                continue;
            }
            let d = &cost[j] - Rational::new(s, &scale * &self.dens[j]);
            if !d.is_positive() {
                continue;
            }
            if bland {
                entering = Some((j, d));
                break;
            }
            if entering.as_ref().is_none_or(|(_, best)| d > *best) {
                entering = Some((j, d));
            }
        }
        let Some((j, _)) = entering else {
            return Ok(Step::Optimal);
        };
        let u = self.column(j);
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..self.m {
            if !u[i].is_positive() {
                continue;
            }
            let ratio = &self.xb[i] / &u[i];
            let better = match &leave {
                None => true,
                Some((k, best)) => {
                    ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Ok(Step::Unbounded);
        };
        self.pivot(r, j, &u)?;
        Ok(Step::Pivoted)
    }

    fn pivot(&mut self, r: usize, j: usize, u: &[Rational]) -> Result<()> {
        self.pivots += 1;
        if self.pivots > self.max_pivots {
            return Err(Error::GuardExceeded {
                what: "simplex pivots",
                limit: self.max_pivots,
            });
        }
        let inv = rational::one() / &u[r];
        for v in self.binv[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.xb[r] *= &inv;
        let pivot_row = self.binv[r].clone();
        let pivot_x = self.xb[r].clone();
        for i in 0..self.m {
            if i == r || u[i].is_zero() {
                continue;
            }
            for (k, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    self.binv[i][k] -= &u[i] * pv;
                }
            }
            if !pivot_x.is_zero() {
                self.xb[i] -= &u[i] * &pivot_x;
            }
        }
        let old = self.basis[r];
        self.position[old] = None;
        self.basis[r] = j;
        self.position[j] = Some(r);
        Ok(())
    }

    fn optimize(&mut self, cost: &[Rational], allow_artificial: bool) -> Result<bool> {
        let mut degenerate_run = 0;
        loop {
            let before = self.objective(cost);
            let bland = degenerate_run >= DEGENERATE_RUN_BEFORE_BLAND;
            match self.step(cost, allow_artificial, bland)? {
                Step::Optimal => return Ok(true),
                Step::Unbounded => return Ok(false),
                Step::Pivoted => {
                    if self.objective(cost) == before {
                        degenerate_run += 1;
                    } else {
                        degenerate_run = 0;
                    }
                }
            }
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.xb)
            .filter(|(&j, x)| !cost[j].is_zero() && !x.is_zero())
            .map(|(&j, x)| &cost[j] * x)
            .sum()
    }

    /// Maps duals of the sign-normalized rows back to the original rows.
    fn unflip(&self, y: Vec<Rational>) -> Vec<Rational> {
        y.into_iter()
            .zip(&self.sign)
            .map(|(v, &flip)| if flip { -v } else { v })
            .collect()
    }

    fn drive_out_artificials(&mut self) -> Result<()> {
        for r in 0..self.m {
            if self.basis[r] < self.n {
                continue;
            }
            let mut found = None;
            for j in 0..self.n {
                if self.position[j].is_some() {
                    continue;
                }
                let den = Rational::from_integer(self.dens[j].clone());
                let mut v = rational::zero();
                for (row, a) in &self.ints[j] {
                    if !self.binv[r][*row].is_zero() {
                        v += &self.binv[r][*row] * Rational::from_integer(a.clone()) / &den;
                    }
                }
                if !v.is_zero() {
                    found = Some(j);
                    break;
                }
            }
            if let Some(j) = found {
                let u = self.column(j);
                self.pivot(r, j, &u)?;
            }
        }
        Ok(())
    }

    fn run(mut self) -> Result<LpOutcome> {
        let total = self.n + self.m;
        let mut phase1 = vec![rational::zero(); total];
        for c in phase1.iter_mut().skip(self.n) {
            *c = -rational::one();
        }
        self.optimize(&phase1, false)?;
        if !self.objective(&phase1).is_zero() {
            let y = self.duals(&phase1);
            // phase-1 duals satisfy y.A_j >= 0 and y.rhs < 0
            let farkas = self.unflip(y.into_iter().map(|v| -v).collect());
            return Ok(LpOutcome::Infeasible { farkas });
        }
        self.drive_out_artificials()?;
        let mut phase2 = self.lp.cost.clone();
        phase2.extend((0..self.m).map(|_| rational::zero()));
        if !self.optimize(&phase2, false)? {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![rational::zero(); self.n];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.n {
                x[j] = self.xb[i].clone();
            }
        }
        let value = self.objective(&phase2);
        let duals = self.unflip(self.duals(&phase2));
        Ok(LpOutcome::Optimal { value, x, duals })
    }
}

/// `y.A_j` for column `j` of `lp`.
pub fn column_dot(lp: &LinearProgram, j: usize, y: &[Rational]) -> Rational {
    lp.columns[j].iter().map(|(r, v)| &y[*r] * v).sum()
}

pub fn rhs_dot(lp: &LinearProgram, y: &[Rational]) -> Rational {
    rational::dot(&lp.rhs, y)
}
