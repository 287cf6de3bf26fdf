//! Lattice points by depth-first search over the region coordinates.
//!
//! Coordinates are assigned in row-major order. Each one is bounded by the
//! forms it occurs in, with unassigned coordinates replaced by their best
//! case, and by a budget on the coordinate sums: per column for `B(λ)`
//! (`λ − w₀λ` in root coordinates bounds every content), in total for a
//! truncation of `B(∞)`. Each form is checked exactly once its last
//! coordinate is assigned.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::zcrystal::ZVector;

use super::{Object, Polyhedron};

struct Constraint {
    constant: i64,
    /// `(variable, coefficient)` sorted by variable.
    terms: Vec<(usize, i64)>,
}

struct Search {
    rank: usize,
    positions: Vec<usize>,
    group: Vec<usize>,
    budget: Vec<i64>,
    constraints: Vec<Constraint>,
    by_var: Vec<Vec<(usize, i64)>>,
    // Mutable state.
    values: Vec<i64>,
    acc: Vec<i64>,
    spent: Vec<i64>,
    out: BTreeSet<ZVector>,
    cap: usize,
}

impl Search {
    fn remaining(&self, g: usize) -> i64 {
        self.budget[g] - self.spent[g]
    }

    fn bounds(&self, v: usize) -> (i64, i64) {
        let mut lo = 0;
        let mut hi = self.remaining(self.group[v]);
        for &(ci, a) in &self.by_var[v] {
            let c = &self.constraints[ci];
            let best_rest: i64 = c
                .terms
                .iter()
                .filter(|&&(u, b)| u > v && b > 0)
                .map(|&(u, b)| b * self.remaining(self.group[u]))
                .sum();
            let slack = self.acc[ci] + best_rest;
            if a > 0 {
                lo = lo.max(div_ceil(-slack, a));
            } else {
                hi = hi.min(slack.div_euclid(-a));
            }
            if lo > hi {
                break;
            }
        }
        (lo, hi)
    }

    fn assign(&mut self, v: usize, delta: i64) {
        self.values[v] += delta;
        self.spent[self.group[v]] += delta;
        for k in 0..self.by_var[v].len() {
            let (ci, a) = self.by_var[v][k];
            self.acc[ci] += a * delta;
        }
    }

    fn run(&mut self, v: usize) -> Result<()> {
        if v == self.positions.len() {
            if self.out.len() >= self.cap {
                return Err(Error::EnumerationCap(self.cap));
            }
            let mut x = ZVector::zero(self.rank);
            for (k, &val) in self.values.iter().enumerate() {
                if val != 0 {
                    x.add_at(self.positions[k], val);
                }
            }
            self.out.insert(x);
            return Ok(());
        }
        let (lo, hi) = self.bounds(v);
        if lo > hi {
            return Ok(());
        }
        self.assign(v, lo);
        for val in lo..=hi {
            if val > lo {
                self.assign(v, 1);
            }
            self.run(v + 1)?;
        }
        self.assign(v, -hi);
        Ok(())
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

impl Polyhedron {
    /// Every lattice point of the `B(λ)` polyhedron at its bound `λ`.
    pub fn enumerate_blambda(&self, limits: &Limits) -> Result<BTreeSet<ZVector>> {
        let Object::Blambda(lambda) = &self.object else {
            return Err(Error::Invalid(
                "enumerate_blambda needs a B(λ) polyhedron".into(),
            ));
        };
        let depth = self.cartan().lowest_weight_depth(lambda)?;
        let n = self.cartan().rank;
        self.search((0..n).collect(), depth, limits)
    }

    /// Every lattice point of the `B(∞)` polyhedron with coordinate sum at
    /// most `depth`.
    pub fn enumerate_binf_truncated(
        &self,
        depth: usize,
        limits: &Limits,
    ) -> Result<BTreeSet<ZVector>> {
        if self.object != Object::Binf {
            return Err(Error::Invalid(
                "enumerate_binf_truncated needs a B(∞) polyhedron".into(),
            ));
        }
        let n = self.cartan().rank;
        self.search(vec![0; n], vec![depth as i64], limits)
    }

    /// `column_group[c]` selects which budget column `c + 1` draws from.
    fn search(
        &self,
        column_group: Vec<usize>,
        budget: Vec<i64>,
        limits: &Limits,
    ) -> Result<BTreeSet<ZVector>> {
        let n = self.cartan().rank;
        let lambda = self.object.lambda();
        let positions = self.nonzero_positions();
        let var_of = |p: crate::zcrystal::Pos| positions.binary_search(&p).ok();
        let mut constraints = Vec::new();
        for f in self.forms().iter() {
            let terms: Vec<(usize, i64)> = f
                .coeffs()
                .iter()
                .filter_map(|&(p, c)| var_of(p).map(|v| (v, c)))
                .collect();
            let constant = f.constant_at(lambda);
            if terms.is_empty() {
                if constant < 0 {
                    return Ok(BTreeSet::new());
                }
                continue;
            }
            constraints.push(Constraint { constant, terms });
        }
        let mut by_var = vec![Vec::new(); positions.len()];
        for (ci, c) in constraints.iter().enumerate() {
            for &(v, a) in &c.terms {
                by_var[v].push((ci, a));
            }
        }
        let mut search = Search {
            rank: n,
            group: positions.iter().map(|p| column_group[p.col - 1]).collect(),
            positions: positions.iter().map(|p| p.flat(n)).collect(),
            spent: vec![0; budget.len()],
            budget,
            acc: constraints.iter().map(|c| c.constant).collect(),
            constraints,
            by_var,
            values: vec![0; positions.len()],
            out: BTreeSet::new(),
            cap: limits.enumeration_cap,
        };
        search.run(0)?;
        Ok(search.out)
    }
}
