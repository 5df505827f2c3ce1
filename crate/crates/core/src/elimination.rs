//! Exact Fourier-Motzkin elimination for small systems `a . x + b >= 0`.
//!
//! Rows are kept as primitive integer vectors. Chernikov's rule discards a
//! combined row once it depends on more than `k + 1` input rows after `k`
//! eliminations; such rows are implied by the others.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    coeffs: Vec<BigInt>,
    constant: BigInt,
    history: BTreeSet<usize>,
}

impl Row {
    fn normalize(&mut self) {
        let g = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && g != BigInt::from(1) {
            self.coeffs.iter_mut().for_each(|c| *c /= &g);
            self.constant /= &g;
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// A conjunction of non-strict affine inequalities over the rationals.
#[derive(Clone, Debug, Default)]
pub struct InequalitySystem {
    variables: usize,
    rows: Vec<Row>,
}

impl InequalitySystem {
    pub fn new(variables: usize) -> Self {
        Self {
            variables,
            rows: Vec::new(),
        }
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `coeffs . x + constant >= 0`.
    pub fn push(&mut self, coeffs: &[Q], constant: Q) {
        assert_eq!(coeffs.len(), self.variables, "coefficient count");
        let den = coeffs
            .iter()
            .chain(std::iter::once(&constant))
            .fold(1i64, |acc, q| acc.lcm(q.denom()));
        let scale = |q: &Q| BigInt::from(q.numer() * (den / q.denom()));
        let mut row = Row {
            coeffs: coeffs.iter().map(scale).collect(),
            constant: scale(&constant),
            history: BTreeSet::from([self.rows.len()]),
        };
        row.normalize();
        self.rows.push(row);
    }

    /// Decides whether some rational point satisfies every row.
    pub fn is_feasible(&self) -> bool {
        let mut rows = self.rows.clone();
        let mut remaining: Vec<usize> = (0..self.variables).collect();
        let mut eliminated = 0usize;
        loop {
            // Constant rows are decided immediately.
            let mut live = Vec::with_capacity(rows.len());
            for row in rows {
                if row.is_constant() {
                    if row.constant.is_negative() {
                        return false;
                    }
                } else {
                    live.push(row);
                }
            }
            rows = live;
            if rows.is_empty() || remaining.is_empty() {
                return true;
            }
            // Cheapest variable first: fewest new rows.
            let (pos_idx, &var) = remaining
                .iter()
                .enumerate()
                .min_by_key(|(_, &v)| {
                    let p = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                    let n = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                    p * n
                })
                .expect("non-empty");
            remaining.remove(pos_idx);
            eliminated += 1;

            let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
            for row in rows {
                if row.coeffs[var].is_positive() {
                    pos.push(row);
                } else if row.coeffs[var].is_negative() {
                    neg.push(row);
                } else {
                    next.push(row);
                }
            }
            for p in &pos {
                for q in &neg {
                    let history: BTreeSet<usize> = p.history.union(&q.history).copied().collect();
                    if history.len() > eliminated + 1 {
                        continue;
                    }
                    let (wp, wq) = (-&q.coeffs[var], p.coeffs[var].clone());
                    let mut row = Row {
                        coeffs: p
                            .coeffs
                            .iter()
                            .zip(&q.coeffs)
                            .map(|(a, b)| a * &wp + b * &wq)
                            .collect(),
                        constant: &p.constant * &wp + &q.constant * &wq,
                        history,
                    };
                    row.normalize();
                    next.push(row);
                }
            }
            rows = dedupe(next);
        }
    }
}

/// Identical coefficient vectors keep only the tightest constant.
fn dedupe(rows: Vec<Row>) -> Vec<Row> {
    let mut best: BTreeMap<Vec<BigInt>, Row> = BTreeMap::new();
    for row in rows {
        match best.get(&row.coeffs) {
            Some(existing) if existing.constant <= row.constant => {}
            _ => {
                best.insert(row.coeffs.clone(), row);
            }
        }
    }
    best.into_values().collect()
}
