//! Finite abelian subgroups of SL_n given by cyclic weights, their character
//! groups, and the weight map on monomials.
//!
//! A group is `Z/r_1 x ... x Z/r_s` acting diagonally: the generator of the
//! j-th factor multiplies coordinate `i` by `xi_j^{a[j][i]}`. Characters are
//! residue tuples, and the weight of `x^m` is `(sum_i a[j][i] m_i mod r_j)_j`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An element of the dual group, stored as one residue per cyclic factor.
///
/// Ordering is lexicographic on the residues, which is the vertex order used
/// by every table and DOT file.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(pub Vec<u32>);

impl Character {
    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Stable vertex name, `chi_1_1` for `(1, 1)`.
    pub fn name(&self) -> String {
        let mut s = String::from("chi");
        for c in &self.0 {
            s.push('_');
            s.push_str(&c.to_string());
        }
        s
    }
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent vector of a monomial `x^m` with `m >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        Monomial(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupData {
    factor_orders: Vec<u32>,
    weights: Vec<Vec<u32>>,
}

impl GroupData {
    /// Validates the weight data, including the SL condition
    /// `sum_i a[j][i] = 0 mod r_j` for every factor.
    pub fn new(factor_orders: Vec<u32>, weights: Vec<Vec<u32>>) -> Result<Self> {
        if factor_orders.is_empty() {
            return Err(Error::InvalidGroup(
                "at least one cyclic factor is required".into(),
            ));
        }
        if factor_orders.len() != weights.len() {
            return Err(Error::InvalidGroup(format!(
                "{} factor orders but {} weight rows",
                factor_orders.len(),
                weights.len()
            )));
        }
        let n = weights[0].len();
        if n == 0 {
            return Err(Error::InvalidGroup("dimension must be at least 1".into()));
        }
        for (j, (&r, row)) in factor_orders.iter().zip(&weights).enumerate() {
            if r == 0 {
                return Err(Error::InvalidGroup(format!("factor {} has order 0", j + 1)));
            }
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&a| a >= r) {
                return Err(Error::InvalidGroup(format!(
                    "weight {bad} of factor {} is not reduced mod {r}",
                    j + 1
                )));
            }
            let total: u64 = row.iter().map(|&a| a as u64).sum();
            if !total.is_multiple_of(r as u64) {
                return Err(Error::InvalidGroup(format!(
                    "factor {} violates the SL condition: weights sum to {total}, not 0 mod {r}",
                    j + 1
                )));
            }
        }
        Ok(Self {
            factor_orders,
            weights,
        })
    }

    /// The trivial group acting on `C^n`.
    pub fn trivial(n: usize) -> Self {
        Self::new(vec![1], vec![vec![0; n]]).expect("trivial group is valid")
    }

    /// The cyclic group `1/r(a_1, ..., a_n)`.
    pub fn cyclic(r: u32, weights: Vec<u32>) -> Result<Self> {
        Self::new(vec![r], vec![weights])
    }

    pub fn dimension(&self) -> usize {
        self.weights[0].len()
    }

    pub fn factor_orders(&self) -> &[u32] {
        &self.factor_orders
    }

    pub fn weights(&self) -> &[Vec<u32>] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.factor_orders.iter().map(|&r| r as usize).product()
    }

    pub fn identity(&self) -> Character {
        Character(vec![0; self.factor_orders.len()])
    }

    /// All characters in lexicographic order.
    pub fn characters(&self) -> Vec<Character> {
        (0..self.order()).map(|i| self.character_at(i)).collect()
    }

    /// Mixed-radix position of a character in [`GroupData::characters`].
    pub fn index_of(&self, chi: &Character) -> usize {
        chi.0
            .iter()
            .zip(&self.factor_orders)
            .fold(0, |acc, (&c, &r)| acc * r as usize + c as usize)
    }

    pub fn character_at(&self, mut index: usize) -> Character {
        let mut comps = vec![0; self.factor_orders.len()];
        for (slot, &r) in comps.iter_mut().zip(&self.factor_orders).rev() {
            *slot = (index % r as usize) as u32;
            index /= r as usize;
        }
        Character(comps)
    }

    pub fn contains(&self, chi: &Character) -> bool {
        chi.0.len() == self.factor_orders.len()
            && chi.0.iter().zip(&self.factor_orders).all(|(&c, &r)| c < r)
    }

    pub fn mul(&self, a: &Character, b: &Character) -> Character {
        Character(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factor_orders)
                .map(|((&x, &y), &r)| (x + y) % r)
                .collect(),
        )
    }

    pub fn inv(&self, a: &Character) -> Character {
        Character(
            a.0.iter()
                .zip(&self.factor_orders)
                .map(|(&x, &r)| (r - x % r) % r)
                .collect(),
        )
    }

    pub fn pow(&self, a: &Character, k: u64) -> Character {
        Character(
            a.0.iter()
                .zip(&self.factor_orders)
                .map(|(&x, &r)| ((x as u64 * k) % r as u64) as u32)
                .collect(),
        )
    }

    /// Order of a character in the dual group.
    pub fn character_order(&self, a: &Character) -> u32 {
        let mut k = 1;
        let mut cur = a.clone();
        while !cur.is_trivial() {
            cur = self.mul(&cur, a);
            k += 1;
        }
        k
    }

    /// Weight of the monomial `x^m`.
    pub fn rho(&self, m: &Monomial) -> Result<Character> {
        if m.0.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: m.0.len(),
            });
        }
        Ok(self.rho_exponents(&m.0))
    }

    pub(crate) fn rho_exponents(&self, m: &[u32]) -> Character {
        Character(
            self.weights
                .iter()
                .zip(&self.factor_orders)
                .map(|(row, &r)| {
                    let s: u64 = row.iter().zip(m).map(|(&a, &e)| a as u64 * e as u64).sum();
                    (s % r as u64) as u32
                })
                .collect(),
        )
    }

    /// Weight of the coordinate function `x_k` (0-based).
    pub fn coordinate_weight(&self, k: usize) -> Character {
        Character(self.weights.iter().map(|row| row[k]).collect())
    }

    /// Order of `rho(x_k)` (0-based `k`): `x_k^o` is the smallest invariant power.
    pub fn coordinate_weight_order(&self, k: usize) -> u32 {
        self.character_order(&self.coordinate_weight(k))
    }

    /// Size of the subgroup of characters generated by the coordinate weights.
    /// Equals `|G|` exactly when the weight data describe a faithful action.
    pub fn image_size(&self) -> usize {
        let mut seen = vec![false; self.order()];
        let mut stack = vec![self.identity()];
        seen[0] = true;
        let mut count = 1;
        while let Some(chi) = stack.pop() {
            for k in 0..self.dimension() {
                let next = self.mul(&chi, &self.coordinate_weight(k));
                let idx = self.index_of(&next);
                if !seen[idx] {
                    seen[idx] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        count
    }
}
