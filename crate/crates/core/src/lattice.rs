//! The overlattice `N = Z^n + sum_j Z a_j / r_j` of one-parameter subgroups.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::rational::{determinant, fractional_part, solve_in_basis, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeN {
    group: GroupData,
    /// Rows form a Z-basis of N (Hermite form of the generating set).
    basis: Vec<Vec<Q>>,
    covolume: Q,
}

impl LatticeN {
    pub fn new(group: GroupData) -> Self {
        let n = group.dimension();
        let scale = group
            .factor_orders()
            .iter()
            .fold(1i128, |acc, &r| acc.lcm(&(r as i128)));
        let mut generators: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|k| if k == i { scale } else { 0 }).collect())
            .collect();
        for (row, &r) in group.weights().iter().zip(group.factor_orders()) {
            generators.push(row.iter().map(|&a| a as i128 * scale / r as i128).collect());
        }
        let basis: Vec<Vec<Q>> = hermite_rows(generators, n)
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| Q::new(x as i64, scale as i64))
                    .collect()
            })
            .collect();
        let covolume = determinant(&basis);
        Self {
            group,
            basis,
            covolume,
        }
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.group.dimension()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    /// Index of `Z^n` in `N`.
    pub fn index(&self) -> Q {
        Q::one() / self.covolume.abs()
    }

    /// Coordinates of `v` with respect to the Z-basis of N.
    pub fn coordinates(&self, v: &[Q]) -> Result<Vec<Q>> {
        self.check_dim(v)?;
        Ok(solve_in_basis(&self.basis, v).expect("lattice basis is non-singular"))
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v)
            .map(|c| c.iter().all(|x| x.is_integer()))
            .unwrap_or(false)
    }

    /// Membership by enumerating the coset representatives `sum_j c_j a_j / r_j`,
    /// independent of the Hermite basis.
    pub fn contains_by_enumeration(&self, v: &[Q]) -> bool {
        if v.len() != self.dimension() {
            return false;
        }
        self.coset_representatives()
            .iter()
            .any(|rep| rep.iter().zip(v).all(|(a, b)| (b - a).is_integer()))
    }

    /// Fractional parts of `sum_j c_j a_j / r_j` over all `c_j mod r_j`; these are
    /// exactly the points of N in the half-open unit cube.
    pub fn coset_representatives(&self) -> Vec<Vec<Q>> {
        let g = &self.group;
        let n = g.dimension();
        let mut out = Vec::with_capacity(g.order());
        for chi in g.characters() {
            let v: Vec<Q> = (0..n)
                .map(|i| {
                    let s = chi
                        .components()
                        .iter()
                        .zip(g.weights())
                        .zip(g.factor_orders())
                        .fold(Q::zero(), |acc, ((&c, row), &r)| {
                            acc + Q::new(c as i64 * row[i] as i64, r as i64)
                        });
                    fractional_part(&s)
                })
                .collect();
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// `v` lies in N and is not a proper positive multiple of another element of N.
    pub fn is_primitive(&self, v: &[Q]) -> bool {
        match self.coordinates(v) {
            Ok(c) if c.iter().all(|x| x.is_integer()) => {
                let g = c.iter().fold(0i64, |acc, x| acc.gcd(&x.to_integer()));
                g == 1
            }
            _ => false,
        }
    }

    /// The primitive element of N on the ray spanned by a non-zero rational vector.
    pub fn primitive_on_ray(&self, v: &[Q]) -> Result<Vec<Q>> {
        let c = self.coordinates(v)?;
        if c.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidFan("zero vector spans no ray".into()));
        }
        let den = c.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let ints: Vec<i64> = c.iter().map(|x| (x * den).to_integer()).collect();
        let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
        let scale = Q::new(den, g);
        Ok(v.iter().map(|x| x * scale).collect())
    }

    /// Determinant of `n` vectors measured in the Z-basis of N; a simplicial cone is
    /// basic exactly when this is `±1`.
    pub fn normalized_determinant(&self, vectors: &[Vec<Q>]) -> Result<Q> {
        if vectors.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: vectors.len(),
            });
        }
        for v in vectors {
            self.check_dim(v)?;
        }
        Ok(determinant(vectors) / self.covolume)
    }

    fn check_dim(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: v.len(),
            });
        }
        Ok(())
    }
}

/// Row-style Hermite reduction of an integer generating set of a full-rank
/// lattice in `Z^n`; returns `n` basis rows in echelon form.
fn hermite_rows(mut rows: Vec<Vec<i128>>, n: usize) -> Vec<Vec<i128>> {
    let mut basis = Vec::with_capacity(n);
    for col in 0..n {
        // Euclid on the column until a single row carries a non-zero entry.
        loop {
            let mut live: Vec<usize> = (0..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if live.len() <= 1 {
                break;
            }
            live.sort_by_key(|&r| rows[r][col].abs());
            let p = live[0];
            let pivot = rows[p].clone();
            for &r in &live[1..] {
                let q = rows[r][col].div_euclid(pivot[col]);
                for k in 0..n {
                    rows[r][k] -= q * pivot[k];
                }
            }
        }
        let Some(p) = rows.iter().position(|row| row[col] != 0) else {
            continue;
        };
        let mut pivot = rows.swap_remove(p);
        if pivot[col] < 0 {
            pivot.iter_mut().for_each(|x| *x = -*x);
        }
        basis.push(pivot);
        rows.retain(|row| row.iter().any(|&x| x != 0));
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn paper_lattice() -> LatticeN {
        LatticeN::new(GroupData::new(vec![6, 2], vec![vec![1, 1, 4], vec![1, 0, 1]]).unwrap())
    }

    #[test]
    fn index_equals_group_order() {
        assert_eq!(paper_lattice().index(), Q::from_integer(12));
        let one_third = LatticeN::new(GroupData::cyclic(3, vec![1, 1, 1]).unwrap());
        assert_eq!(one_third.index(), Q::from_integer(3));
        assert_eq!(LatticeN::new(GroupData::trivial(3)).index(), Q::one());
    }

    #[test]
    fn membership_routes_agree() {
        let lat = paper_lattice();
        let members = [
            vec![q(1, 6), q(1, 6), q(4, 6)],
            vec![q(1, 3), q(1, 3), q(1, 3)],
            vec![q(1, 2), q(0, 1), q(1, 2)],
            vec![q(4, 6), q(1, 6), q(1, 6)],
            vec![q(7, 2), q(-1, 1), q(3, 2)],
        ];
        let non_members = [
            vec![q(1, 2), q(0, 1), q(0, 1)],
            vec![q(1, 6), q(1, 6), q(1, 6)],
            vec![q(1, 4), q(1, 4), q(1, 2)],
        ];
        for v in &members {
            assert!(lat.contains(v), "{v:?}");
            assert!(lat.contains_by_enumeration(v), "{v:?}");
        }
        for v in &non_members {
            assert!(!lat.contains(v), "{v:?}");
            assert!(!lat.contains_by_enumeration(v), "{v:?}");
        }
    }

    #[test]
    fn primitivity() {
        let lat = paper_lattice();
        assert!(lat.is_primitive(&[q(1, 1), q(0, 1), q(0, 1)]));
        assert!(lat.is_primitive(&[q(1, 6), q(1, 6), q(4, 6)]));
        assert!(!lat.is_primitive(&[q(1, 3), q(1, 3), q(4, 3)]));
        assert_eq!(
            lat.primitive_on_ray(&[q(1, 1), q(1, 1), q(1, 1)]).unwrap(),
            vec![q(1, 3), q(1, 3), q(1, 3)]
        );
    }

    #[test]
    fn normalized_determinant_of_orthant() {
        let lat = paper_lattice();
        let id: Vec<Vec<Q>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|k| if i == k { q(1, 1) } else { q(0, 1) })
                    .collect()
            })
            .collect();
        assert_eq!(
            lat.normalized_determinant(&id).unwrap().abs(),
            Q::from_integer(12)
        );
    }
}
