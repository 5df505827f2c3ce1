//! Exact rational helpers shared by the lattice, family and table code.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Q = Rational64;

/// Parses `"3"`, `"-1/6"` or `"4/6"` into a reduced fraction.
pub fn parse_fraction(input: &str) -> Result<Q> {
    let s = input.trim();
    let err = || Error::Parse {
        what: "fraction",
        input: input.to_string(),
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| err())?;
            let den: i64 = den.trim().parse().map_err(|_| err())?;
            if den == 0 {
                return Err(err());
            }
            Ok(Q::new(num, den))
        }
        None => s.parse::<i64>().map(Q::from_integer).map_err(|_| err()),
    }
}

/// Reduced `a/b` form, integers without a denominator.
pub fn format_fraction(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Mixed-number rendering over a fixed denominator, e.g. `4/3` over 6 is `1 2/6`.
/// Falls back to the reduced form when `denominator` is not a multiple of the
/// fraction's own denominator.
pub fn format_mixed(q: &Q, denominator: i64) -> String {
    if q.is_integer() || denominator <= 0 || denominator % q.denom() != 0 {
        return format_fraction(q);
    }
    let scaled = q.numer() * (denominator / q.denom());
    let (whole, rest) = scaled.abs().div_rem(&denominator);
    let sign = if q.is_negative() { "-" } else { "" };
    match (whole, rest) {
        (0, r) => format!("{sign}{r}/{denominator}"),
        (w, 0) => format!("{sign}{w}"),
        (w, r) => format!("{sign}{w} {r}/{denominator}"),
    }
}

pub fn fractional_part(q: &Q) -> Q {
    q - q.floor()
}

/// Determinant of a square matrix by fraction-exact Gaussian elimination.
pub fn determinant(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut det = Q::from_integer(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let factor = row[col] / p;
            if factor.is_zero() {
                continue;
            }
            for (x, v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * v;
            }
        }
    }
    det
}

/// Solves `x · rows = target` for `x` (i.e. expresses `target` in the row basis).
/// Returns `None` for a singular basis.
pub fn solve_in_basis(rows: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = rows.len();
    // Augmented transpose: column j of the system is row j of the basis.
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut line: Vec<Q> = (0..n).map(|j| rows[j][i]).collect();
            line.push(target[i]);
            line
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        let p = a[col][col];
        for x in &mut a[col][col..] {
            *x /= p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col];
                for (x, v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= factor * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|line| line[n]).collect())
}
