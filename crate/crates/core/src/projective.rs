//! Regularity of a 3-dimensional simplicial fan: existence of a strictly convex
//! piecewise-linear support function.

use num_traits::{One, Zero};

use crate::elimination::InequalitySystem;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::rational::{solve_in_basis, Q};

/// Builds the wall inequalities on ray heights. For a wall shared by
/// `<w, a>` and `<w, b>` with `b = sum_i l_i w_i + l_a a`, strict convexity asks
/// `h(b) - sum_i l_i h(w_i) - l_a h(a) > 0`. Heights on the rays of the first
/// maximal cone are fixed to zero (adding a global linear function changes
/// nothing), and the homogeneous strict system is scaled to `>= 1`.
pub fn support_function_system(fan: &Fan) -> Result<(InequalitySystem, Vec<Option<usize>>)> {
    let rays = fan.rays();
    let Some(gauge) = fan.maximal_cones().first() else {
        return Ok((InequalitySystem::new(0), vec![None; rays.len()]));
    };
    let mut var_of = vec![None; rays.len()];
    let mut next = 0;
    for (r, slot) in var_of.iter_mut().enumerate() {
        if !gauge.contains(r) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut system = InequalitySystem::new(next);
    for (wall, own, other) in fan.interior_walls() {
        let mut basis_ids: Vec<usize> = wall.rays().to_vec();
        basis_ids.push(own);
        let basis: Vec<Vec<Q>> = basis_ids.iter().map(|&r| fan.ray(r).to_vec()).collect();
        let lambdas = solve_in_basis(&basis, fan.ray(other))
            .ok_or_else(|| Error::InvalidFan(format!("degenerate cone at wall {wall:?}")))?;
        let mut coeffs = vec![Q::zero(); next];
        if let Some(v) = var_of[other] {
            coeffs[v] += Q::one();
        }
        for (&r, l) in basis_ids.iter().zip(&lambdas) {
            if let Some(v) = var_of[r] {
                coeffs[v] -= l;
            }
        }
        system.push(&coeffs, -Q::one());
    }
    Ok((system, var_of))
}

/// True iff the fan admits a strictly convex support function (the toric
/// morphism to the orthant is projective).
pub fn is_projective(fan: &Fan) -> Result<bool> {
    if fan.dimension() != 3 {
        return Err(Error::UnsupportedDimension(fan.dimension()));
    }
    let (system, _) = support_function_system(fan)?;
    Ok(system.is_feasible())
}
