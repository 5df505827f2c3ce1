//! Lattice points of the junior simplex and exhaustive search for unimodular
//! triangulations, optionally constrained by required edges and a coordinate
//! symmetry.
//!
//! The search grows a triangulation across open edges: an interior edge with
//! a single adjacent triangle must be covered by exactly one more triangle on
//! its other side, so each triangulation is produced exactly once.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fan::{Cone, CoordinatePermutation, Fan};
use crate::geometry::{interiors_overlap, project, segment_crosses_triangle, Point};
use crate::lattice::LatticeN;
use crate::rational::Q;

/// All points of N on the closed junior simplex: the coordinate vertices first,
/// then the remaining points in lexicographic order.
pub fn junior_points(lat: &LatticeN) -> Result<Vec<Vec<Q>>> {
    let n = lat.dimension();
    if n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    let mut out: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| if k == i { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    let mut rest: Vec<Vec<Q>> = lat
        .coset_representatives()
        .into_iter()
        .filter(|v| v.iter().sum::<Q>() == Q::one())
        .collect();
    rest.sort();
    out.extend(rest);
    Ok(out)
}

/// Constraints for [`search_symmetric_triangulations`].
#[derive(Clone, Debug)]
pub struct TriangulationSearch {
    /// Ray list defining the ids; must be the junior points as a set.
    pub rays: Vec<Vec<Q>>,
    /// Unordered pairs of 0-based ray ids that must be edges.
    pub required_edges: Vec<(usize, usize)>,
    pub symmetry: CoordinatePermutation,
}

impl TriangulationSearch {
    pub fn new(lat: &LatticeN) -> Result<Self> {
        Ok(Self {
            rays: junior_points(lat)?,
            required_edges: Vec::new(),
            symmetry: CoordinatePermutation::identity(lat.dimension()),
        })
    }
}

struct SearchSpace {
    rays: Vec<Vec<Q>>,
    triangles: Vec<[usize; 3]>,
    /// `compatible[i]` lists triangles whose interiors avoid triangle `i`.
    compatible: Vec<Vec<bool>>,
    by_edge: BTreeMap<(usize, usize), Vec<usize>>,
    boundary: BTreeSet<(usize, usize)>,
    orbit_of: Vec<Vec<usize>>,
}

/// All unimodular triangulations of the junior simplex using every junior
/// point, invariant under `search.symmetry` and containing every required edge.
/// The result order is deterministic (sorted cone lists).
pub fn search_symmetric_triangulations(
    lat: &LatticeN,
    search: &TriangulationSearch,
) -> Result<Vec<Fan>> {
    let n = lat.dimension();
    if n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    if search.symmetry.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: search.symmetry.len(),
        });
    }
    let expected: BTreeSet<Vec<Q>> = junior_points(lat)?.into_iter().collect();
    let given: BTreeSet<Vec<Q>> = search.rays.iter().cloned().collect();
    if given != expected || given.len() != search.rays.len() {
        return Err(Error::InvalidFan(
            "search rays must be exactly the lattice points of the junior simplex".into(),
        ));
    }
    for &(a, b) in &search.required_edges {
        if a >= search.rays.len() || b >= search.rays.len() || a == b {
            return Err(Error::InvalidFan(format!(
                "bad required edge ({}, {})",
                a + 1,
                b + 1
            )));
        }
    }

    let Some(space) = SearchSpace::build(lat, search)? else {
        return Ok(Vec::new());
    };
    let Some(&start_edge) = space.boundary.iter().next() else {
        return Ok(Vec::new());
    };
    let starts = space.by_edge.get(&start_edge).cloned().unwrap_or_default();
    let from_start = |&t: &usize| {
        let mut out = Vec::new();
        let mut chosen = BTreeSet::new();
        if space.add_orbit(&mut chosen, t) {
            space.extend(&mut chosen, &mut out);
        }
        out
    };
    #[cfg(feature = "parallel")]
    let mut found: Vec<BTreeSet<usize>> = starts.par_iter().flat_map_iter(from_start).collect();
    #[cfg(not(feature = "parallel"))]
    let mut found: Vec<BTreeSet<usize>> = starts.iter().flat_map(from_start).collect();
    found.sort();
    found.dedup();

    let mut fans: Vec<Fan> = found
        .into_iter()
        .map(|set| {
            let cones = set
                .iter()
                .map(|&t| Cone::new(space.triangles[t].to_vec()))
                .collect();
            Fan::new(space.rays.clone(), cones)
        })
        .collect::<Result<_>>()?;
    fans.retain(|f| {
        search
            .required_edges
            .iter()
            .all(|&(a, b)| f.contains_cone(&Cone::new(vec![a, b])))
            && search.symmetry.preserves(f)
    });
    fans.sort_by(|a, b| a.maximal_cones().cmp(b.maximal_cones()));
    Ok(fans)
}

impl SearchSpace {
    fn build(lat: &LatticeN, search: &TriangulationSearch) -> Result<Option<Self>> {
        let rays = search.rays.clone();
        let pts: Vec<Point> = rays
            .iter()
            .map(|r| project(r).expect("junior point"))
            .collect();
        let m = rays.len();
        let ray_map = search
            .symmetry
            .ray_map(&Fan::new(rays.clone(), Vec::new())?)
            .ok_or_else(|| {
                Error::InvalidFan("symmetry does not preserve the junior points".into())
            })?;

        let mut triangles = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let gens = vec![rays[a].clone(), rays[b].clone(), rays[c].clone()];
                    if lat.normalized_determinant(&gens)?.abs() == Q::one() {
                        triangles.push([a, b, c]);
                    }
                }
            }
        }
        let tri_pts = |t: &[usize; 3]| [pts[t[0]], pts[t[1]], pts[t[2]]];
        // Triangles that cut through a required edge can never be used.
        triangles.retain(|t| {
            let tp = tri_pts(t);
            search
                .required_edges
                .iter()
                .all(|&(a, b)| !segment_crosses_triangle(&pts[a], &pts[b], &tp))
        });
        let index: BTreeMap<[usize; 3], usize> =
            triangles.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let mut orbit_of = Vec::with_capacity(triangles.len());
        for t in &triangles {
            let mut orbit = Vec::new();
            let mut cur = *t;
            loop {
                let Some(&idx) = index.get(&cur) else {
                    // Image was pruned by a required edge, so is the triangle.
                    orbit.clear();
                    break;
                };
                if orbit.contains(&idx) {
                    break;
                }
                orbit.push(idx);
                let mut next = [ray_map[cur[0]], ray_map[cur[1]], ray_map[cur[2]]];
                next.sort_unstable();
                cur = next;
            }
            orbit_of.push(orbit);
        }
        let compatible: Vec<Vec<bool>> = triangles
            .iter()
            .map(|a| {
                let ap = tri_pts(a);
                triangles
                    .iter()
                    .map(|b| a != b && !interiors_overlap(&ap, &tri_pts(b)))
                    .collect()
            })
            .collect();
        let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, t) in triangles.iter().enumerate() {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                by_edge.entry((a, b)).or_default().push(i);
            }
        }
        // Unimodular edges carry no interior lattice points, so an edge lies on
        // the boundary exactly when both ends share a zero coordinate.
        let boundary: BTreeSet<(usize, usize)> = by_edge
            .keys()
            .filter(|&&(a, b)| (0..3).any(|k| rays[a][k].is_zero() && rays[b][k].is_zero()))
            .copied()
            .collect();
        if triangles.is_empty() {
            return Ok(None);
        }
        if pts.iter().any(|p| p.0.is_negative() || p.1.is_negative()) {
            return Ok(None);
        }
        Ok(Some(Self {
            rays,
            triangles,
            compatible,
            by_edge,
            boundary,
            orbit_of,
        }))
    }

    /// Adds the symmetry orbit of `t`; false if it conflicts with the current choice.
    fn add_orbit(&self, chosen: &mut BTreeSet<usize>, t: usize) -> bool {
        let orbit = &self.orbit_of[t];
        if orbit.is_empty() {
            return false;
        }
        for &u in orbit {
            if chosen.contains(&u) {
                continue;
            }
            if chosen.iter().any(|&c| !self.compatible[c][u]) {
                return false;
            }
            for &v in orbit {
                if v != u && !self.compatible[u][v] {
                    return false;
                }
            }
        }
        chosen.extend(orbit.iter().copied());
        true
    }

    fn open_edge(&self, chosen: &BTreeSet<usize>) -> Option<(usize, usize)> {
        let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &t in chosen {
            let tr = self.triangles[t];
            for e in [(tr[0], tr[1]), (tr[0], tr[2]), (tr[1], tr[2])] {
                *count.entry(e).or_default() += 1;
            }
        }
        count
            .into_iter()
            .find(|(e, c)| *c == 1 && !self.boundary.contains(e))
            .map(|(e, _)| e)
    }

    fn extend(&self, chosen: &mut BTreeSet<usize>, out: &mut Vec<BTreeSet<usize>>) {
        let Some(edge) = self.open_edge(chosen) else {
            out.push(chosen.clone());
            return;
        };
        let Some(candidates) = self.by_edge.get(&edge) else {
            return;
        };
        for &t in candidates {
            if chosen.contains(&t) {
                continue;
            }
            let mut next = chosen.clone();
            if self.add_orbit(&mut next, t) {
                self.extend(&mut next, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupData;

    fn lattice() -> LatticeN {
        LatticeN::new(GroupData::new(vec![6, 2], vec![vec![1, 1, 4], vec![1, 0, 1]]).unwrap())
    }

    #[test]
    fn junior_point_count() {
        let pts = junior_points(&lattice()).unwrap();
        assert_eq!(pts.len(), 10);
        assert!(pts.iter().all(|p| p.iter().sum::<Q>() == Q::one()));
    }

    #[test]
    fn trivial_group_has_one_triangulation() {
        let lat = LatticeN::new(GroupData::trivial(3));
        let search = TriangulationSearch::new(&lat).unwrap();
        let fans = search_symmetric_triangulations(&lat, &search).unwrap();
        assert_eq!(fans.len(), 1);
        assert_eq!(fans[0].maximal_cones().len(), 1);
    }

    #[test]
    fn counts() {
        let lat = lattice();
        let mut search = TriangulationSearch::new(&lat).unwrap();
        let all = search_symmetric_triangulations(&lat, &search).unwrap();
        assert_eq!(all.len(), 80);
        assert!(all.iter().all(|f| f.maximal_cones().len() == 12));
        search.symmetry = CoordinatePermutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(
            search_symmetric_triangulations(&lat, &search)
                .unwrap()
                .len(),
            5
        );
    }

    #[test]
    fn rejects_wrong_rays() {
        let lat = lattice();
        let mut search = TriangulationSearch::new(&lat).unwrap();
        search.rays.pop();
        assert!(search_symmetric_triangulations(&lat, &search).is_err());
    }
}
