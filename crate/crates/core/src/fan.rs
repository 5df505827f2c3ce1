//! Simplicial fans subdividing the positive orthant, their torus orbits and
//! validation (smooth, crepant, complete).
//!
//! Ray ids are 0-based indices into [`Fan::rays`]; every user-facing name
//! (`E8`, `S1,7`) is 1-based, matching the usual `e_1, ..., e_n` labels.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{doubled_area, in_open_segment, interiors_overlap, project, Point};
use crate::lattice::LatticeN;
use crate::rational::{format_fraction, Q};

/// A set of ray ids, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Cone(ids)
    }

    pub fn empty() -> Self {
        Cone(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains(*r))
    }

    /// All faces with exactly `k` rays, in lexicographic order.
    pub fn faces(&self, k: usize) -> Vec<Cone> {
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(k);
        subsets(&self.0, k, 0, &mut pick, &mut out);
        out
    }

    pub fn map(&self, ray_map: &[usize]) -> Cone {
        Cone::new(self.0.iter().map(|&r| ray_map[r]).collect())
    }
}

fn subsets(items: &[usize], k: usize, start: usize, pick: &mut Vec<usize>, out: &mut Vec<Cone>) {
    if pick.len() == k {
        out.push(Cone(pick.clone()));
        return;
    }
    for i in start..items.len() {
        pick.push(items[i]);
        subsets(items, k, i + 1, pick, out);
        pick.pop();
    }
}

/// Torus orbit `S_sigma` of the cone `sigma`; the empty cone is the dense orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitId(pub Cone);

impl OrbitId {
    pub fn dense() -> Self {
        OrbitId(Cone::empty())
    }

    pub fn of(rays: &[usize]) -> Self {
        OrbitId(Cone::new(rays.to_vec()))
    }

    pub fn cone(&self) -> &Cone {
        &self.0
    }

    pub fn codimension(&self) -> usize {
        self.0.len()
    }
}

impl Serialize for OrbitId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("dense");
        }
        let ids: Vec<String> = self.0.rays().iter().map(|r| (r + 1).to_string()).collect();
        write!(f, "S{}", ids.join(","))
    }
}

impl FromStr for OrbitId {
    type Err = Error;

    /// Accepts `dense`, `S8`, `S1,7` (1-based ray labels).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("dense") {
            return Ok(OrbitId::dense());
        }
        let err = || Error::Parse {
            what: "orbit",
            input: s.to_string(),
        };
        let body = t
            .strip_prefix('S')
            .or_else(|| t.strip_prefix('s'))
            .ok_or_else(err)?;
        let ids = body
            .split(',')
            .map(|x| match x.trim().parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(err()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbitId::of(&ids))
    }
}

/// General points of `S_sigma` lie on `E_j` exactly when `e_j` spans a ray of `sigma`.
pub fn point_on_divisor(orbit: &OrbitId, ray: usize) -> bool {
    orbit.0.contains(ray)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<Vec<Q>>,
    cones: Vec<Cone>,
}

impl Fan {
    /// Builds a fan from ray generators and maximal cones; cones are sorted so
    /// that two fans with the same cone set compare equal.
    pub fn new(rays: Vec<Vec<Q>>, cones: Vec<Cone>) -> Result<Self> {
        let n = rays.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 {
            return Err(Error::InvalidFan("a fan needs at least one ray".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            if r.iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidFan(format!("ray {} is zero", i + 1)));
            }
            if r.iter().any(|x| x.is_negative()) {
                return Err(Error::InvalidFan(format!(
                    "ray {} leaves the orthant",
                    i + 1
                )));
            }
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!("ray {} is repeated", i + 1)));
            }
        }
        for c in &cones {
            if c.len() != n {
                return Err(Error::InvalidFan(format!(
                    "maximal cone {c:?} has {} distinct rays, expected {n}",
                    c.len()
                )));
            }
            if let Some(&bad) = c.rays().iter().find(|&&r| r >= rays.len()) {
                return Err(Error::InvalidFan(format!(
                    "cone refers to unknown ray {}",
                    bad + 1
                )));
            }
        }
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        Ok(Self { rays, cones })
    }

    /// The single cone spanned by the primitive coordinate rays: the quotient itself.
    pub fn orthant(lat: &LatticeN) -> Self {
        let n = lat.dimension();
        let rays: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let e: Vec<Q> = (0..n)
                    .map(|k| if k == i { Q::one() } else { Q::zero() })
                    .collect();
                lat.primitive_on_ray(&e).expect("unit vector is non-zero")
            })
            .collect();
        Fan::new(rays, vec![Cone::new((0..n).collect())]).expect("orthant fan is well formed")
    }

    pub fn dimension(&self) -> usize {
        self.rays[0].len()
    }

    pub fn rays(&self) -> &[Vec<Q>] {
        &self.rays
    }

    pub fn ray(&self, id: usize) -> &[Q] {
        &self.rays[id]
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn ray_index(&self, generator: &[Q]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == generator)
    }

    /// Coordinate rays are positive multiples of a standard basis vector.
    pub fn is_coordinate_ray(&self, id: usize) -> bool {
        self.rays[id].iter().filter(|x| !x.is_zero()).count() == 1
    }

    pub fn exceptional_rays(&self) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&r| !self.is_coordinate_ray(r))
            .collect()
    }

    /// All faces of maximal cones with exactly `k` rays, sorted.
    pub fn faces(&self, k: usize) -> Vec<Cone> {
        let set: BTreeSet<Cone> = self.cones.iter().flat_map(|c| c.faces(k)).collect();
        set.into_iter().collect()
    }

    pub fn contains_cone(&self, cone: &Cone) -> bool {
        self.cones.iter().any(|m| cone.is_face_of(m))
    }

    /// Same generators, possibly in a different order.
    pub fn same_rays(&self, other: &Fan) -> bool {
        self.rays.len() == other.rays.len()
            && self.rays.iter().all(|r| other.ray_index(r).is_some())
    }

    /// Interior walls: 2-dimensional faces (for n = 3) shared by two maximal cones,
    /// returned with the two opposite rays.
    pub fn interior_walls(&self) -> Vec<(Cone, usize, usize)> {
        let n = self.dimension();
        let mut out = Vec::new();
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                let common: Vec<usize> = a
                    .rays()
                    .iter()
                    .copied()
                    .filter(|r| b.contains(*r))
                    .collect();
                if common.len() == n - 1 {
                    let pa = *a.rays().iter().find(|r| !common.contains(r)).unwrap();
                    let pb = *b.rays().iter().find(|r| !common.contains(r)).unwrap();
                    out.push((Cone::new(common), pa, pb));
                }
            }
        }
        out
    }
}

/// Torus orbits of codimension `codim`: faces of maximal cones with `codim` rays.
pub fn orbits(fan: &Fan, codim: usize) -> Vec<OrbitId> {
    if codim == 0 {
        return vec![OrbitId::dense()];
    }
    fan.faces(codim).into_iter().map(OrbitId).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub smooth: bool,
    pub crepant: bool,
    pub complete: bool,
    /// Maximal cones that are not basic, with their index in N.
    pub singular_cones: Vec<(Cone, String)>,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.smooth && self.crepant && self.complete
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "smooth: {}", self.smooth)?;
        writeln!(f, "crepant: {}", self.crepant)?;
        writeln!(f, "complete: {}", self.complete)?;
        for (cone, index) in &self.singular_cones {
            let ids: Vec<String> = cone.rays().iter().map(|r| (r + 1).to_string()).collect();
            writeln!(f, "singular cone <{}>: index {index}", ids.join(","))?;
        }
        for p in &self.problems {
            writeln!(f, "problem: {p}")?;
        }
        Ok(())
    }
}

/// Checks that every maximal cone is basic in N, every exceptional ray lies on
/// the junior hyperplane, and the cones tile the orthant.
pub fn validate_fan(fan: &Fan, lat: &LatticeN) -> Result<ValidationReport> {
    let n = lat.dimension();
    if fan.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: fan.dimension(),
        });
    }
    let mut problems = Vec::new();
    let mut lattice_ok = true;
    for (i, r) in fan.rays().iter().enumerate() {
        if !lat.contains(r) {
            lattice_ok = false;
            problems.push(format!("ray {} is not in N", i + 1));
        } else if !lat.is_primitive(r) {
            lattice_ok = false;
            problems.push(format!("ray {} is not primitive in N", i + 1));
        }
    }

    let mut singular_cones = Vec::new();
    for cone in fan.maximal_cones() {
        let gens: Vec<Vec<Q>> = cone.rays().iter().map(|&r| fan.ray(r).to_vec()).collect();
        let det = lat.normalized_determinant(&gens)?.abs();
        if det != Q::one() {
            singular_cones.push((cone.clone(), format_fraction(&det)));
        }
    }
    let smooth = lattice_ok && singular_cones.is_empty() && !fan.maximal_cones().is_empty();

    let mut crepant = true;
    for id in fan.exceptional_rays() {
        let s: Q = fan.ray(id).iter().sum();
        if s != Q::one() {
            crepant = false;
            problems.push(format!(
                "exceptional ray {} has coordinate sum {}, not 1",
                id + 1,
                format_fraction(&s)
            ));
        }
    }

    let mut complete = true;
    for axis in 0..n {
        let has =
            (0..fan.rays().len()).any(|r| fan.is_coordinate_ray(r) && !fan.ray(r)[axis].is_zero());
        if !has {
            complete = false;
            problems.push(format!("coordinate ray {} is missing", axis + 1));
        }
    }
    if n == 3 {
        complete &= tiles_junior_simplex(fan, &mut problems);
    } else {
        // Volume count only; overlap detection is implemented for n = 3.
        let mut total = Q::zero();
        for cone in fan.maximal_cones() {
            let gens: Vec<Vec<Q>> = cone
                .rays()
                .iter()
                .map(|&r| {
                    let v = fan.ray(r);
                    let s: Q = v.iter().sum();
                    v.iter().map(|x| x / s).collect()
                })
                .collect();
            total += crate::rational::determinant(&gens).abs();
        }
        if total != Q::one() {
            complete = false;
            problems.push(format!(
                "cone volumes sum to {}, expected 1",
                format_fraction(&total)
            ));
        }
        problems.push(format!("overlap test skipped in dimension {n}"));
    }

    Ok(ValidationReport {
        smooth,
        crepant,
        complete,
        singular_cones,
        problems,
    })
}

fn tiles_junior_simplex(fan: &Fan, problems: &mut Vec<String>) -> bool {
    let pts: Vec<Point> = fan
        .rays()
        .iter()
        .map(|r| project(r).expect("non-zero ray"))
        .collect();
    let tris: Vec<[Point; 3]> = fan
        .maximal_cones()
        .iter()
        .map(|c| [pts[c.rays()[0]], pts[c.rays()[1]], pts[c.rays()[2]]])
        .collect();
    let mut ok = true;
    let mut area = Q::zero();
    for (i, t) in tris.iter().enumerate() {
        let a = doubled_area(t);
        if a.is_zero() {
            ok = false;
            problems.push(format!("cone {:?} is degenerate", fan.maximal_cones()[i]));
        }
        area += a;
    }
    for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            if interiors_overlap(&tris[i], &tris[j]) {
                ok = false;
                problems.push(format!(
                    "cones {:?} and {:?} overlap",
                    fan.maximal_cones()[i],
                    fan.maximal_cones()[j]
                ));
            }
        }
    }
    // A ray inside another cone's edge makes the intersection a non-face.
    for (r, p) in pts.iter().enumerate() {
        for cone in fan.maximal_cones() {
            if cone.contains(r) {
                continue;
            }
            for e in cone.faces(2) {
                let (a, b) = (&pts[e.rays()[0]], &pts[e.rays()[1]]);
                if in_open_segment(p, a, b) {
                    ok = false;
                    problems.push(format!(
                        "ray {} lies inside the wall {:?} of a cone not containing it",
                        r + 1,
                        e
                    ));
                }
            }
        }
    }
    // The junior simplex has doubled area 1 in the (x, y) chart.
    if area != Q::one() {
        ok = false;
        problems.push(format!(
            "cones cover doubled area {} of the junior simplex, expected 1",
            format_fraction(&area)
        ));
    }
    ok
}

/// A permutation of coordinates: `e_i` maps to `e_{images[i]}` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinatePermutation(Vec<usize>);

impl CoordinatePermutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = images.clone();
        seen.sort_unstable();
        if seen != (0..images.len()).collect::<Vec<_>>() {
            return Err(Error::Parse {
                what: "coordinate permutation",
                input: format!("{images:?}"),
            });
        }
        Ok(Self(images))
    }

    /// From 1-based images, e.g. `[2, 3, 1]` for the rotation `1 -> 2 -> 3 -> 1`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parse {
                what: "coordinate permutation",
                input: format!("{images:?}"),
            });
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    /// Ray permutation induced on a fan's rays, if the generator set is invariant.
    pub fn ray_map(&self, fan: &Fan) -> Option<Vec<usize>> {
        fan.rays()
            .iter()
            .map(|r| fan.ray_index(&self.apply(r)))
            .collect()
    }

    /// True if the permuted maximal cones are again the maximal cones.
    pub fn preserves(&self, fan: &Fan) -> bool {
        let Some(map) = self.ray_map(fan) else {
            return false;
        };
        let mut mapped: Vec<Cone> = fan.maximal_cones().iter().map(|c| c.map(&map)).collect();
        mapped.sort();
        mapped == fan.maximal_cones()
    }

    /// Number of applications needed to return to the identity.
    pub fn order(&self) -> usize {
        let mut cur = self.clone();
        let mut k = 1;
        while !cur.is_identity() {
            cur = Self(cur.0.iter().map(|&j| self.0[j]).collect());
            k += 1;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupData;

    #[test]
    fn orbit_names_round_trip() {
        let o: OrbitId = "S1,7".parse().unwrap();
        assert_eq!(o, OrbitId::of(&[6, 0]));
        assert_eq!(o.to_string(), "S1,7");
        assert_eq!("dense".parse::<OrbitId>().unwrap(), OrbitId::dense());
        assert_eq!("S8".parse::<OrbitId>().unwrap().to_string(), "S8");
        assert!("S0".parse::<OrbitId>().is_err());
        assert!("T3".parse::<OrbitId>().is_err());
    }

    #[test]
    fn point_on_divisor_follows_the_cone() {
        let s8 = OrbitId::of(&[7]);
        assert!(point_on_divisor(&s8, 7));
        assert!(!point_on_divisor(&s8, 3));
        let s17 = OrbitId::of(&[0, 6]);
        assert!(point_on_divisor(&s17, 0));
        assert!(point_on_divisor(&s17, 6));
        assert!(!point_on_divisor(&s17, 4));
        assert!((0..10).all(|j| !point_on_divisor(&OrbitId::dense(), j)));
    }

    #[test]
    fn single_cone_over_paper_group_is_singular() {
        let g = GroupData::new(vec![6, 2], vec![vec![1, 1, 4], vec![1, 0, 1]]).unwrap();
        let lat = LatticeN::new(g);
        let fan = Fan::orthant(&lat);
        let report = validate_fan(&fan, &lat).unwrap();
        assert!(!report.smooth);
        assert!(report.crepant);
        assert!(report.complete);
        assert_eq!(report.singular_cones[0].1, "12");
        assert_eq!(orbits(&fan, 0), vec![OrbitId::dense()]);
        assert_eq!(orbits(&fan, 3).len(), 1);
    }

    #[test]
    fn trivial_group_orthant_is_smooth() {
        let lat = LatticeN::new(GroupData::trivial(3));
        let report = validate_fan(&Fan::orthant(&lat), &lat).unwrap();
        assert!(report.ok(), "{report}");
    }

    #[test]
    fn structural_errors() {
        let one = Q::one();
        let zero = Q::zero();
        let rays = vec![
            vec![one, zero, zero],
            vec![zero, one, zero],
            vec![zero, zero, one],
        ];
        assert!(Fan::new(rays.clone(), vec![Cone::new(vec![0, 1])]).is_err());
        assert!(Fan::new(rays.clone(), vec![Cone::new(vec![0, 1, 5])]).is_err());
        let mut dup = rays.clone();
        dup.push(rays[0].clone());
        assert!(Fan::new(dup, vec![]).is_err());
        assert!(Fan::new(vec![vec![-one, zero, zero]], vec![]).is_err());
    }

    #[test]
    fn permutation_basics() {
        let p = CoordinatePermutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(p.apply(&[1, 4, 1]), vec![1, 1, 4]);
        assert_eq!(p.order(), 3);
        assert!(CoordinatePermutation::identity(3).is_identity());
        assert!(CoordinatePermutation::from_one_based(&[1, 1, 2]).is_err());
    }
}
