//! Degree-0 orthogonality between the family's fibres over two torus orbits.
//!
//! Each arrow gets a type `[a, b]`, where `a` (resp. `b`) is 1 when the arrow
//! map is nonzero over the first (resp. second) orbit. The quiver is cut into
//! components along `[1,1]` arrows. Hom from the first fibre to the second
//! vanishes when every component has a `[0,1]` arrow leaving it or a `[1,0]`
//! arrow entering it; the reverse Hom vanishes under the mirrored condition.
//! An arrow "leaves" a component when its tail lies in it and "enters" when its
//! head does. The test is sufficient only, so a failure is reported as
//! inconclusive.

use std::collections::{BTreeMap, BTreeSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{
    arrow_vanishes, direct_transform, for_each_in_box, is_valid_family, unstable_fixed_points,
    zero_divisors, GnatFamily, Theta,
};
use crate::fan::{validate_fan, Cone, CoordinatePermutation, Fan, OrbitId};
use crate::group::{Character, GroupData};
use crate::lattice::LatticeN;
use crate::quiver::{build_quiver, Arrow, ArrowMark, McKayQuiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ArrowType {
    /// `[1,1]`
    Both,
    /// `[1,0]`
    FirstOnly,
    /// `[0,1]`
    SecondOnly,
    /// `[0,0]`
    Neither,
}

impl ArrowType {
    pub fn from_nonzero(first: bool, second: bool) -> Self {
        match (first, second) {
            (true, true) => ArrowType::Both,
            (true, false) => ArrowType::FirstOnly,
            (false, true) => ArrowType::SecondOnly,
            (false, false) => ArrowType::Neither,
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            ArrowType::FirstOnly => ArrowType::SecondOnly,
            ArrowType::SecondOnly => ArrowType::FirstOnly,
            t => t,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ArrowType::Both => "[1,1]",
            ArrowType::FirstOnly => "[1,0]",
            ArrowType::SecondOnly => "[0,1]",
            ArrowType::Neither => "[0,0]",
        }
    }
}

fn check_orbit(fan: &Fan, orbit: &OrbitId) -> Result<()> {
    let cone = orbit.cone();
    if cone.rays().iter().any(|&r| r >= fan.rays().len()) || !fan.contains_cone(cone) {
        return Err(Error::InvalidFan(format!(
            "{orbit} is not an orbit of the fan"
        )));
    }
    Ok(())
}

/// Types of all arrows, in quiver order.
pub fn arrow_types(
    fam: &GnatFamily,
    fan: &Fan,
    pair: (&OrbitId, &OrbitId),
) -> Result<Vec<(Arrow, ArrowType)>> {
    check_orbit(fan, pair.0)?;
    check_orbit(fan, pair.1)?;
    Ok(zero_divisors(fam, fan)?
        .into_iter()
        .map(|(a, b)| {
            let t =
                ArrowType::from_nonzero(!arrow_vanishes(&b, pair.0), !arrow_vanishes(&b, pair.1));
            (a, t)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Orthogonal,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<Character>,
    /// Arrow certifying `Hom(first, second) = 0` on this component.
    pub hom_first_second: Option<Arrow>,
    /// Arrow certifying `Hom(second, first) = 0` on this component.
    pub hom_second_first: Option<Arrow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityVerdict {
    pub pair: (OrbitId, OrbitId),
    pub types: Vec<(Arrow, ArrowType)>,
    pub components: Vec<ComponentReport>,
    pub condition_hom_ab: bool,
    pub condition_hom_ba: bool,
}

impl OrthogonalityVerdict {
    pub fn outcome(&self) -> Outcome {
        if self.condition_hom_ab && self.condition_hom_ba {
            Outcome::Orthogonal
        } else {
            Outcome::Inconclusive
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        self.outcome() == Outcome::Orthogonal
    }

    pub fn type_of(&self, arrow: &Arrow) -> Option<ArrowType> {
        self.types.iter().find(|(a, _)| a == arrow).map(|(_, t)| *t)
    }

    /// Marks for DOT output: zero maps by side, witnesses on top.
    pub fn marks(&self) -> BTreeMap<Arrow, ArrowMark> {
        let mut marks = BTreeMap::new();
        for (a, t) in &self.types {
            let mark = match t {
                ArrowType::Both => continue,
                ArrowType::FirstOnly => ArrowMark::ZeroInSecond,
                ArrowType::SecondOnly => ArrowMark::ZeroInFirst,
                ArrowType::Neither => ArrowMark::ZeroInBoth,
            };
            marks.insert(a.clone(), mark);
        }
        for c in &self.components {
            for w in c.hom_first_second.iter().chain(&c.hom_second_first) {
                marks.insert(w.clone(), ArrowMark::Witness);
            }
        }
        marks
    }
}

pub fn check_pair(
    fam: &GnatFamily,
    fan: &Fan,
    pair: (&OrbitId, &OrbitId),
) -> Result<OrthogonalityVerdict> {
    let quiver = build_quiver(fam.group());
    let types = arrow_types(fam, fan, pair)?;
    Ok(verdict_from_types(
        &quiver,
        (pair.0.clone(), pair.1.clone()),
        types,
    ))
}

fn verdict_from_types(
    quiver: &McKayQuiver,
    pair: (OrbitId, OrbitId),
    types: Vec<(Arrow, ArrowType)>,
) -> OrthogonalityVerdict {
    let kind: BTreeMap<&Arrow, ArrowType> = types.iter().map(|(a, t)| (a, *t)).collect();
    let comps = quiver.components(|a| kind[a] == ArrowType::Both);
    let pick =
        |members: &BTreeSet<&Character>, prefer: (ArrowType, bool), fallback: (ArrowType, bool)| {
            // (type, by_tail): by_tail selects arrows leaving the component.
            [prefer, fallback].into_iter().find_map(|(want, by_tail)| {
                types
                    .iter()
                    .find(|(a, t)| {
                        *t == want && {
                            let end = if by_tail {
                                a.tail.clone()
                            } else {
                                quiver.head(a)
                            };
                            members.contains(&end)
                        }
                    })
                    .map(|(a, _)| a.clone())
            })
        };
    let components: Vec<ComponentReport> = comps
        .into_iter()
        .map(|vertices| {
            let members: BTreeSet<&Character> = vertices.iter().collect();
            let ab = pick(
                &members,
                (ArrowType::SecondOnly, true),
                (ArrowType::FirstOnly, false),
            );
            let ba = pick(
                &members,
                (ArrowType::SecondOnly, false),
                (ArrowType::FirstOnly, true),
            );
            ComponentReport {
                vertices: vertices.clone(),
                hom_first_second: ab,
                hom_second_first: ba,
            }
        })
        .collect();
    OrthogonalityVerdict {
        condition_hom_ab: components.iter().all(|c| c.hom_first_second.is_some()),
        condition_hom_ba: components.iter().all(|c| c.hom_second_first.is_some()),
        pair,
        types,
        components,
    }
}

/// Exceptional surfaces and curves: orbits of exceptional rays, and of 2-cones
/// with at least one exceptional ray.
pub fn exceptional_orbits(fan: &Fan) -> (Vec<OrbitId>, Vec<OrbitId>) {
    let surfaces = fan
        .exceptional_rays()
        .into_iter()
        .map(|r| OrbitId::of(&[r]))
        .collect();
    let curves = fan
        .faces(2)
        .into_iter()
        .filter(|c| c.rays().iter().any(|&r| !fan.is_coordinate_ray(r)))
        .map(OrbitId)
        .collect();
    (surfaces, curves)
}

/// Surface/surface pairs (unordered, including self-pairs) followed by
/// surface/curve pairs.
pub fn corollary2_pairs(fan: &Fan) -> Vec<(OrbitId, OrbitId)> {
    let (surfaces, curves) = exceptional_orbits(fan);
    let mut pairs = Vec::new();
    for (i, a) in surfaces.iter().enumerate() {
        for b in &surfaces[i..] {
            pairs.push((a.clone(), b.clone()));
        }
    }
    for a in &surfaces {
        for c in &curves {
            pairs.push((a.clone(), c.clone()));
        }
    }
    pairs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairStatus {
    /// Certified by the component criterion.
    Orthogonal,
    /// Criterion inconclusive, but both orbits lie on a validated reference
    /// resolution whose transported family is the fine moduli family.
    Discharged,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub first: OrbitId,
    pub second: OrbitId,
    pub condition_hom_ab: bool,
    pub condition_hom_ba: bool,
    pub components: usize,
    pub status: PairStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corollary2Report {
    pub surfaces: Vec<OrbitId>,
    pub curves: Vec<OrbitId>,
    pub reference_used: bool,
    pub records: Vec<PairRecord>,
}

impl Corollary2Report {
    pub fn pass(&self) -> bool {
        self.records
            .iter()
            .all(|r| r.status != PairStatus::Inconclusive)
    }

    pub fn count(&self, status: PairStatus) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }
}

/// A second resolution with the same rays, used to discharge pairs the
/// criterion cannot certify.
#[derive(Clone, Debug)]
pub struct Reference<'a> {
    pub fan: &'a Fan,
    pub theta: Theta,
}

/// Checks that `reference` is smooth, crepant and complete, shares the rays of
/// `fan`, and that `fam` transported to it is valid and theta-stable at every
/// torus-fixed point.
pub fn validate_reference(fam: &GnatFamily, fan: &Fan, reference: &Reference<'_>) -> Result<()> {
    let lat = LatticeN::new(fam.group().clone());
    let report = validate_fan(reference.fan, &lat)?;
    if !report.ok() {
        return Err(Error::InvalidReference(format!(
            "reference fan fails validation: {report}"
        )));
    }
    let (moved, validity) = direct_transform(fam, fan, reference.fan)
        .map_err(|e| Error::InvalidReference(e.to_string()))?;
    if !validity.is_valid() {
        return Err(Error::InvalidReference(format!(
            "transported family is invalid on the reference ({} bad arrows)",
            validity.violations.len()
        )));
    }
    let unstable = unstable_fixed_points(&moved, reference.fan, &reference.theta)?;
    if let Some(c) = unstable.first() {
        return Err(Error::InvalidReference(format!(
            "transported family is not theta-stable at the fixed point of {}",
            OrbitId(c.clone())
        )));
    }
    Ok(())
}

/// Runs the criterion on every exceptional surface/surface and surface/curve
/// pair. Records are sorted by pair.
pub fn check_corollary2(
    fam: &GnatFamily,
    fan: &Fan,
    reference: Option<&Reference<'_>>,
) -> Result<Corollary2Report> {
    if fan.dimension() != 3 {
        return Err(Error::UnsupportedDimension(fan.dimension()));
    }
    let lat = LatticeN::new(fam.group().clone());
    let report = validate_fan(fan, &lat)?;
    if !report.ok() {
        return Err(Error::Precondition(format!(
            "fan fails validation: {report}"
        )));
    }
    let validity = is_valid_family(fam, fan)?;
    if !validity.is_valid() {
        return Err(Error::Precondition(format!(
            "family is invalid: {} divisors of zeroes are not effective and integral",
            validity.violations.len()
        )));
    }
    if let Some(r) = reference {
        validate_reference(fam, fan, r)?;
    }
    let in_reference = |o: &OrbitId| {
        reference.is_some_and(|r| {
            let cone = Cone::new(
                o.cone()
                    .rays()
                    .iter()
                    .map(|&i| r.fan.ray_index(fan.ray(i)).unwrap())
                    .collect(),
            );
            r.fan.contains_cone(&cone)
        })
    };

    let quiver = build_quiver(fam.group());
    let zeroes = zero_divisors(fam, fan)?;
    let (surfaces, curves) = exceptional_orbits(fan);
    let record = |(a, b): (OrbitId, OrbitId)| {
        let types = zeroes
            .iter()
            .map(|(q, d)| {
                (
                    q.clone(),
                    ArrowType::from_nonzero(!arrow_vanishes(d, &a), !arrow_vanishes(d, &b)),
                )
            })
            .collect();
        let v = verdict_from_types(&quiver, (a.clone(), b.clone()), types);
        let status = if v.is_orthogonal() {
            PairStatus::Orthogonal
        } else if in_reference(&a) && in_reference(&b) {
            PairStatus::Discharged
        } else {
            PairStatus::Inconclusive
        };
        PairRecord {
            first: a,
            second: b,
            condition_hom_ab: v.condition_hom_ab,
            condition_hom_ba: v.condition_hom_ba,
            components: v.components.len(),
            status,
        }
    };
    #[cfg(feature = "parallel")]
    let mut records: Vec<PairRecord> = corollary2_pairs(fan).into_par_iter().map(record).collect();
    #[cfg(not(feature = "parallel"))]
    let mut records: Vec<PairRecord> = corollary2_pairs(fan).into_iter().map(record).collect();
    records.sort_by(|x, y| (&x.first, &x.second).cmp(&(&y.first, &y.second)));
    Ok(Corollary2Report {
        surfaces,
        curves,
        reference_used: reference.is_some(),
        records,
    })
}

/// The action of a coordinate permutation on rays and characters, with the
/// induced classes of orbits and of exceptional orbit pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReduction {
    pub ray_map: Vec<usize>,
    /// Image of each character, by character index.
    pub char_map: Vec<usize>,
    /// Classes of the codimension-1 and -2 orbits, each sorted.
    pub orbit_classes: Vec<Vec<OrbitId>>,
    pub pair_classes: Vec<Vec<(OrbitId, OrbitId)>>,
}

impl SymmetryReduction {
    pub fn map_orbit(&self, o: &OrbitId) -> OrbitId {
        OrbitId(o.cone().map(&self.ray_map))
    }

    pub fn map_character(&self, g: &GroupData, chi: &Character) -> Character {
        g.character_at(self.char_map[g.index_of(chi)])
    }

    pub fn map_arrow(&self, g: &GroupData, perm: &CoordinatePermutation, a: &Arrow) -> Arrow {
        Arrow::new(self.map_character(g, &a.tail), perm.image(a.coord))
    }
}

/// Character map `rho(m) -> rho(perm m)`, if well defined and bijective.
pub fn character_map(g: &GroupData, perm: &CoordinatePermutation) -> Result<Vec<usize>> {
    if perm.len() != g.dimension() {
        return Err(Error::DimensionMismatch {
            expected: g.dimension(),
            found: perm.len(),
        });
    }
    let bounds: Vec<u32> = (0..g.dimension())
        .map(|k| g.coordinate_weight_order(k))
        .collect();
    let mut map: Vec<Option<usize>> = vec![None; g.order()];
    let mut consistent = true;
    for_each_in_box(&bounds, |m| {
        let src = g.index_of(&g.rho_exponents(m));
        let dst = g.index_of(&g.rho_exponents(&perm.apply(m)));
        match map[src] {
            None => map[src] = Some(dst),
            Some(d) if d != dst => consistent = false,
            _ => {}
        }
    });
    if !consistent {
        return Err(Error::Precondition(
            "the permutation does not induce a map on characters".into(),
        ));
    }
    let map: Vec<usize> = map.into_iter().collect::<Option<_>>().ok_or_else(|| {
        Error::Precondition("coordinate weights do not generate the character group".into())
    })?;
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != map.len() {
        return Err(Error::Precondition(
            "induced character map is not bijective".into(),
        ));
    }
    Ok(map)
}

/// Fails with `Precondition` unless the fan and family are invariant under the
/// permutation; callers then fall back to a full sweep.
pub fn symmetry_reduction(
    fam: &GnatFamily,
    fan: &Fan,
    perm: &CoordinatePermutation,
) -> Result<SymmetryReduction> {
    let g = fam.group();
    let ray_map = perm
        .ray_map(fan)
        .filter(|_| perm.preserves(fan))
        .ok_or_else(|| Error::Precondition("fan is not invariant under the permutation".into()))?;
    let char_map = character_map(g, perm)?;
    for (idx, d) in fam.divisors().iter().enumerate() {
        if fam.divisors()[char_map[idx]] != d.map_rays(&ray_map) {
            return Err(Error::Precondition(format!(
                "family is not invariant: D at {} does not match its image",
                g.character_at(idx)
            )));
        }
    }
    let mut red = SymmetryReduction {
        ray_map,
        char_map,
        orbit_classes: Vec::new(),
        pair_classes: Vec::new(),
    };
    let mut orbits: Vec<OrbitId> = fan
        .faces(1)
        .into_iter()
        .chain(fan.faces(2))
        .map(OrbitId)
        .collect();
    orbits.sort();
    red.orbit_classes = classes(&orbits, |o| red.map_orbit(o));
    let pairs = corollary2_pairs(fan);
    let normalize = |p: (OrbitId, OrbitId)| {
        if p.0.codimension() == p.1.codimension() && p.1 < p.0 {
            (p.1, p.0)
        } else {
            p
        }
    };
    red.pair_classes = classes(&pairs, |p| {
        normalize((red.map_orbit(&p.0), red.map_orbit(&p.1)))
    });
    Ok(red)
}

fn classes<T: Clone + Ord, F: Fn(&T) -> T>(items: &[T], step: F) -> Vec<Vec<T>> {
    let mut seen: BTreeSet<T> = BTreeSet::new();
    let mut out = Vec::new();
    for item in items {
        if seen.contains(item) {
            continue;
        }
        let mut class = BTreeSet::new();
        let mut cur = item.clone();
        while class.insert(cur.clone()) {
            cur = step(&cur);
        }
        seen.extend(class.iter().cloned());
        out.push(class.into_iter().collect::<Vec<_>>());
    }
    out.sort();
    out
}

/// Maps a verdict through the symmetry: pair, arrows and components move,
/// types are unchanged.
pub fn transport_verdict(
    v: &OrthogonalityVerdict,
    red: &SymmetryReduction,
    g: &GroupData,
    perm: &CoordinatePermutation,
) -> (
    OrbitId,
    OrbitId,
    BTreeMap<Arrow, ArrowType>,
    Vec<Vec<Character>>,
) {
    let types = v
        .types
        .iter()
        .map(|(a, t)| (red.map_arrow(g, perm, a), *t))
        .collect();
    let mut comps: Vec<Vec<Character>> = v
        .components
        .iter()
        .map(|c| {
            let mut vs: Vec<Character> =
                c.vertices.iter().map(|x| red.map_character(g, x)).collect();
            vs.sort();
            vs
        })
        .collect();
    comps.sort();
    (
        red.map_orbit(&v.pair.0),
        red.map_orbit(&v.pair.1),
        types,
        comps,
    )
}
