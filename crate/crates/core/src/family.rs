//! Divisor-level gnat-families: one G-Weil divisor `D_chi` per character, the
//! maximal-shift family, divisors of zeroes `B_(chi, x_k)`, theta weights,
//! shift moves and direct transforms between fans sharing their rays.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, OrbitId};
use crate::group::{Character, GroupData};
use crate::quiver::{build_quiver, Arrow};
use crate::rational::{format_fraction, Q};

/// Rational combination of prime divisors `E_j`, keyed by 0-based ray id.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GWeilDivisor(BTreeMap<usize, Q>);

impl GWeilDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Q)>>(pairs: I) -> Self {
        let mut d = Self::zero();
        for (r, c) in pairs {
            d.add_term(r, c);
        }
        d
    }

    pub fn coefficient(&self, ray: usize) -> Q {
        self.0.get(&ray).copied().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, ray: usize, c: Q) {
        if c.is_zero() {
            self.0.remove(&ray);
        } else {
            self.0.insert(ray, c);
        }
    }

    pub fn add_term(&mut self, ray: usize, c: Q) {
        let v = self.coefficient(ray) + c;
        self.set(ray, v);
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, Q)> + '_ {
        self.0.iter().map(|(&r, &c)| (r, c))
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in other.terms() {
            out.add_term(r, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in other.terms() {
            out.add_term(r, -c);
        }
        out
    }

    /// Non-negative with integral coefficients.
    pub fn is_effective_integral(&self) -> bool {
        self.0.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// `self >= other` coefficientwise.
    pub fn dominates(&self, other: &Self) -> bool {
        !self.sub(other).0.values().any(|c| c.is_negative())
    }

    /// True if some ray of the orbit's cone carries a positive coefficient,
    /// i.e. general points of the orbit lie on the divisor.
    pub fn meets_orbit(&self, orbit: &OrbitId) -> bool {
        orbit
            .cone()
            .rays()
            .iter()
            .any(|&r| self.coefficient(r).is_positive())
    }

    pub fn map_rays(&self, ray_map: &[usize]) -> Self {
        Self::from_pairs(self.terms().map(|(r, c)| (ray_map[r], c)))
    }
}

/// Serialized as `{"E4": "1/6", ...}`.
impl Serialize for GWeilDivisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(
            self.terms()
                .map(|(r, c)| (format!("E{}", r + 1), format_fraction(&c))),
        )
    }
}

impl fmt::Display for GWeilDivisor {
    /// `E1 + 1/6 E4 - E7`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (r, c)) in self.terms().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            if mag.is_one() {
                write!(f, "E{}", r + 1)?;
            } else {
                write!(f, "{} E{}", format_fraction(&mag), r + 1)?;
            }
        }
        Ok(())
    }
}

/// One divisor per character, indexed in character order. Invalid families are
/// representable; see [`is_valid_family`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnatFamily {
    group: GroupData,
    divisors: Vec<GWeilDivisor>,
}

impl GnatFamily {
    /// Requires one divisor per character and `D_chi0 = 0`.
    pub fn new(group: GroupData, divisors: Vec<GWeilDivisor>) -> Result<Self> {
        if divisors.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: divisors.len(),
            });
        }
        if !divisors[0].is_zero() {
            return Err(Error::Precondition(
                "family is not normalized: the trivial character has a nonzero divisor".into(),
            ));
        }
        Ok(Self { group, divisors })
    }

    pub fn from_map(group: GroupData, map: &BTreeMap<Character, GWeilDivisor>) -> Result<Self> {
        for chi in map.keys() {
            if !group.contains(chi) {
                return Err(Error::InvalidGroup(format!(
                    "{chi} is not a character of the group"
                )));
            }
        }
        let divisors = group
            .characters()
            .iter()
            .map(|chi| map.get(chi).cloned().unwrap_or_default())
            .collect();
        Self::new(group, divisors)
    }

    pub fn zero(group: &GroupData) -> Self {
        Self {
            group: group.clone(),
            divisors: vec![GWeilDivisor::zero(); group.order()],
        }
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn divisor(&self, chi: &Character) -> &GWeilDivisor {
        &self.divisors[self.group.index_of(chi)]
    }

    pub fn divisors(&self) -> &[GWeilDivisor] {
        &self.divisors
    }

    pub fn coefficient(&self, chi: &Character, ray: usize) -> Q {
        self.divisor(chi).coefficient(ray)
    }

    pub fn set_coefficient(&mut self, chi: &Character, ray: usize, c: Q) -> Result<()> {
        let idx = self.group.index_of(chi);
        if idx == 0 && !c.is_zero() {
            return Err(Error::Precondition(
                "the trivial character's divisor must stay zero".into(),
            ));
        }
        self.divisors[idx].set(ray, c);
        Ok(())
    }

    /// `self >= other` for every character.
    pub fn dominates(&self, other: &GnatFamily) -> bool {
        self.divisors
            .iter()
            .zip(&other.divisors)
            .all(|(a, b)| a.dominates(b))
    }
}

/// Character weights with total zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theta(Vec<Q>);

impl Theta {
    pub fn new(group: &GroupData, values: Vec<Q>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidTheta(format!(
                "expected {} values, found {}",
                group.order(),
                values.len()
            )));
        }
        let total: Q = values.iter().sum();
        if !total.is_zero() {
            return Err(Error::InvalidTheta(format!(
                "values sum to {}, not 0",
                format_fraction(&total)
            )));
        }
        Ok(Self(values))
    }

    pub fn zero(group: &GroupData) -> Self {
        Self(vec![Q::zero(); group.order()])
    }

    /// `1 - |G|` on the trivial character, `1` elsewhere.
    pub fn theta_plus(group: &GroupData) -> Self {
        let mut v = vec![Q::one(); group.order()];
        v[0] = Q::from_integer(1 - group.order() as i64);
        Self(v)
    }

    pub fn values(&self) -> &[Q] {
        &self.0
    }

    pub fn value(&self, group: &GroupData, chi: &Character) -> Q {
        self.0[group.index_of(chi)]
    }
}

/// `min <ray, m>` over exponent vectors `m >= 0` of weight `chi`, searched in
/// the box `prod_k [0, o_k)`. Reducing `m_k` by `o_k` keeps the weight and
/// never increases a non-negative form, so the box suffices.
pub fn max_shift_coefficient(g: &GroupData, ray: &[Q], chi: &Character) -> Result<Q> {
    check_ray(g, ray)?;
    if !g.contains(chi) {
        return Err(Error::InvalidGroup(format!(
            "{chi} is not a character of the group"
        )));
    }
    let bounds: Vec<u32> = (0..g.dimension())
        .map(|k| g.coordinate_weight_order(k))
        .collect();
    let mut best: Option<Q> = None;
    for_each_in_box(&bounds, |m| {
        if &g.rho_exponents(m) == chi {
            let v = pair(ray, m);
            if best.is_none_or(|b| v < b) {
                best = Some(v);
            }
        }
    });
    // The box always meets every weight class reachable from the coordinates;
    // unreachable classes (non-faithful data) have no monomial at all.
    best.ok_or_else(|| Error::InvalidGroup(format!("no monomial has weight {chi}")))
}

fn check_ray(g: &GroupData, ray: &[Q]) -> Result<()> {
    if ray.len() != g.dimension() {
        return Err(Error::DimensionMismatch {
            expected: g.dimension(),
            found: ray.len(),
        });
    }
    Ok(())
}

fn pair(ray: &[Q], m: &[u32]) -> Q {
    ray.iter()
        .zip(m)
        .map(|(r, &e)| r * Q::from_integer(e as i64))
        .sum()
}

pub(crate) fn for_each_in_box<F: FnMut(&[u32])>(bounds: &[u32], mut f: F) {
    if bounds.contains(&0) {
        return;
    }
    let mut m = vec![0u32; bounds.len()];
    loop {
        f(&m);
        let mut k = 0;
        loop {
            if k == m.len() {
                return;
            }
            m[k] += 1;
            if m[k] < bounds[k] {
                break;
            }
            m[k] = 0;
            k += 1;
        }
    }
}

/// `M_chi = sum_E q_{chi,E} E` over the exceptional rays of `fan`.
pub fn max_shift_family(g: &GroupData, fan: &Fan) -> Result<GnatFamily> {
    if fan.dimension() != g.dimension() {
        return Err(Error::DimensionMismatch {
            expected: g.dimension(),
            found: fan.dimension(),
        });
    }
    let exceptional = fan.exceptional_rays();
    let bounds: Vec<u32> = (0..g.dimension())
        .map(|k| g.coordinate_weight_order(k))
        .collect();
    let mut best: Vec<Vec<Option<Q>>> = vec![vec![None; exceptional.len()]; g.order()];
    for_each_in_box(&bounds, |m| {
        let idx = g.index_of(&g.rho_exponents(m));
        for (slot, &r) in best[idx].iter_mut().zip(&exceptional) {
            let v = pair(fan.ray(r), m);
            if slot.is_none_or(|b| v < b) {
                *slot = Some(v);
            }
        }
    });
    let divisors = best
        .into_iter()
        .map(|row| {
            GWeilDivisor::from_pairs(
                exceptional
                    .iter()
                    .zip(row)
                    .map(|(&r, v)| (r, v.unwrap_or_else(Q::zero))),
            )
        })
        .collect();
    GnatFamily::new(g.clone(), divisors)
}

/// `(x_k)`: the coefficient of `E_j` is the `k`-th coordinate of `e_j`.
pub fn principal_divisor(fan: &Fan, k: usize) -> Result<GWeilDivisor> {
    if k >= fan.dimension() {
        return Err(Error::DimensionMismatch {
            expected: fan.dimension(),
            found: k + 1,
        });
    }
    Ok(GWeilDivisor::from_pairs(
        fan.rays().iter().enumerate().map(|(j, r)| (j, r[k])),
    ))
}

/// `B_(chi, x_k) = D_{chi^-1} + (x_k) - D_{chi^-1 rho(x_k)}`.
pub fn zero_divisor(fam: &GnatFamily, fan: &Fan, arrow: &Arrow) -> Result<GWeilDivisor> {
    let g = fam.group();
    if arrow.coord >= g.dimension() || !g.contains(&arrow.tail) {
        return Err(Error::Precondition(format!(
            "{arrow} is not an arrow of the quiver"
        )));
    }
    let inv = g.inv(&arrow.tail);
    let shifted = g.mul(&inv, &g.coordinate_weight(arrow.coord));
    Ok(fam
        .divisor(&inv)
        .add(&principal_divisor(fan, arrow.coord)?)
        .sub(fam.divisor(&shifted)))
}

/// All `B_q` in quiver arrow order.
pub fn zero_divisors(fam: &GnatFamily, fan: &Fan) -> Result<Vec<(Arrow, GWeilDivisor)>> {
    build_quiver(fam.group())
        .arrows()
        .iter()
        .map(|a| Ok((a.clone(), zero_divisor(fam, fan, a)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyValidity {
    /// Arrows whose divisor of zeroes is not effective and integral.
    pub violations: Vec<(Arrow, GWeilDivisor)>,
}

impl FamilyValidity {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn is_valid_family(fam: &GnatFamily, fan: &Fan) -> Result<FamilyValidity> {
    let violations = zero_divisors(fam, fan)?
        .into_iter()
        .filter(|(_, b)| !b.is_effective_integral())
        .collect();
    Ok(FamilyValidity { violations })
}

/// `w_theta = sum_E sum_chi theta(chi) q_{chi,E}` over the family's support.
pub fn theta_weight(fam: &GnatFamily, theta: &Theta) -> Result<Q> {
    if theta.values().len() != fam.group().order() {
        return Err(Error::InvalidTheta(
            "theta does not match the family's group".into(),
        ));
    }
    Ok(fam
        .divisors()
        .iter()
        .zip(theta.values())
        .map(|(d, t)| d.terms().map(|(_, c)| c).sum::<Q>() * t)
        .sum())
}

/// Adds `E` to `D_chi` for every `chi` in `j`.
pub fn shift_move(fam: &GnatFamily, j: &[Character], ray: usize) -> Result<GnatFamily> {
    let g = fam.group();
    let mut seen = vec![false; g.order()];
    for chi in j {
        if !g.contains(chi) {
            return Err(Error::InvalidShift(format!(
                "{chi} is not a character of the group"
            )));
        }
        let idx = g.index_of(chi);
        if idx == 0 {
            return Err(Error::InvalidShift(
                "J contains the trivial character".into(),
            ));
        }
        seen[idx] = true;
    }
    let size = seen.iter().filter(|&&s| s).count();
    if size == 0 {
        return Err(Error::InvalidShift("J is empty".into()));
    }
    let mut out = fam.clone();
    for (idx, _) in seen.iter().enumerate().filter(|(_, &s)| s) {
        out.divisors[idx].add_term(ray, Q::one());
    }
    Ok(out)
}

/// Re-indexes the coefficients of `fam` from `from` to `to` by matching ray
/// generators, and re-checks validity on `to`.
pub fn direct_transform(
    fam: &GnatFamily,
    from: &Fan,
    to: &Fan,
) -> Result<(GnatFamily, FamilyValidity)> {
    if !from.same_rays(to) {
        return Err(Error::RaySetMismatch(
            "direct transforms need fans with identical rays".into(),
        ));
    }
    let ray_map: Vec<usize> = from
        .rays()
        .iter()
        .map(|r| to.ray_index(r).expect("same ray set"))
        .collect();
    for d in fam.divisors() {
        if let Some(&r) = d.support().iter().find(|&&r| r >= ray_map.len()) {
            return Err(Error::InvalidFan(format!(
                "family uses E{} outside the source fan",
                r + 1
            )));
        }
    }
    let moved = GnatFamily {
        group: fam.group().clone(),
        divisors: fam
            .divisors()
            .iter()
            .map(|d| d.map_rays(&ray_map))
            .collect(),
    };
    let validity = is_valid_family(&moved, to)?;
    Ok((moved, validity))
}

/// Whether the arrow map of `q` is zero at general points of `orbit`.
pub fn arrow_vanishes(b: &GWeilDivisor, orbit: &OrbitId) -> bool {
    b.meets_orbit(orbit)
}

/// Largest group for which theta stability enumerates character subsets.
pub const STABILITY_ORDER_LIMIT: usize = 20;

/// King stability of the fibre over a general point of `orbit`: every proper
/// nonzero subrepresentation `S` (a character set closed under the nonzero
/// arrow maps) has `theta(S) > 0`.
pub fn is_theta_stable_at(
    fam: &GnatFamily,
    fan: &Fan,
    theta: &Theta,
    orbit: &OrbitId,
) -> Result<bool> {
    let g = fam.group();
    if g.order() > STABILITY_ORDER_LIMIT {
        return Err(Error::Precondition(format!(
            "stability check enumerates subsets; |G| = {} exceeds {}",
            g.order(),
            STABILITY_ORDER_LIMIT
        )));
    }
    if theta.values().len() != g.order() {
        return Err(Error::InvalidTheta(
            "theta does not match the family's group".into(),
        ));
    }
    let quiver = build_quiver(g);
    let mut live: Vec<(usize, usize)> = Vec::new();
    for (a, b) in zero_divisors(fam, fan)? {
        if !arrow_vanishes(&b, orbit) {
            live.push((g.index_of(&a.tail), g.index_of(&quiver.head(&a))));
        }
    }
    let full = (1u32 << g.order()) - 1;
    for s in 1..full {
        let closed = live
            .iter()
            .all(|&(t, h)| s & (1 << t) == 0 || s & (1 << h) != 0);
        if !closed {
            continue;
        }
        let weight: Q = (0..g.order())
            .filter(|i| s & (1 << i) != 0)
            .map(|i| theta.values()[i])
            .sum();
        if !weight.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximal cones whose torus-fixed fibre is not theta-stable.
pub fn unstable_fixed_points(fam: &GnatFamily, fan: &Fan, theta: &Theta) -> Result<Vec<Cone>> {
    let mut out = Vec::new();
    for cone in fan.maximal_cones() {
        if !is_theta_stable_at(fam, fan, theta, &OrbitId(cone.clone()))? {
            out.push(cone.clone());
        }
    }
    Ok(out)
}
