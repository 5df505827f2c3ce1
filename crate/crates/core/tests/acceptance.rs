//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.
//!
//! Reference tables below are transcribed by hand; everything marked "oracle"
//! is recomputed here without going through the library's own routines.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use mckay_core::config::ProjectConfig;
use mckay_core::family::{
    direct_transform, is_valid_family, max_shift_family, principal_divisor, shift_move,
    unstable_fixed_points, zero_divisor, GWeilDivisor, GnatFamily, Theta,
};
use mckay_core::fan::{orbits, validate_fan, Cone, CoordinatePermutation, Fan, OrbitId};
use mckay_core::group::{Character, GroupData};
use mckay_core::lattice::LatticeN;
use mckay_core::orthogonality::{
    check_corollary2, check_pair, symmetry_reduction, transport_verdict, PairStatus, Reference,
};
use mckay_core::projective::is_projective;
use mckay_core::quiver::{build_quiver, Arrow};
use mckay_core::rational::Q;
use mckay_core::triangulation::{search_symmetric_triangulations, TriangulationSearch};
use rayon::prelude::*;

/// Maximal-shift coefficients in sixths, columns E4..E10.
const Q_TABLE: [((u32, u32), [i64; 7]); 12] = [
    ((0, 0), [0, 0, 0, 0, 0, 0, 0]),
    ((2, 0), [2, 4, 0, 2, 0, 2, 0]),
    ((4, 0), [4, 8, 0, 4, 0, 4, 0]),
    ((1, 1), [1, 2, 3, 1, 3, 4, 0]),
    ((1, 0), [1, 2, 3, 4, 0, 1, 3]),
    ((4, 1), [4, 2, 0, 1, 3, 1, 3]),
    ((3, 1), [3, 6, 3, 3, 3, 6, 0]),
    ((3, 0), [3, 6, 3, 6, 0, 3, 3]),
    ((0, 1), [6, 6, 0, 3, 3, 3, 3]),
    ((5, 1), [5, 4, 3, 5, 3, 2, 0]),
    ((5, 0), [5, 4, 3, 2, 0, 5, 3]),
    ((2, 1), [2, 4, 0, 5, 3, 5, 3]),
];

/// Principal divisors `(x_k)` in sixths, columns E1..E10.
const PRINCIPAL: [[i64; 10]; 3] = [
    [6, 0, 0, 1, 2, 3, 1, 3, 4, 0],
    [0, 6, 0, 1, 2, 3, 4, 0, 1, 3],
    [0, 0, 6, 4, 2, 0, 1, 3, 1, 3],
];

/// Divisors of zeroes: (character, coordinate, 1-based support).
const ZEROES: [((u32, u32), usize, &[usize]); 36] = [
    ((0, 0), 1, &[1]),
    ((0, 0), 2, &[2]),
    ((0, 0), 3, &[3]),
    ((4, 0), 1, &[1]),
    ((4, 0), 2, &[2]),
    ((4, 0), 3, &[3]),
    ((2, 0), 1, &[1, 5, 9]),
    ((2, 0), 2, &[2, 5, 7]),
    ((2, 0), 3, &[3, 4, 5]),
    ((5, 1), 1, &[1, 6, 8, 9]),
    ((5, 1), 2, &[2, 6]),
    ((5, 1), 3, &[3, 8]),
    ((5, 0), 1, &[1, 6]),
    ((5, 0), 2, &[2, 6, 7, 10]),
    ((5, 0), 3, &[3, 10]),
    ((2, 1), 1, &[1, 8]),
    ((2, 1), 2, &[2, 10]),
    ((2, 1), 3, &[3, 4, 8, 10]),
    ((1, 1), 1, &[1, 4, 5, 6, 7, 8, 9]),
    ((1, 1), 2, &[2, 6, 7]),
    ((1, 1), 3, &[3, 4, 8]),
    ((1, 0), 1, &[1, 6, 9]),
    ((1, 0), 2, &[2, 4, 5, 6, 7, 9, 10]),
    ((1, 0), 3, &[3, 4, 10]),
    ((4, 1), 1, &[1, 8, 9]),
    ((4, 1), 2, &[2, 7, 10]),
    ((4, 1), 3, &[3, 4, 5, 7, 8, 9, 10]),
    ((3, 1), 1, &[1, 6, 8, 9]),
    ((3, 1), 2, &[2, 5, 6, 7, 9]),
    ((3, 1), 3, &[3, 4, 5, 8, 9]),
    ((3, 0), 1, &[1, 5, 6, 7, 9]),
    ((3, 0), 2, &[2, 6, 7, 10]),
    ((3, 0), 3, &[3, 4, 5, 7, 10]),
    ((0, 1), 1, &[1, 4, 5, 8, 9]),
    ((0, 1), 2, &[2, 4, 5, 7, 10]),
    ((0, 1), 3, &[3, 4, 8, 10]),
];

/// [1,1]-components for the pair (S8, S1,7).
const S8_COMPONENTS: [&[(u32, u32)]; 4] = [
    &[(0, 0), (2, 1), (5, 0), (1, 1)],
    &[(5, 1), (4, 1), (2, 0)],
    &[(1, 0), (3, 1)],
    &[(0, 1), (4, 0), (3, 0)],
];

const Y_CONES: [[usize; 3]; 12] = [
    [1, 6, 7],
    [1, 7, 9],
    [1, 8, 9],
    [2, 4, 7],
    [2, 4, 10],
    [2, 6, 7],
    [3, 4, 9],
    [3, 4, 10],
    [3, 8, 9],
    [4, 5, 7],
    [4, 5, 9],
    [5, 7, 9],
];

fn chi(c: (u32, u32)) -> Character {
    Character(vec![c.0, c.1])
}

fn sixths(n: i64) -> Q {
    Q::new(n, 6)
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn orbit(labels: &[usize]) -> OrbitId {
    OrbitId::of(&labels.iter().map(|l| l - 1).collect::<Vec<_>>())
}

struct Ctx {
    group: GroupData,
    lat: LatticeN,
    y: Fan,
    ghilb: Fan,
    family: GnatFamily,
    rotation: CoordinatePermutation,
}

fn setup() -> Result<Ctx, String> {
    let cfg = ProjectConfig::from_path(&fixture("y.toml")).map_err(|e| e.to_string())?;
    let y = cfg.resolve_fan().map_err(|e| e.to_string())?;
    let ghilb = cfg.reference.clone().ok_or("y.toml has no reference fan")?;
    let family = max_shift_family(&cfg.group, &y).map_err(|e| e.to_string())?;
    Ok(Ctx {
        lat: cfg.lattice(),
        group: cfg.group.clone(),
        y,
        ghilb,
        family,
        rotation: cfg.symmetry.clone().ok_or("y.toml has no symmetry")?,
    })
}

type Check = Result<(), Vec<String>>;

fn collect(errors: Vec<String>) -> Check {
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn criterion_1(ctx: &Ctx) -> Check {
    let start = Instant::now();
    let fam = max_shift_family(&ctx.group, &ctx.y).map_err(|e| vec![e.to_string()])?;
    let elapsed = start.elapsed();
    let mut errors = Vec::new();
    let mut checked = 0;
    for (c, row) in Q_TABLE {
        for (col, &v) in row.iter().enumerate() {
            let ray = col + 3;
            let got = fam.coefficient(&chi(c), ray);
            if got != sixths(v) {
                errors.push(format!(
                    "q[{}, E{}] = {got}, expected {v}/6",
                    chi(c),
                    ray + 1
                ));
            }
            checked += 1;
        }
    }
    if checked != 84 {
        errors.push(format!("checked {checked} entries"));
    }
    // Nothing outside the exceptional columns.
    for d in fam.divisors() {
        if d.support().iter().any(|&r| r < 3) {
            errors.push(format!("coordinate divisor in support: {d}"));
        }
    }
    if elapsed > Duration::from_secs(1) {
        errors.push(format!("took {elapsed:?}"));
    }
    collect(errors)
}

fn criterion_2(ctx: &Ctx) -> Check {
    let mut errors = Vec::new();
    for (k, row) in PRINCIPAL.iter().enumerate() {
        let d = principal_divisor(&ctx.y, k).map_err(|e| vec![e.to_string()])?;
        for (j, &v) in row.iter().enumerate() {
            if d.coefficient(j) != sixths(v) {
                errors.push(format!("(x{})[E{}] = {}", k + 1, j + 1, d.coefficient(j)));
            }
        }
    }
    collect(errors)
}

fn expected_zero(support: &[usize]) -> GWeilDivisor {
    GWeilDivisor::from_pairs(support.iter().map(|&s| (s - 1, Q::from_integer(1))))
}

fn criterion_3(ctx: &Ctx) -> Check {
    let mut errors = Vec::new();
    let mut seen = BTreeSet::new();
    for (c, k, support) in ZEROES {
        let arrow = Arrow::new(chi(c), k - 1);
        seen.insert(arrow.clone());
        let b = zero_divisor(&ctx.family, &ctx.y, &arrow).map_err(|e| vec![e.to_string()])?;
        if b != expected_zero(support) {
            errors.push(format!("B{arrow} = {b}"));
        }
        if b.terms().any(|(_, v)| v != Q::from_integer(1)) {
            errors.push(format!("B{arrow} has a coefficient outside {{0, 1}}"));
        }
    }
    if seen.len() != 36 {
        errors.push(format!("{} distinct arrows in the table", seen.len()));
    }
    collect(errors)
}

fn criterion_4(ctx: &Ctx) -> Check {
    // Oracle: assemble D_{chi^-1} + (x_k) - D_{chi^-1 rho(x_k)} by hand.
    let mut errors = Vec::new();
    let q = |c: (u32, u32), e: usize| {
        let row = Q_TABLE.iter().find(|(x, _)| *x == c).unwrap().1;
        if (4..=10).contains(&e) {
            sixths(row[e - 4])
        } else {
            Q::from_integer(0)
        }
    };
    // chi_0_0, x1: chi^-1 = chi_0_0, chi^-1 rho(x1) = chi_1_1.
    // chi_1_1, x3: chi^-1 = chi_5_1, chi^-1 rho(x3) = chi_3_0.
    let cases = [
        ((0, 0), 1usize, (0, 0), (1, 1), &[1usize][..]),
        ((1, 1), 3, (5, 1), (3, 0), &[3, 4, 8][..]),
    ];
    for (c, k, inv, shifted, support) in cases {
        let by_hand = GWeilDivisor::from_pairs((1..=10).map(|e| {
            (
                e - 1,
                q(inv, e) + sixths(PRINCIPAL[k - 1][e - 1]) - q(shifted, e),
            )
        }));
        let lib = zero_divisor(&ctx.family, &ctx.y, &Arrow::new(chi(c), k - 1))
            .map_err(|e| vec![e.to_string()])?;
        if by_hand != expected_zero(support) || lib != by_hand {
            errors.push(format!(
                "B[{}, x{k}]: by hand {by_hand}, library {lib}",
                chi(c)
            ));
        }
    }
    collect(errors)
}

fn criterion_5(ctx: &Ctx) -> Check {
    let v = check_pair(&ctx.family, &ctx.y, (&orbit(&[8]), &orbit(&[1, 7])))
        .map_err(|e| vec![e.to_string()])?;
    let mut errors = Vec::new();
    if !v.is_orthogonal() {
        errors.push("(S8, S1,7) not certified".into());
    }
    let got: BTreeSet<BTreeSet<Character>> = v
        .components
        .iter()
        .map(|c| c.vertices.iter().cloned().collect())
        .collect();
    let want: BTreeSet<BTreeSet<Character>> = S8_COMPONENTS
        .iter()
        .map(|c| c.iter().map(|&x| chi(x)).collect())
        .collect();
    if got != want {
        errors.push(format!("components differ: {got:?}"));
    }
    collect(errors)
}

fn criterion_6(ctx: &Ctx) -> Check {
    let mut errors = Vec::new();
    let s17 = orbit(&[1, 7]);
    for i in (1..=10).filter(|&i| i != 8) {
        let v = check_pair(&ctx.family, &ctx.y, (&orbit(&[i]), &s17))
            .map_err(|e| vec![e.to_string()])?;
        if !v.is_orthogonal() {
            errors.push(format!("(S{i}, S1,7) inconclusive"));
        }
    }
    let red =
        symmetry_reduction(&ctx.family, &ctx.y, &ctx.rotation).map_err(|e| vec![e.to_string()])?;
    let class = vec![orbit(&[1, 7]), orbit(&[2, 4]), orbit(&[3, 9])];
    let mut sorted = class.clone();
    sorted.sort();
    if !red.orbit_classes.contains(&sorted) {
        errors.push("S1,7, S2,4, S3,9 do not form one class".into());
    }
    // Full sweep: the verdict of (S, S') moved by the rotation equals the
    // verdict of the moved pair, arrow by arrow and component by component.
    let all: Vec<OrbitId> = orbits(&ctx.y, 1)
        .into_iter()
        .chain(orbits(&ctx.y, 2))
        .collect();
    let quiver_group = &ctx.group;
    for a in &all {
        for b in &all {
            let v = check_pair(&ctx.family, &ctx.y, (a, b)).map_err(|e| vec![e.to_string()])?;
            let (ma, mb, types, comps) = transport_verdict(&v, &red, quiver_group, &ctx.rotation);
            let w = check_pair(&ctx.family, &ctx.y, (&ma, &mb)).map_err(|e| vec![e.to_string()])?;
            let w_types = w.types.iter().map(|(x, t)| (x.clone(), *t)).collect();
            let mut w_comps: Vec<Vec<Character>> =
                w.components.iter().map(|c| c.vertices.clone()).collect();
            w_comps.sort();
            if types != w_types || comps != w_comps || v.outcome() != w.outcome() {
                errors.push(format!("({a}, {b}) vs ({ma}, {mb})"));
            }
        }
    }
    collect(errors)
}

fn criterion_7(ctx: &Ctx) -> Check {
    let start = Instant::now();
    let cfg = ProjectConfig::from_path(&fixture("search.toml")).map_err(|e| vec![e.to_string()])?;
    let y = cfg.resolve_fan().map_err(|e| vec![e.to_string()])?;
    let fam = max_shift_family(&cfg.group, &y).map_err(|e| vec![e.to_string()])?;
    let reference = Reference {
        fan: cfg
            .reference
            .as_ref()
            .ok_or(vec!["no reference".to_string()])?,
        theta: Theta::theta_plus(&cfg.group),
    };
    let report = check_corollary2(&fam, &y, Some(&reference)).map_err(|e| vec![e.to_string()])?;
    let elapsed = start.elapsed();
    let mut errors = Vec::new();
    if y != ctx.y {
        errors.push("searched fan differs from y.toml".into());
    }
    if !report.pass() {
        errors.push(format!(
            "{} pairs inconclusive",
            report.count(PairStatus::Inconclusive)
        ));
    }
    let expected_pairs = 28 + 7 * report.curves.len();
    if report.surfaces.len() != 7
        || report.curves.len() != 21
        || report.records.len() != expected_pairs
    {
        errors.push(format!(
            "{} surfaces, {} curves, {} pairs",
            report.surfaces.len(),
            report.curves.len(),
            report.records.len()
        ));
    }
    // Only self-pairs may need the reference, and they all lie on it.
    for r in &report.records {
        if r.status == PairStatus::Discharged && r.first != r.second {
            errors.push(format!("({}, {}) needed the reference", r.first, r.second));
        }
    }
    if elapsed > Duration::from_secs(10) {
        errors.push(format!("took {elapsed:?}"));
    }
    // Without a reference the criterion alone leaves exactly the 7 self-pairs open.
    let bare = check_corollary2(&fam, &y, None).map_err(|e| vec![e.to_string()])?;
    let open: Vec<_> = bare
        .records
        .iter()
        .filter(|r| r.status == PairStatus::Inconclusive)
        .collect();
    if open.len() != 7 || open.iter().any(|r| r.first != r.second) {
        errors.push(format!("{} pairs open without the reference", open.len()));
    }
    collect(errors)
}

fn criterion_8(ctx: &Ctx) -> Check {
    let mut errors = Vec::new();
    let err = |e: mckay_core::Error| vec![e.to_string()];
    let report = validate_fan(&ctx.y, &ctx.lat).map_err(err)?;
    if !(report.smooth && report.crepant && report.complete) {
        errors.push(format!("Y fails validation:\n{report}"));
    }
    if ctx.y.maximal_cones().len() != ctx.group.order() {
        errors.push(format!("{} maximal cones", ctx.y.maximal_cones().len()));
    }
    let want: Vec<Cone> = Y_CONES
        .iter()
        .map(|c| Cone::new(c.iter().map(|x| x - 1).collect()))
        .collect();
    let mut want_sorted = want.clone();
    want_sorted.sort();
    if ctx.y.maximal_cones() != want_sorted.as_slice() {
        errors.push("Y cone list changed".into());
    }
    if is_projective(&ctx.y).map_err(err)? {
        errors.push("Y reported projective".into());
    }
    let single = ProjectConfig::from_path(&fixture("single_cone.toml")).map_err(err)?;
    let single_fan = single.resolve_fan().map_err(err)?;
    if validate_fan(&single_fan, &single.lattice())
        .map_err(err)?
        .smooth
    {
        errors.push("single cone reported smooth".into());
    }
    if !is_projective(&single_fan).map_err(err)? {
        errors.push("single cone reported non-projective".into());
    }
    if !is_projective(&ctx.ghilb).map_err(err)? {
        errors.push("G-Hilb fan reported non-projective".into());
    }
    let ghilb_report = validate_fan(&ctx.ghilb, &ctx.lat).map_err(err)?;
    if !ghilb_report.ok() {
        errors.push("G-Hilb fan fails validation".into());
    }

    // Triangulation counts from an independent enumeration.
    let rays = ctx.y.rays().to_vec();
    let mut search = TriangulationSearch::new(&ctx.lat).map_err(err)?;
    search.rays = rays;
    let all = search_symmetric_triangulations(&ctx.lat, &search).map_err(err)?;
    let count =
        |edges: &[(usize, usize)], sym: &CoordinatePermutation| -> Result<usize, Vec<String>> {
            let mut s = search.clone();
            s.required_edges = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
            s.symmetry = sym.clone();
            Ok(search_symmetric_triangulations(&ctx.lat, &s)
                .map_err(err)?
                .len())
        };
    let id = CoordinatePermutation::identity(3);
    let counts = [
        (all.len(), 80, "all"),
        (count(&[], &ctx.rotation)?, 5, "rotation-invariant"),
        (
            count(&[(1, 7), (2, 4), (3, 9)], &ctx.rotation)?,
            1,
            "Y constraints",
        ),
        (count(&[(1, 7)], &id)?, 17, "edge {1,7}"),
        (
            count(&[(1, 4), (2, 4)], &ctx.rotation)?,
            0,
            "edges {1,4},{2,4} with rotation",
        ),
    ];
    for (got, want, what) in counts {
        if got != want {
            errors.push(format!("{what}: {got} triangulations, expected {want}"));
        }
    }
    for f in &all {
        if !validate_fan(f, &ctx.lat).map_err(err)?.ok() {
            errors.push("search returned an invalid fan".into());
        }
    }
    // The reference fixture is the unique triangulation on which the family
    // is theta_+-stable at every fixed point.
    let theta = Theta::theta_plus(&ctx.group);
    let stable: Vec<&Fan> = all
        .par_iter()
        .filter(|f| {
            let fam = max_shift_family(&ctx.group, f).expect("family");
            is_valid_family(&fam, f).expect("validity").is_valid()
                && unstable_fixed_points(&fam, f, &theta)
                    .expect("stability")
                    .is_empty()
        })
        .collect();
    if stable.len() != 1 || *stable[0] != ctx.ghilb {
        errors.push(format!("{} stable triangulations", stable.len()));
    }
    let y_edges: BTreeSet<Cone> = ctx.y.faces(2).into_iter().collect();
    let g_edges: BTreeSet<Cone> = ctx.ghilb.faces(2).into_iter().collect();
    let only_y: Vec<Cone> = y_edges.difference(&g_edges).cloned().collect();
    let flips: Vec<Cone> = [[1, 7], [2, 4], [3, 9]]
        .iter()
        .map(|e| Cone::new(e.iter().map(|x| x - 1).collect()))
        .collect();
    if only_y != flips {
        errors.push(format!("Y and G-Hilb differ in {only_y:?}"));
    }
    collect(errors)
}

/// Oracle weight of a monomial, from the raw weight matrix.
fn oracle_weight(orders: &[u32], weights: &[Vec<u32>], m: &[u32]) -> Vec<u32> {
    orders
        .iter()
        .zip(weights)
        .map(|(&r, row)| row.iter().zip(m).map(|(&a, &e)| a * e).sum::<u32>() % r)
        .collect()
}

fn oracle_min(
    orders: &[u32],
    weights: &[Vec<u32>],
    ray: &[Q],
    target: &[u32],
    bound: u32,
) -> Option<Q> {
    let n = ray.len();
    let mut best: Option<Q> = None;
    let total = (bound as usize).pow(n as u32);
    for idx in 0..total {
        let mut m = vec![0u32; n];
        let mut rest = idx;
        for e in m.iter_mut() {
            *e = (rest % bound as usize) as u32;
            rest /= bound as usize;
        }
        if oracle_weight(orders, weights, &m) == target {
            let v: Q = ray
                .iter()
                .zip(&m)
                .map(|(r, &e)| r * Q::from_integer(e as i64))
                .sum();
            if best.is_none_or(|b| v < b) {
                best = Some(v);
            }
        }
    }
    best
}

fn criterion_9(ctx: &Ctx) -> Check {
    let mut errors = Vec::new();
    let err = |e: mckay_core::Error| vec![e.to_string()];

    // Monomial oracle: the wide box [0, |G|)^n agrees with the library.
    let groups: Vec<(Vec<u32>, Vec<Vec<u32>>)> = vec![
        (vec![6, 2], vec![vec![1, 1, 4], vec![1, 0, 1]]),
        (vec![3], vec![vec![1, 1, 1]]),
        (vec![7], vec![vec![1, 2, 4]]),
        (vec![2, 2], vec![vec![1, 1, 0], vec![0, 1, 1]]),
    ];
    for (orders, weights) in &groups {
        let g = GroupData::new(orders.clone(), weights.clone()).map_err(err)?;
        let lat = LatticeN::new(g.clone());
        let search = TriangulationSearch::new(&lat).map_err(err)?;
        let Some(fan) = search_symmetric_triangulations(&lat, &search)
            .map_err(err)?
            .into_iter()
            .next()
        else {
            errors.push(format!("no crepant fan for {orders:?}"));
            continue;
        };
        let fam = max_shift_family(&g, &fan).map_err(err)?;
        for c in g.characters() {
            for r in fan.exceptional_rays() {
                let want = oracle_min(orders, weights, fan.ray(r), &c.0, g.order() as u32);
                if want != Some(fam.coefficient(&c, r)) {
                    errors.push(format!(
                        "{orders:?}: q[{c}, E{}] disagrees with the oracle",
                        r + 1
                    ));
                }
            }
        }
        if !is_valid_family(&fam, &fan).map_err(err)?.is_valid() {
            errors.push(format!("{orders:?}: maximal-shift family invalid"));
        }
        let q = build_quiver(&g);
        for v in q.vertices() {
            if q.in_degree(v) != g.dimension() || q.out_degree(v) != g.dimension() {
                errors.push(format!("{orders:?}: degree at {v}"));
            }
        }
    }

    // Local maximality: every shift move from the maximal-shift family breaks validity.
    let chars: Vec<Character> = ctx.group.characters().into_iter().skip(1).collect();
    let exceptional = ctx.y.exceptional_rays();
    let subsets = (1u32 << chars.len()) - 1;
    let valid_moves: usize = (1..=subsets)
        .into_par_iter()
        .map(|mask| {
            let j: Vec<Character> = chars
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, c)| c.clone())
                .collect();
            exceptional
                .iter()
                .filter(|&&e| {
                    let moved = shift_move(&ctx.family, &j, e).expect("shift");
                    is_valid_family(&moved, &ctx.y)
                        .expect("validity")
                        .is_valid()
                })
                .count()
        })
        .sum();
    if subsets != 2047 || exceptional.len() != 7 {
        errors.push(format!("sweep size {subsets} x {}", exceptional.len()));
    }
    if valid_moves != 0 {
        errors.push(format!("{valid_moves} shift moves stay valid"));
    }

    // Round trips through the reference fan.
    let (there, v1) = direct_transform(&ctx.family, &ctx.y, &ctx.ghilb).map_err(err)?;
    let (back, v2) = direct_transform(&there, &ctx.ghilb, &ctx.y).map_err(err)?;
    if back != ctx.family || !v1.is_valid() || !v2.is_valid() {
        errors.push("direct transform round trip failed".into());
    }
    let ghilb_family = max_shift_family(&ctx.group, &ctx.ghilb).map_err(err)?;
    let (onto_y, _) = direct_transform(&ghilb_family, &ctx.ghilb, &ctx.y).map_err(err)?;
    if onto_y != ctx.family {
        errors.push("transform of the G-Hilb family is not the maximal-shift family on Y".into());
    }
    let (same, _) = direct_transform(&ctx.family, &ctx.y, &ctx.y).map_err(err)?;
    if same != ctx.family {
        errors.push("identity transform changed the family".into());
    }
    collect(errors)
}

type Criterion = (&'static str, fn(&Ctx) -> Check);

fn main() {
    let ctx = match setup() {
        Ok(c) => c,
        Err(e) => {
            println!("acceptance setup failed: {e}");
            std::process::exit(1);
        }
    };
    let criteria: [Criterion; 9] = [
        ("q-table reproduction (84 entries)", criterion_1),
        ("principal divisors (30 coefficients)", criterion_2),
        (
            "divisors of zeroes (36 arrows, coefficients in {0,1})",
            criterion_3,
        ),
        ("indexing convention spot checks", criterion_4),
        ("(S8, S1,7) components and verdict", criterion_5),
        ("(Si, S1,7) checklist and rotation symmetry", criterion_6),
        ("orthogonality of all exceptional orbit pairs", criterion_7),
        ("fan validation, projectivity, search counts", criterion_8),
        (
            "oracle, maximality, round-trip and degree properties",
            criterion_9,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run(&ctx);
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({ms} ms)", i + 1),
            Err(errors) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({ms} ms)", i + 1);
                for e in errors.iter().take(20) {
                    println!("    {e}");
                }
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria pass");
}
