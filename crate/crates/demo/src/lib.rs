//! Browser demo. Every operation takes the project config as TOML text and
//! returns JSON; the `#[wasm_bindgen]` wrappers only convert errors.

use mckay_core::config::{FanSpec, ProjectConfig};
use mckay_core::family::{
    is_valid_family, max_shift_family, shift_move, theta_weight, unstable_fixed_points, GnatFamily,
};
use mckay_core::fan::{validate_fan, CoordinatePermutation, Fan, OrbitId};
use mckay_core::group::Character;
use mckay_core::orthogonality::{check_pair, exceptional_orbits};
use mckay_core::projective::is_projective;
use mckay_core::quiver::{build_quiver, ArrowMark};
use mckay_core::rational::{format_fraction, Q};
use mckay_core::tables::verdict_json;
use mckay_core::triangulation::{search_symmetric_triangulations, TriangulationSearch};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const DEFAULT_CONFIG: &str = include_str!("../default.toml");

type Out = Result<String, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse(config: &str) -> Result<ProjectConfig, String> {
    ProjectConfig::parse(config, "config", None).map_err(err)
}

fn to_f64(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Junior simplex drawn as an equilateral triangle with e1, e2, e3 at the corners.
fn plane_point(v: &[Q]) -> (f64, f64) {
    let (b, c) = (to_f64(&v[1]), to_f64(&v[2]));
    (b + c / 2.0, c * 3f64.sqrt() / 2.0)
}

fn rays_json(fan_rays: &[Vec<Q>]) -> Value {
    fan_rays
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let (x, y) = plane_point(r);
            json!({
                "label": format!("e{}", i + 1),
                "coords": r.iter().map(format_fraction).collect::<Vec<_>>(),
                "x": x,
                "y": y,
                "exceptional": r.iter().filter(|c| **c != Q::from_integer(0)).count() != 1,
            })
        })
        .collect()
}

fn fan_json(cfg: &ProjectConfig, fan: &Fan) -> Result<Value, String> {
    let report = validate_fan(fan, &cfg.lattice()).map_err(err)?;
    let projective = if report.complete {
        Some(is_projective(fan).map_err(err)?)
    } else {
        None
    };
    let cones: Vec<Vec<usize>> = fan
        .maximal_cones()
        .iter()
        .map(|c| c.rays().iter().map(|r| r + 1).collect())
        .collect();
    Ok(json!({
        "cones": cones,
        "smooth": report.smooth,
        "crepant": report.crepant,
        "complete": report.complete,
        "projective": projective,
    }))
}

fn one_based_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| format!("expected a 1-based label, got {x:?}"))
        })
        .collect()
}

/// Draws the configured fan, or runs a triangulation search when `edges` or
/// `symmetry` is non-empty. `edges` looks like `1,7; 2,4`; `symmetry` like `2,3,1`.
pub fn fan_view(config: &str, edges: &str, symmetry: &str) -> Out {
    let cfg = parse(config)?;
    let searching = !edges.trim().is_empty() || !symmetry.trim().is_empty();
    let (rays, fans, reference) = if searching || matches!(cfg.fan, FanSpec::Search(_)) {
        let lat = cfg.lattice();
        let mut search = match &cfg.fan {
            FanSpec::Search(s) => s.clone(),
            FanSpec::Explicit(f) => TriangulationSearch {
                rays: f.rays().to_vec(),
                ..TriangulationSearch::new(&lat).map_err(err)?
            },
        };
        if !edges.trim().is_empty() {
            search.required_edges = edges
                .split(';')
                .filter(|e| !e.trim().is_empty())
                .map(|e| match one_based_list(e)?.as_slice() {
                    [a, b] => Ok((a - 1, b - 1)),
                    _ => Err(format!("an edge needs two labels: {e:?}")),
                })
                .collect::<Result<_, String>>()?;
        }
        if !symmetry.trim().is_empty() {
            search.symmetry =
                CoordinatePermutation::from_one_based(&one_based_list(symmetry)?).map_err(err)?;
        }
        let found = search_symmetric_triangulations(&lat, &search).map_err(err)?;
        let fans = found
            .iter()
            .map(|f| fan_json(&cfg, f))
            .collect::<Result<Vec<_>, _>>()?;
        (search.rays.clone(), fans, Value::Null)
    } else {
        let fan = cfg.resolve_fan().map_err(err)?;
        let reference = match &cfg.reference {
            Some(r) => fan_json(&cfg, r)?,
            None => Value::Null,
        };
        (fan.rays().to_vec(), vec![fan_json(&cfg, &fan)?], reference)
    };
    Ok(json!({
        "rays": rays_json(&rays),
        "fans": fans,
        "reference": reference,
    })
    .to_string())
}

fn valid_fan(cfg: &ProjectConfig) -> Result<Fan, String> {
    let fan = cfg.resolve_fan().map_err(err)?;
    let report = validate_fan(&fan, &cfg.lattice()).map_err(err)?;
    if !report.ok() {
        return Err(format!("the fan is not a crepant resolution:\n{report}"));
    }
    Ok(fan)
}

/// Verdict for the orbit pair plus a circular quiver layout with arrow types.
pub fn pair_verdict(config: &str, a: &str, b: &str) -> Out {
    let cfg = parse(config)?;
    let fan = valid_fan(&cfg)?;
    let fam = max_shift_family(&cfg.group, &fan).map_err(err)?;
    let a: OrbitId = a.parse().map_err(err)?;
    let b: OrbitId = b.parse().map_err(err)?;
    let v = check_pair(&fam, &fan, (&a, &b)).map_err(err)?;
    let q = build_quiver(&cfg.group);
    let n = q.vertices().len() as f64;
    let component_of = |chi: &Character| v.components.iter().position(|c| c.vertices.contains(chi));
    let vertices: Vec<Value> = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            let t = std::f64::consts::TAU * i as f64 / n - std::f64::consts::FRAC_PI_2;
            json!({
                "name": chi.name(),
                "x": t.cos(),
                "y": t.sin(),
                "component": component_of(chi),
            })
        })
        .collect();
    let marks = v.marks();
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|arr| {
            json!({
                "tail": arr.tail.name(),
                "head": q.head(arr).name(),
                "coord": arr.coord + 1,
                "type": v.type_of(arr).map(|t| t.label()),
                "witness": matches!(marks.get(arr), Some(ArrowMark::Witness)),
            })
        })
        .collect();
    let (surfaces, curves) = exceptional_orbits(&fan);
    Ok(json!({
        "verdict": verdict_json(&v, &q),
        "quiver": { "vertices": vertices, "arrows": arrows },
        "orbits": {
            "surfaces": surfaces.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
            "curves": curves.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
        },
    })
    .to_string())
}

fn family_json(fam: &GnatFamily, fan: &Fan, cfg: &ProjectConfig) -> Result<Value, String> {
    let theta = cfg.theta_or_plus();
    let rays = fan.exceptional_rays();
    let rows: Vec<Value> = fam
        .group()
        .characters()
        .iter()
        .map(|chi| {
            json!({
                "character": chi.name(),
                "coefficients": rays.iter().map(|&r| format_fraction(&fam.coefficient(chi, r))).collect::<Vec<_>>(),
            })
        })
        .collect();
    let validity = is_valid_family(fam, fan).map_err(err)?;
    let unstable = if validity.is_valid() {
        unstable_fixed_points(fam, fan, &theta)
            .map_err(err)?
            .into_iter()
            .map(|c| OrbitId(c).to_string())
            .collect()
    } else {
        Vec::new()
    };
    Ok(json!({
        "rows": rows,
        "weight": format_fraction(&theta_weight(fam, &theta).map_err(err)?),
        "valid": validity.is_valid(),
        "violations": validity
            .violations
            .iter()
            .map(|(a, d)| format!("B[{}, x{}] = {}", a.tail, a.coord + 1, d))
            .collect::<Vec<_>>(),
        "unstable": unstable,
    }))
}

/// Applies shift moves to the maximal-shift family. One move per line:
/// `E4: chi_1_0 chi_2_1` adds E4 to each listed divisor.
pub fn shift_explorer(config: &str, moves: &str) -> Out {
    let cfg = parse(config)?;
    let fan = valid_fan(&cfg)?;
    let start = max_shift_family(&cfg.group, &fan).map_err(err)?;
    let chars = cfg.group.characters();
    let mut fam = start.clone();
    for line in moves.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (ray, rest) = line
            .split_once(':')
            .ok_or_else(|| format!("expected `E<k>: chi_...`, got {line:?}"))?;
        let ray = ray
            .trim()
            .strip_prefix(['E', 'e'])
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1 && k <= fan.rays().len())
            .ok_or_else(|| format!("unknown ray in {line:?}"))?
            - 1;
        let j = rest
            .split_whitespace()
            .map(|name| {
                chars
                    .iter()
                    .find(|c| c.name() == name)
                    .cloned()
                    .ok_or_else(|| format!("unknown character {name:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        fam = shift_move(&fam, &j, ray).map_err(err)?;
    }
    Ok(json!({
        "rays": fan.exceptional_rays().iter().map(|r| format!("E{}", r + 1)).collect::<Vec<_>>(),
        "characters": chars.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "before": family_json(&start, &fan, &cfg)?,
        "after": family_json(&fam, &fan, &cfg)?,
    })
    .to_string())
}

#[wasm_bindgen(js_name = defaultConfig)]
pub fn default_config() -> String {
    DEFAULT_CONFIG.to_string()
}

#[wasm_bindgen(js_name = fanView)]
pub fn fan_view_js(config: &str, edges: &str, symmetry: &str) -> Result<String, JsValue> {
    fan_view(config, edges, symmetry).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = pairVerdict)]
pub fn pair_verdict_js(config: &str, a: &str, b: &str) -> Result<String, JsValue> {
    pair_verdict(config, a, b).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = shiftExplorer)]
pub fn shift_explorer_js(config: &str, moves: &str) -> Result<String, JsValue> {
    shift_explorer(config, moves).map_err(|e| JsValue::from_str(&e))
}
