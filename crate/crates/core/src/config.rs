//! Declarative TOML project files.
//!
//! ```toml
//! theta = [-2, 1, 1]   # optional, one value per character
//! symmetry = [2, 3, 1] # optional coordinate permutation, 1-based images
//!
//! [group]
//! orders = [3]
//! weights = [[1, 1, 1]]
//!
//! [fan]
//! rays = [[1, 0, 0], [0, 1, 0], [0, 0, 1], ["1/3", "1/3", "1/3"]]
//! cones = [[1, 2, 4], [2, 3, 4], [1, 3, 4]]   # 1-based ray labels
//!
//! # instead of cones, a triangulation search:
//! # [fan.search]
//! # required_edges = [[1, 4]]
//! # symmetry = [2, 3, 1]
//!
//! [reference]          # optional second resolution with the same rays
//! cones = [...]        # rays default to the main fan's; or `file = "other.toml"`
//! ```
//!
//! Top-level keys must precede the first table.
//!
//! Ray coordinates may be integers, `"a/b"` strings or `[a, b]` pairs.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::family::Theta;
use crate::fan::{Cone, CoordinatePermutation, Fan};
use crate::group::GroupData;
use crate::lattice::LatticeN;
use crate::rational::{parse_fraction, Q};
use crate::triangulation::{search_symmetric_triangulations, TriangulationSearch};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    group: RawGroup,
    fan: Option<RawFan>,
    reference: Option<RawReference>,
    theta: Option<Spanned<Vec<Coord>>>,
    symmetry: Option<Spanned<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    orders: Spanned<Vec<u32>>,
    weights: Spanned<Vec<Vec<u32>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFan {
    rays: Option<Vec<Spanned<Vec<Coord>>>>,
    cones: Option<Vec<Spanned<Vec<usize>>>>,
    search: Option<RawSearch>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSearch {
    #[serde(default)]
    required_edges: Vec<Spanned<Vec<usize>>>,
    symmetry: Option<Spanned<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReference {
    file: Option<Spanned<String>>,
    rays: Option<Vec<Spanned<Vec<Coord>>>>,
    cones: Option<Vec<Spanned<Vec<usize>>>>,
}

#[derive(Deserialize, Clone)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Text(String),
    Pair([i64; 2]),
}

impl Coord {
    fn value(&self) -> Option<Q> {
        match self {
            Coord::Int(v) => Some(Q::from_integer(*v)),
            Coord::Text(s) => parse_fraction(s).ok(),
            Coord::Pair([n, d]) if *d != 0 => Some(Q::new(*n, *d)),
            Coord::Pair(_) => None,
        }
    }
}

/// How the main fan is obtained.
#[derive(Clone, Debug)]
pub enum FanSpec {
    Explicit(Fan),
    Search(TriangulationSearch),
}

#[derive(Clone, Debug)]
pub struct ProjectConfig {
    pub group: GroupData,
    pub fan: FanSpec,
    pub reference: Option<Fan>,
    pub theta: Option<Theta>,
    pub symmetry: Option<CoordinatePermutation>,
}

struct Source<'a> {
    text: &'a str,
    name: String,
}

impl Source<'_> {
    fn at(&self, span: std::ops::Range<usize>, msg: impl std::fmt::Display) -> Error {
        let before = &self.text[..span.start.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        Error::Config(format!("{}:{line}:{col}: {msg}", self.name))
    }

    fn plain(&self, msg: impl std::fmt::Display) -> Error {
        Error::Config(format!("{}: {msg}", self.name))
    }
}

impl ProjectConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string(), path.parent())
    }

    /// Parses `text`; `name` labels error positions and `base` resolves
    /// `reference.file` (relative paths are rejected without a base).
    pub fn parse(text: &str, name: &str, base: Option<&Path>) -> Result<Self> {
        let src = Source {
            text,
            name: name.to_string(),
        };
        let raw: RawConfig = toml::from_str(text).map_err(|e| match e.span() {
            Some(span) => src.at(span, e.message()),
            None => src.plain(e.message()),
        })?;
        let group = GroupData::new(
            raw.group.orders.get_ref().clone(),
            raw.group.weights.get_ref().clone(),
        )
        .map_err(|e| src.at(raw.group.orders.span(), e))?;
        let lat = LatticeN::new(group.clone());
        let n = group.dimension();

        let raw_fan = raw.fan.ok_or_else(|| src.plain("missing [fan] section"))?;
        let fan_rays = match &raw_fan.rays {
            Some(r) => Some(parse_rays(&src, r, n)?),
            None => None,
        };
        let fan = match (&raw_fan.cones, &raw_fan.search) {
            (Some(_), Some(_)) => return Err(src.plain("[fan] has both cones and a search")),
            (Some(cones), None) => {
                let rays = fan_rays
                    .clone()
                    .ok_or_else(|| src.plain("[fan] cones need rays"))?;
                FanSpec::Explicit(build_fan(&src, rays, cones)?)
            }
            (None, Some(s)) => {
                let mut search = TriangulationSearch::new(&lat).map_err(|e| src.plain(e))?;
                if let Some(rays) = fan_rays.clone() {
                    search.rays = rays;
                }
                for e in &s.required_edges {
                    match e.get_ref().as_slice() {
                        &[a, b]
                            if a >= 1
                                && b >= 1
                                && a <= search.rays.len()
                                && b <= search.rays.len() =>
                        {
                            search.required_edges.push((a - 1, b - 1))
                        }
                        _ => return Err(src.at(e.span(), "edge must be two 1-based ray labels")),
                    }
                }
                if let Some(sym) = &s.symmetry {
                    search.symmetry = CoordinatePermutation::from_one_based(sym.get_ref())
                        .map_err(|e| src.at(sym.span(), e))?;
                }
                FanSpec::Search(search)
            }
            (None, None) => return Err(src.plain("[fan] needs cones or [fan.search]")),
        };
        let default_rays = match &fan {
            FanSpec::Explicit(f) => f.rays().to_vec(),
            FanSpec::Search(s) => s.rays.clone(),
        };

        let reference = match raw.reference {
            None => None,
            Some(r) => Some(parse_reference(&src, r, &default_rays, n, base, &group)?),
        };
        let theta = match raw.theta {
            None => None,
            Some(t) => {
                let values = t
                    .get_ref()
                    .iter()
                    .map(Coord::value)
                    .collect::<Option<Vec<Q>>>()
                    .ok_or_else(|| src.at(t.span(), "theta values must be rationals"))?;
                Some(Theta::new(&group, values).map_err(|e| src.at(t.span(), e))?)
            }
        };
        let symmetry = match raw.symmetry {
            None => None,
            Some(s) => Some(
                CoordinatePermutation::from_one_based(s.get_ref())
                    .map_err(|e| src.at(s.span(), e))?,
            ),
        };
        if let Some(s) = &symmetry {
            if s.len() != n {
                return Err(src.plain(format!("symmetry has {} entries, expected {n}", s.len())));
            }
        }
        Ok(Self {
            group,
            fan,
            reference,
            theta,
            symmetry,
        })
    }

    pub fn lattice(&self) -> LatticeN {
        LatticeN::new(self.group.clone())
    }

    /// The explicit fan, or the unique result of the search.
    pub fn resolve_fan(&self) -> Result<Fan> {
        match &self.fan {
            FanSpec::Explicit(f) => Ok(f.clone()),
            FanSpec::Search(search) => {
                let found = search_symmetric_triangulations(&self.lattice(), search)?;
                match found.len() {
                    1 => Ok(found.into_iter().next().expect("one fan")),
                    k => Err(Error::Config(format!(
                        "the fan search has {k} solutions; exactly one is required"
                    ))),
                }
            }
        }
    }

    pub fn theta_or_plus(&self) -> Theta {
        self.theta
            .clone()
            .unwrap_or_else(|| Theta::theta_plus(&self.group))
    }
}

fn parse_rays(src: &Source<'_>, raw: &[Spanned<Vec<Coord>>], n: usize) -> Result<Vec<Vec<Q>>> {
    raw.iter()
        .map(|r| {
            if r.get_ref().len() != n {
                return Err(src.at(r.span(), format!("ray needs {n} coordinates")));
            }
            r.get_ref()
                .iter()
                .map(Coord::value)
                .collect::<Option<Vec<Q>>>()
                .ok_or_else(|| {
                    src.at(
                        r.span(),
                        "ray coordinates must be integers, \"a/b\" or [a, b]",
                    )
                })
        })
        .collect()
}

fn build_fan(src: &Source<'_>, rays: Vec<Vec<Q>>, cones: &[Spanned<Vec<usize>>]) -> Result<Fan> {
    let m = rays.len();
    let cones = cones
        .iter()
        .map(|c| {
            if c.get_ref().iter().any(|&r| r == 0 || r > m) {
                return Err(src.at(c.span(), format!("cone labels must be in 1..={m}")));
            }
            Ok(Cone::new(c.get_ref().iter().map(|r| r - 1).collect()))
        })
        .collect::<Result<Vec<_>>>()?;
    Fan::new(rays, cones).map_err(|e| src.plain(e))
}

fn parse_reference(
    src: &Source<'_>,
    raw: RawReference,
    default_rays: &[Vec<Q>],
    n: usize,
    base: Option<&Path>,
    group: &GroupData,
) -> Result<Fan> {
    if let Some(file) = raw.file {
        if raw.rays.is_some() || raw.cones.is_some() {
            return Err(src.at(file.span(), "[reference] takes either file or rays/cones"));
        }
        let rel = PathBuf::from(file.get_ref());
        let path = match base {
            Some(b) => b.join(&rel),
            None if rel.is_absolute() => rel,
            None => {
                return Err(src.at(
                    file.span(),
                    "relative reference file without a base directory",
                ))
            }
        };
        let other = ProjectConfig::from_path(&path)?;
        if &other.group != group {
            return Err(src.at(file.span(), "reference file uses a different group"));
        }
        return other.resolve_fan();
    }
    let rays = match &raw.rays {
        Some(r) => parse_rays(src, r, n)?,
        None => default_rays.to_vec(),
    };
    let cones = raw
        .cones
        .ok_or_else(|| src.plain("[reference] needs cones or file"))?;
    build_fan(src, rays, &cones)
}
