//! The McKay quiver of an abelian group: one arrow `(chi, x_k)` from `chi` to
//! `chi * rho(x_k)^{-1}` for every character and coordinate.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use serde::Serialize;

use crate::group::{Character, GroupData};

/// Arrows are named by tail and coordinate (0-based `coord`); heads may collide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub tail: Character,
    pub coord: usize,
}

impl Arrow {
    pub fn new(tail: Character, coord: usize) -> Self {
        Self { tail, coord }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, x{})", self.tail, self.coord + 1)
    }
}

#[derive(Clone, Debug)]
pub struct McKayQuiver {
    group: GroupData,
    vertices: Vec<Character>,
    arrows: Vec<Arrow>,
}

pub fn build_quiver(g: &GroupData) -> McKayQuiver {
    let vertices = g.characters();
    let arrows = vertices
        .iter()
        .flat_map(|chi| (0..g.dimension()).map(move |k| Arrow::new(chi.clone(), k)))
        .collect();
    McKayQuiver {
        group: g.clone(),
        vertices,
        arrows,
    }
}

impl McKayQuiver {
    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn vertices(&self) -> &[Character] {
        &self.vertices
    }

    /// Arrows ordered by tail, then coordinate.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn head(&self, arrow: &Arrow) -> Character {
        let w = self.group.coordinate_weight(arrow.coord);
        self.group.mul(&arrow.tail, &self.group.inv(&w))
    }

    pub fn in_degree(&self, v: &Character) -> usize {
        self.arrows.iter().filter(|a| &self.head(a) == v).count()
    }

    pub fn out_degree(&self, v: &Character) -> usize {
        self.arrows.iter().filter(|a| &a.tail == v).count()
    }

    /// Connected components of the undirected graph on all vertices whose edges
    /// are the arrows satisfying `kept`. Vertices within a component are sorted;
    /// components are ordered by their smallest vertex.
    pub fn components<F>(&self, kept: F) -> Vec<Vec<Character>>
    where
        F: Fn(&Arrow) -> bool,
    {
        let g = &self.group;
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in self.arrows.iter().filter(|a| kept(a)) {
            let t = find(&mut parent, g.index_of(&a.tail));
            let h = find(&mut parent, g.index_of(&self.head(a)));
            if t != h {
                let (lo, hi) = if t < h { (t, h) } else { (h, t) };
                parent[hi] = lo;
            }
        }
        let mut groups: BTreeMap<usize, Vec<Character>> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(v.clone());
        }
        let mut comps: Vec<Vec<Character>> = groups.into_values().collect();
        comps.sort();
        comps
    }

    /// DOT digraph; marked arrows get the style of their mark. Output depends
    /// only on the quiver and the marks.
    pub fn export_dot(&self, marks: &BTreeMap<Arrow, ArrowMark>) -> String {
        let mut out = String::new();
        out.push_str("digraph mckay {\n");
        out.push_str("  node [shape=circle];\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for a in &self.arrows {
            let label = format!("x{}", a.coord + 1);
            match marks.get(a) {
                Some(mark) => {
                    let _ = writeln!(
                        out,
                        "  {} -> {} [label=\"{label}\", {}];",
                        a.tail,
                        self.head(a),
                        mark.attributes()
                    );
                }
                None => {
                    let _ = writeln!(out, "  {} -> {} [label=\"{label}\"];", a.tail, self.head(a));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Visual marks for DOT output: struck arrows are zero maps in one or both
/// representations, witnesses certify a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ArrowMark {
    ZeroInFirst,
    ZeroInSecond,
    ZeroInBoth,
    Witness,
}

impl ArrowMark {
    pub fn attributes(&self) -> &'static str {
        match self {
            ArrowMark::ZeroInFirst => "style=dashed, color=red, mark=\"zero-first\"",
            ArrowMark::ZeroInSecond => "style=dashed, color=blue, mark=\"zero-second\"",
            ArrowMark::ZeroInBoth => "style=dotted, color=gray, mark=\"zero-both\"",
            ArrowMark::Witness => "penwidth=2.5, color=darkgreen, mark=\"witness\"",
        }
    }
}
