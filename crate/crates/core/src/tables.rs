//! Text renderings: coefficient tables, divisor listings and verdict reports.
//! Every function is deterministic in its input.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::error::Result;
use crate::family::{principal_divisor, zero_divisors, GnatFamily};
use crate::fan::Fan;
use crate::orthogonality::{Corollary2Report, OrthogonalityVerdict, PairStatus};
use crate::quiver::McKayQuiver;
use crate::rational::{format_fraction, format_mixed, Q};

/// How coefficients are printed: reduced fractions, or mixed numbers over a
/// fixed denominator (`1 2/6`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NumberStyle {
    #[default]
    Reduced,
    Mixed(i64),
}

impl NumberStyle {
    pub fn format(self, q: &Q) -> String {
        match self {
            NumberStyle::Reduced => format_fraction(q),
            NumberStyle::Mixed(d) => format_mixed(q, d),
        }
    }
}

/// TSV: one row per character, one column per exceptional ray.
pub fn q_table_tsv(fam: &GnatFamily, fan: &Fan, style: NumberStyle) -> String {
    let rays = fan.exceptional_rays();
    let mut out = String::from("character");
    for r in &rays {
        let _ = write!(out, "\tE{}", r + 1);
    }
    out.push('\n');
    for chi in fam.group().characters() {
        out.push_str(&chi.name());
        for &r in &rays {
            let _ = write!(out, "\t{}", style.format(&fam.coefficient(&chi, r)));
        }
        out.push('\n');
    }
    out
}

/// `(x1) = E1 + 1/6 E4 + ...`, one line per coordinate.
pub fn principal_divisors_text(fan: &Fan) -> Result<String> {
    let mut out = String::new();
    for k in 0..fan.dimension() {
        let _ = writeln!(out, "(x{}) = {}", k + 1, principal_divisor(fan, k)?);
    }
    Ok(out)
}

/// `B[chi_i_j, xk] = E_a + E_b + ...`, in arrow order (tail, then coordinate).
pub fn zero_divisors_text(fam: &GnatFamily, fan: &Fan) -> Result<String> {
    let mut out = String::new();
    for (a, b) in zero_divisors(fam, fan)? {
        let _ = writeln!(out, "B[{}, x{}] = {}", a.tail, a.coord + 1, b);
    }
    Ok(out)
}

fn outcome_word(v: &OrthogonalityVerdict) -> &'static str {
    if v.is_orthogonal() {
        "orthogonal"
    } else {
        "inconclusive"
    }
}

pub fn verdict_text(v: &OrthogonalityVerdict, quiver: &McKayQuiver) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pair {} {}: {}", v.pair.0, v.pair.1, outcome_word(v));
    let _ = writeln!(
        out,
        "  Hom(first, second) = 0: {}\n  Hom(second, first) = 0: {}",
        v.condition_hom_ab, v.condition_hom_ba
    );
    for (i, c) in v.components.iter().enumerate() {
        let names: Vec<String> = c.vertices.iter().map(|x| x.name()).collect();
        let _ = writeln!(out, "  component {}: {{{}}}", i + 1, names.join(", "));
        let show = |w: &Option<crate::quiver::Arrow>| match w {
            Some(a) => format!(
                "{} -> {} (x{}, {})",
                a.tail,
                quiver.head(a),
                a.coord + 1,
                v.type_of(a).map_or("?", |t| t.label())
            ),
            None => "none".to_string(),
        };
        let _ = writeln!(
            out,
            "    first->second witness: {}",
            show(&c.hom_first_second)
        );
        let _ = writeln!(
            out,
            "    second->first witness: {}",
            show(&c.hom_second_first)
        );
    }
    out
}

pub fn verdict_json(v: &OrthogonalityVerdict, quiver: &McKayQuiver) -> Value {
    let witness = |w: &Option<crate::quiver::Arrow>| {
        w.as_ref().map(|a| {
            json!({
                "tail": a.tail.name(),
                "head": quiver.head(a).name(),
                "coord": a.coord + 1,
                "type": v.type_of(a).map(|t| t.label()),
            })
        })
    };
    json!({
        "pair": [v.pair.0.to_string(), v.pair.1.to_string()],
        "outcome": outcome_word(v),
        "condition_hom_ab": v.condition_hom_ab,
        "condition_hom_ba": v.condition_hom_ba,
        "components": v.components.iter().map(|c| json!({
            "vertices": c.vertices.iter().map(|x| x.name()).collect::<Vec<_>>(),
            "hom_first_second": witness(&c.hom_first_second),
            "hom_second_first": witness(&c.hom_second_first),
        })).collect::<Vec<_>>(),
        "arrows": v.types.iter().map(|(a, t)| json!({
            "tail": a.tail.name(),
            "head": quiver.head(a).name(),
            "coord": a.coord + 1,
            "type": t.label(),
        })).collect::<Vec<_>>(),
    })
}

fn status_word(s: PairStatus) -> &'static str {
    match s {
        PairStatus::Orthogonal => "orthogonal",
        PairStatus::Discharged => "discharged",
        PairStatus::Inconclusive => "inconclusive",
    }
}

pub fn corollary2_text(r: &Corollary2Report) -> String {
    let mut out = String::new();
    let names = |os: &[crate::fan::OrbitId]| {
        os.iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(
        out,
        "surfaces ({}): {}",
        r.surfaces.len(),
        names(&r.surfaces)
    );
    let _ = writeln!(out, "curves ({}): {}", r.curves.len(), names(&r.curves));
    for rec in &r.records {
        let _ = writeln!(
            out,
            "{} {}\t{}\thom_ab={} hom_ba={} components={}",
            rec.first,
            rec.second,
            status_word(rec.status),
            rec.condition_hom_ab,
            rec.condition_hom_ba,
            rec.components
        );
    }
    let _ = writeln!(
        out,
        "pairs: {} orthogonal, {} discharged by reference, {} inconclusive",
        r.count(PairStatus::Orthogonal),
        r.count(PairStatus::Discharged),
        r.count(PairStatus::Inconclusive)
    );
    let _ = writeln!(out, "result: {}", if r.pass() { "pass" } else { "fail" });
    out
}

pub fn corollary2_json(r: &Corollary2Report) -> Value {
    json!({
        "surfaces": r.surfaces.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
        "curves": r.curves.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
        "reference_used": r.reference_used,
        "pairs": r.records.iter().map(|rec| json!({
            "pair": [rec.first.to_string(), rec.second.to_string()],
            "status": status_word(rec.status),
            "condition_hom_ab": rec.condition_hom_ab,
            "condition_hom_ba": rec.condition_hom_ba,
            "components": rec.components,
        })).collect::<Vec<_>>(),
        "pass": r.pass(),
    })
}
