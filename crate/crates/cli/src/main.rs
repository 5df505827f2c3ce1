//! `mckay`: command-line front end for `mckay-core`.
//!
//! Exit codes: 0 success, 1 check failed or inconclusive, 2 input error.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mckay_core::config::{FanSpec, ProjectConfig};
use mckay_core::family::{
    direct_transform, max_shift_family, theta_weight, unstable_fixed_points, Theta,
};
use mckay_core::fan::{validate_fan, CoordinatePermutation, Fan, OrbitId};
use mckay_core::orthogonality::{check_corollary2, check_pair, validate_reference, Reference};
use mckay_core::projective::is_projective;
use mckay_core::quiver::build_quiver;
use mckay_core::rational::{format_fraction, parse_fraction};
use mckay_core::tables::{self, NumberStyle};
use mckay_core::triangulation::{search_symmetric_triangulations, TriangulationSearch};

#[derive(Parser)]
#[command(
    name = "mckay",
    version,
    about = "McKay quiver and orthogonality checks for abelian G in SL(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// Project config (TOML).
    #[arg(env = "MCKAY_CONFIG")]
    config: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the fan is smooth, crepant and complete, and whether it is projective.
    Validate {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long)]
        json: bool,
    },
    /// Write the coefficient table, principal divisors and divisors of zeroes.
    Tables {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Output directory; prints to stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Print coefficients as mixed numbers over this denominator.
        #[arg(long, value_name = "DEN")]
        mixed: Option<i64>,
    },
    /// Print the McKay quiver as DOT.
    QuiverDot {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run the degree-0 orthogonality criterion.
    Check {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Two orbits, e.g. `S8 S1,7`.
        #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "corollary2", required_unless_present = "corollary2")]
        pair: Option<Vec<String>>,
        /// All exceptional surface/surface and surface/curve pairs.
        #[arg(long)]
        corollary2: bool,
        /// Do not use the reference fan to discharge inconclusive pairs.
        #[arg(long)]
        no_reference: bool,
        /// Write one marked DOT file per pair into this directory.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Transport the maximal-shift family between the main and reference fans.
    Transform {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Source fan.
        #[arg(long, value_enum, default_value_t = Which::Reference)]
        from: Which,
        /// Target fan.
        #[arg(long, value_enum, default_value_t = Which::Main)]
        to: Which,
        /// Also transport back and compare with the source family.
        #[arg(long)]
        round_trip: bool,
    },
    /// Enumerate symmetric unimodular triangulations of the junior simplex.
    SearchFan {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Required edge as two 1-based ray labels, e.g. `1,7`. Repeatable.
        #[arg(long = "edge", value_name = "A,B")]
        edges: Vec<String>,
        /// Coordinate permutation as 1-based images, e.g. `2,3,1`.
        #[arg(long)]
        symmetry: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Theta weight of the maximal-shift family and its unstable fixed points.
    ThetaWeight {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Comma-separated values in character order; defaults to the config or theta_+.
        #[arg(long)]
        theta: Option<String>,
        #[arg(long, value_enum, default_value_t = Which::Main)]
        fan: Which,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Which {
    Main,
    Reference,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(arg: &ConfigArg) -> Result<ProjectConfig> {
    Ok(ProjectConfig::from_path(&arg.config)?)
}

/// The resolved main fan, rejected unless it validates.
fn checked_fan(cfg: &ProjectConfig) -> Result<Fan> {
    let fan = cfg.resolve_fan()?;
    let report = validate_fan(&fan, &cfg.lattice())?;
    if !report.ok() {
        bail!("the fan is not a crepant resolution:\n{report}");
    }
    Ok(fan)
}

fn pick(cfg: &ProjectConfig, which: Which) -> Result<Fan> {
    match which {
        Which::Main => checked_fan(cfg),
        Which::Reference => cfg
            .reference
            .clone()
            .context("the config has no [reference] fan"),
    }
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Validate { cfg, json } => validate(&load(&cfg)?, json),
        Command::Tables { cfg, out, mixed } => {
            let style = match mixed {
                Some(d) if d > 0 => NumberStyle::Mixed(d),
                Some(d) => bail!("--mixed needs a positive denominator, got {d}"),
                None => NumberStyle::Reduced,
            };
            write_tables(&load(&cfg)?, out.as_deref(), style)
        }
        Command::QuiverDot { cfg, out } => {
            let q = build_quiver(&load(&cfg)?.group);
            emit(out.as_deref(), &q.export_dot(&Default::default()))?;
            Ok(true)
        }
        Command::Check {
            cfg,
            pair,
            corollary2,
            no_reference,
            dot,
            json,
        } => {
            let cfg = load(&cfg)?;
            match pair {
                Some(p) => check_one(&cfg, &p[0], &p[1], dot.as_deref(), json),
                None => {
                    debug_assert!(corollary2);
                    check_all(&cfg, !no_reference, dot.as_deref(), json)
                }
            }
        }
        Command::Transform {
            cfg,
            from,
            to,
            round_trip,
        } => transform(&load(&cfg)?, from, to, round_trip),
        Command::SearchFan {
            cfg,
            edges,
            symmetry,
            json,
        } => search_fan(&load(&cfg)?, &edges, symmetry.as_deref(), json),
        Command::ThetaWeight { cfg, theta, fan } => {
            let cfg = load(&cfg)?;
            let theta = match theta {
                Some(s) => Theta::new(&cfg.group, parse_list(&s)?)?,
                None => cfg.theta_or_plus(),
            };
            let fan = pick(&cfg, fan)?;
            let fam = max_shift_family(&cfg.group, &fan)?;
            let w = theta_weight(&fam, &theta)?;
            let unstable = unstable_fixed_points(&fam, &fan, &theta)?;
            println!("theta: {}", join_q(theta.values()));
            println!("weight: {}", format_fraction(&w));
            let cones: Vec<String> = unstable
                .iter()
                .map(|c| OrbitId(c.clone()).to_string())
                .collect();
            println!(
                "unstable fixed points: {}",
                if cones.is_empty() {
                    "none".into()
                } else {
                    cones.join(" ")
                }
            );
            Ok(true)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn validate(cfg: &ProjectConfig, json: bool) -> Result<bool> {
    let lat = cfg.lattice();
    let fan = cfg.resolve_fan()?;
    let report = validate_fan(&fan, &lat)?;
    let projective = if report.complete {
        Some(is_projective(&fan)?)
    } else {
        None
    };
    let reference = match &cfg.reference {
        Some(r) => {
            let rep = validate_fan(r, &lat)?;
            let proj = if rep.complete {
                Some(is_projective(r)?)
            } else {
                None
            };
            Some((rep, proj))
        }
        None => None,
    };
    if json {
        let mut v = json!({ "fan": report, "projective": projective, "ok": report.ok() });
        if let Some((rep, proj)) = &reference {
            v["reference"] = json!({ "fan": rep, "projective": proj, "ok": rep.ok() });
        }
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        print!("{report}");
        println!("projective: {}", show_opt(projective));
        if let Some((rep, proj)) = &reference {
            println!("reference:");
            for line in rep.to_string().lines() {
                println!("  {line}");
            }
            println!("  projective: {}", show_opt(*proj));
        }
    }
    Ok(report.ok())
}

fn show_opt(b: Option<bool>) -> String {
    b.map_or_else(|| "n/a".to_string(), |b| b.to_string())
}

const TABLE_FILES: [&str; 3] = ["q_table.tsv", "principal_divisors.txt", "zero_divisors.txt"];

fn write_tables(cfg: &ProjectConfig, out: Option<&Path>, style: NumberStyle) -> Result<bool> {
    let fan = checked_fan(cfg)?;
    let fam = max_shift_family(&cfg.group, &fan)?;
    let texts = [
        tables::q_table_tsv(&fam, &fan, style),
        tables::principal_divisors_text(&fan)?,
        tables::zero_divisors_text(&fam, &fan)?,
    ];
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, text) in TABLE_FILES.iter().zip(&texts) {
                emit(Some(&dir.join(name)), text)?;
            }
        }
        None => {
            for (name, text) in TABLE_FILES.iter().zip(&texts) {
                println!("# {name}");
                print!("{text}");
            }
        }
    }
    Ok(true)
}

/// `S1,7` becomes `S1-7`, keeping file names free of commas.
fn dot_name(a: &OrbitId, b: &OrbitId) -> String {
    format!("{}__{}.dot", a, b).replace(',', "-")
}

fn check_one(
    cfg: &ProjectConfig,
    a: &str,
    b: &str,
    dot: Option<&Path>,
    json: bool,
) -> Result<bool> {
    let fan = checked_fan(cfg)?;
    let fam = max_shift_family(&cfg.group, &fan)?;
    let (a, b): (OrbitId, OrbitId) = (a.parse()?, b.parse()?);
    let v = check_pair(&fam, &fan, (&a, &b))?;
    let q = build_quiver(&cfg.group);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&tables::verdict_json(&v, &q))?
        );
    } else {
        print!("{}", tables::verdict_text(&v, &q));
    }
    if let Some(dir) = dot {
        fs::create_dir_all(dir)?;
        emit(Some(&dir.join(dot_name(&a, &b))), &q.export_dot(&v.marks()))?;
    }
    Ok(v.is_orthogonal())
}

fn check_all(
    cfg: &ProjectConfig,
    use_reference: bool,
    dot: Option<&Path>,
    json: bool,
) -> Result<bool> {
    let fan = checked_fan(cfg)?;
    let fam = max_shift_family(&cfg.group, &fan)?;
    let reference = match (&cfg.reference, use_reference) {
        (Some(r), true) => {
            let reference = Reference {
                fan: r,
                theta: cfg.theta_or_plus(),
            };
            validate_reference(&fam, &fan, &reference)?;
            Some(reference)
        }
        _ => None,
    };
    let report = check_corollary2(&fam, &fan, reference.as_ref())?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&tables::corollary2_json(&report))?
        );
    } else {
        print!("{}", tables::corollary2_text(&report));
    }
    if let Some(dir) = dot {
        fs::create_dir_all(dir)?;
        let q = build_quiver(&cfg.group);
        for rec in &report.records {
            let v = check_pair(&fam, &fan, (&rec.first, &rec.second))?;
            emit(
                Some(&dir.join(dot_name(&rec.first, &rec.second))),
                &q.export_dot(&v.marks()),
            )?;
        }
    }
    Ok(report.pass())
}

fn transform(cfg: &ProjectConfig, from: Which, to: Which, round_trip: bool) -> Result<bool> {
    let source = pick(cfg, from)?;
    let target = pick(cfg, to)?;
    let lat = cfg.lattice();
    for (label, f) in [("source", &source), ("target", &target)] {
        let rep = validate_fan(f, &lat)?;
        if !rep.ok() {
            bail!("{label} fan is not a crepant resolution:\n{rep}");
        }
    }
    let theta = cfg.theta_or_plus();
    let fam = max_shift_family(&cfg.group, &source)?;
    let unstable = unstable_fixed_points(&fam, &source, &theta)?;
    println!(
        "source family theta-stable at every fixed point: {}",
        unstable.is_empty()
    );

    let (moved, validity) = direct_transform(&fam, &source, &target)?;
    println!("transported family valid: {}", validity.is_valid());
    for (arrow, b) in &validity.violations {
        println!("  bad arrow {arrow}: {b}");
    }
    let target_max = max_shift_family(&cfg.group, &target)?;
    let equal = moved == target_max;
    println!("equals the target's maximal-shift family: {equal}");
    let mut ok = validity.is_valid();
    if round_trip {
        let (back, _) = direct_transform(&moved, &target, &source)?;
        let same = back == fam;
        println!("round trip returns the source family: {same}");
        ok &= same;
    }
    Ok(ok)
}

fn search_fan(
    cfg: &ProjectConfig,
    edges: &[String],
    symmetry: Option<&str>,
    json: bool,
) -> Result<bool> {
    let lat = cfg.lattice();
    let mut search = match &cfg.fan {
        FanSpec::Search(s) => s.clone(),
        FanSpec::Explicit(f) => TriangulationSearch {
            rays: f.rays().to_vec(),
            ..TriangulationSearch::new(&lat)?
        },
    };
    if !edges.is_empty() {
        search.required_edges = edges.iter().map(|e| parse_edge(e)).collect::<Result<_>>()?;
    }
    if let Some(s) = symmetry {
        let images = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .with_context(|| format!("bad symmetry entry {x:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        search.symmetry = CoordinatePermutation::from_one_based(&images)?;
    }
    let fans = search_symmetric_triangulations(&lat, &search)?;
    let mut rows = Vec::new();
    for f in &fans {
        let cones: Vec<String> = f
            .maximal_cones()
            .iter()
            .map(|c| {
                c.rays()
                    .iter()
                    .map(|r| (r + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        rows.push((cones, is_projective(f)?));
    }
    if json {
        let v: Vec<_> = rows
            .iter()
            .map(|(c, p)| json!({ "cones": c, "projective": p }))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "count": fans.len(), "fans": v }))?
        );
    } else {
        println!("triangulations: {}", fans.len());
        for (i, (cones, p)) in rows.iter().enumerate() {
            println!("fan {}: {}  projective={p}", i + 1, cones.join(" "));
        }
    }
    Ok(true)
}

fn parse_edge(s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a: usize = a.parse().with_context(|| format!("bad edge {s:?}"))?;
            let b: usize = b.parse().with_context(|| format!("bad edge {s:?}"))?;
            if a == 0 || b == 0 {
                bail!("ray labels are 1-based: {s:?}");
            }
            Ok((a - 1, b - 1))
        }
        _ => bail!("an edge is two ray labels separated by a comma: {s:?}"),
    }
}

fn parse_list(s: &str) -> Result<Vec<mckay_core::rational::Q>> {
    Ok(s.split(',')
        .map(|x| parse_fraction(x.trim()))
        .collect::<Result<_, _>>()?)
}

fn join_q(v: &[mckay_core::rational::Q]) -> String {
    v.iter().map(format_fraction).collect::<Vec<_>>().join(",")
}
