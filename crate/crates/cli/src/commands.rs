use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use labpart::amalgam::{TotalPoint, TreeTerm, VertexId};
use labpart::checks::{action_axioms_report, antisymmetry_report, chasles_report, check_equivariance, pseudometric_report, CheckReport, Sampler};
use labpart::constructions::quotient_bound_report;
use labpart::groups::{ball_enumerate, AmalgamWord, Side};
use labpart::profile::growth_profile;
use labpart::structures::cocycle_from_space;
use labpart::{energy, sep, AutomorphismAction, Energy, Group, Point, Rational};
use serde_json::{json, Value};

use crate::config::{Built, Extra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Metric,
    Equivariance,
    Amalgam,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TreeTermArg {
    /// `d_T(γG, G)`
    D,
    /// `d_T(γG, G)^q`, a deliberately wrong control
    Dq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ExportWhat {
    Labels,
    Vectors,
}

pub fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn orbit(built: &Built) -> Option<(&labpart::ActionRef, &Point)> {
    built.action.as_ref().zip(built.basepoint.as_ref())
}

/// Reads a point argument: points of the space are taken as given, group
/// elements `g` as the orbit point `g·x₀`.
pub fn resolve(built: &Built, text: &str) -> Result<Point> {
    let mut p: Point = text.parse().map_err(|e| anyhow!("cannot parse point '{text}': {e}"))?;
    if let (Extra::Amalgam(am), Point::Word(w)) = (&built.extra, &p) {
        let grp = am.group();
        let letters = grp.normal_form(&w.letters)?;
        p = Point::Word(grp.multiply(&letters, &AmalgamWord { letters: Vec::new(), tail: w.tail }));
    }
    if built.space.contains(&p) {
        return Ok(p);
    }
    if let Some((action, x0)) = orbit(built) {
        if action.group().contains(&p) {
            return Ok(action.act(&p, x0)?);
        }
    }
    bail!("{p} is neither a point of {} nor an element of its group", built.space.description())
}

pub fn dist(built: &Built, x: &str, y: &str) -> Result<String> {
    let (x, y) = (resolve(built, x)?, resolve(built, y)?);
    let e = energy(built.space.as_ref(), &x, &y)?;
    let exponent = built.space.norm().exponent;
    Ok(format!("x {x}\ny {y}\nq {exponent}\nenergy {e}\ndist {}\n", e.root(exponent)))
}

/// The finite point list, or the orbit of the ball of radius `radius`.
fn points(built: &Built, radius: usize) -> Result<Vec<Point>> {
    if let Some(p) = built.space.points() {
        return Ok(p);
    }
    let Some((action, x0)) = orbit(built) else {
        bail!("{} has neither a finite point list nor a group action", built.space.description());
    };
    let group = action.group();
    let mut out = BTreeSet::new();
    for (g, _) in ball_enumerate(group.as_ref(), radius, &group.generators())? {
        out.insert(action.act(&g, x0)?);
    }
    Ok(out.into_iter().collect())
}

pub fn table(built: &Built, radius: usize) -> Result<String> {
    let pts = points(built, radius)?;
    let exponent = built.space.norm().exponent;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y", "energy", "dist"])?;
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            let e = energy(built.space.as_ref(), x, y)?;
            w.write_record([x.to_string(), y.to_string(), e.to_text(), e.root(exponent).to_string()])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn growth(built: &Built, radius: usize, budget: usize) -> Result<(String, bool)> {
    let Some((action, x0)) = orbit(built) else {
        bail!("growth profiles need a group action; {} has none", built.space.description());
    };
    let gens = action.group().generators();
    let profile = growth_profile(built.space.as_ref(), action.as_ref(), x0, radius, &gens, budget)?;
    Ok((profile.to_csv(), profile.partial))
}

fn sampled_points(built: &Built, sampler: &mut Sampler, n: usize) -> Result<Vec<Point>> {
    if let Some((action, x0)) = orbit(built) {
        let group = action.group();
        return (0..n).map(|_| Ok(action.act(&sampler.element(group.as_ref(), 6)?, x0)?)).collect();
    }
    match built.space.points() {
        Some(pts) if !pts.is_empty() => Ok((0..n).map(|_| sampler.choose(&pts)).collect()),
        _ => bail!("cannot sample points of {}", built.space.description()),
    }
}

fn metric_suite(built: &Built, samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let mut sampler = Sampler::new(seed);
    let pts = sampled_points(built, &mut sampler, 3 * samples)?;
    let triples: Vec<(Point, Point, Point)> = pts.chunks(3).map(|c| (c[0].clone(), c[1].clone(), c[2].clone())).collect();
    let pairs: Vec<(Point, Point)> = triples.iter().map(|(x, y, _)| (x.clone(), y.clone())).collect();
    let space = built.space.as_ref();
    Ok(vec![pseudometric_report(space, &triples), chasles_report(space, &triples), antisymmetry_report(space, &pairs)])
}

fn equivariance_suite(built: &Built, samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let Some((action, x0)) = orbit(built) else {
        bail!("the equivariance suite needs a group action; {} has none", built.space.description());
    };
    let group = action.group();
    let mut sampler = Sampler::new(seed);
    let mut element = || sampler.element(group.as_ref(), 6);
    let mut triples = Vec::with_capacity(samples);
    let mut axioms = Vec::with_capacity(samples);
    for _ in 0..samples {
        let (g, a, b) = (element()?, element()?, element()?);
        let (x, y) = (action.act(&a, x0)?, action.act(&b, x0)?);
        axioms.push((g.clone(), a, x.clone()));
        triples.push((g, x, y));
    }
    Ok(vec![
        check_equivariance(built.space.as_ref(), action.as_ref(), &triples),
        action_axioms_report(action.as_ref(), &axioms),
    ])
}

fn amalgam_suite(built: &Built, samples: usize, seed: u64, radius: usize, term: TreeTermArg) -> Result<Vec<CheckReport>> {
    let Extra::Amalgam(am) = &built.extra else {
        bail!("the amalgam suite applies to amalgam configurations only (kind is {})", built.kind);
    };
    let term = match term {
        TreeTermArg::D => TreeTerm::Distance,
        TreeTermArg::Dq => TreeTerm::DistancePowQ,
    };
    let grp = am.group().clone();
    let mut sampler = Sampler::new(seed);
    let word = |sampler: &mut Sampler| -> Result<AmalgamWord> { Ok(grp.word_of(&sampler.element(grp.as_ref(), 6)?)?.clone()) };
    let mut pairs = Vec::new();
    let mut tree_samples = Vec::new();
    for k in 0..samples {
        let side = if k % 2 == 0 { Side::Left } else { Side::Right };
        let (a, b, c) = (word(&mut sampler)?, word(&mut sampler)?, word(&mut sampler)?);
        pairs.push((am.orbit_point(&a), am.orbit_point(&b)));
        tree_samples.push((a, VertexId::of_word(side, &b), TotalPoint::from_coset(side.other(), c)));
    }
    let mut probe = BTreeSet::new();
    for (g, _) in ball_enumerate(grp.as_ref(), 2, &grp.generators())? {
        let w = grp.word_of(&g)?;
        probe.insert(VertexId::of_word(Side::Left, w));
        probe.insert(VertexId::of_word(Side::Right, w));
    }
    let probe: Vec<VertexId> = probe.into_iter().collect();
    Ok(vec![
        am.formula_report(radius, term)?,
        am.support_bound_report(&pairs, &probe)?,
        am.tree_action_report(&tree_samples)?,
    ])
}

fn exact_or_text(e: &Energy<Rational>) -> String {
    e.to_text()
}

/// Closed forms and structure-specific invariants.
fn structure_suite(built: &Built, samples: usize, seed: u64, radius: Option<usize>) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    match &built.extra {
        Extra::None | Extra::Amalgam(_) => {}
        Extra::Mineyev(space) => out.extend(space.clause_reports(radius.unwrap_or(3))?),
        Extra::Quotient(quot) => {
            let group = built.finite_group.as_ref().expect("quotients are built over finite groups");
            let all: Vec<Point> = (0..group.order()).map(Point::Index).collect();
            out.push(quotient_bound_report(quot, &all)?);
        }
        Extra::Cocycle(space) => {
            let (action, x0) = orbit(built).expect("cocycle spaces carry their action");
            let group = action.group();
            let mut sampler = Sampler::new(seed);
            let pairs = (0..samples)
                .map(|_| Ok((sampler.element(group.as_ref(), 6)?, sampler.element(group.as_ref(), 6)?)))
                .collect::<Result<Vec<_>>>()?;
            out.push(space.cocycle().identity_report(&pairs));
            if action.has_label_map() {
                out.extend(cocycle_from_space(space.as_ref(), action.as_ref(), x0, &pairs));
            }
        }
        Extra::Wreath(glue) => {
            let mut report = CheckReport::new("wreath energy formula");
            for (w, _) in ball_enumerate(glue.lamps.as_ref(), radius.unwrap_or(3), &glue.lamps.generators())? {
                let oracle = glue.orbit_energy(&w)?;
                let formula = glue.energy_formula(&w)?;
                if oracle == Energy::Exact(formula.clone()) {
                    report.pass();
                } else {
                    report.fail(&[&w], formula, exact_or_text(&oracle));
                }
            }
            out.push(report);
        }
        Extra::ProperSum(sum, factor) => {
            let mut report = CheckReport::new("proper sum energy formula");
            let y0 = sum.basepoint();
            for (w, _) in ball_enumerate(sum.group.as_ref(), radius.unwrap_or(3), &sum.group.generators())? {
                let oracle = energy(sum.space.as_ref(), &sum.action.act(&w, &y0)?, &y0)?;
                let formula = sum.energy_formula(&w, factor.as_ref())?;
                if oracle == Energy::Exact(formula.clone()) {
                    report.pass();
                } else {
                    report.fail(&[&w], formula, exact_or_text(&oracle));
                }
            }
            out.push(report);
        }
    }
    Ok(out)
}

pub struct CheckOptions {
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
    pub radius: Option<usize>,
    pub tree_term: TreeTermArg,
}

pub fn check(built: &Built, opts: &CheckOptions) -> Result<(String, bool)> {
    let mut reports = Vec::new();
    let (n, seed) = (opts.samples, opts.seed);
    match opts.suite {
        Suite::Metric => reports.extend(metric_suite(built, n, seed)?),
        Suite::Equivariance => reports.extend(equivariance_suite(built, n, seed.wrapping_add(1))?),
        Suite::Amalgam => reports.extend(amalgam_suite(built, n, seed.wrapping_add(2), opts.radius.unwrap_or(4), opts.tree_term)?),
        Suite::All => {
            reports.extend(metric_suite(built, n, seed)?);
            if built.action.is_some() {
                reports.extend(equivariance_suite(built, n, seed.wrapping_add(1))?);
            }
            if matches!(built.extra, Extra::Amalgam(_)) {
                reports.extend(amalgam_suite(built, n, seed.wrapping_add(2), opts.radius.unwrap_or(4), opts.tree_term)?);
            }
            reports.extend(structure_suite(built, n, seed.wrapping_add(3), opts.radius)?);
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    let suite = format!("{:?}", opts.suite).to_lowercase();
    let doc = json!({
        "space": built.space.description(),
        "kind": built.kind,
        "suite": suite,
        "seed": seed,
        "samples": n,
        "passed": passed,
        "checks": reports,
    });
    Ok((serde_json::to_string_pretty(&doc)? + "\n", passed))
}

pub fn export(built: &Built, what: ExportWhat, radius: usize) -> Result<String> {
    let pts = points(built, radius)?;
    let x0 = match &built.basepoint {
        Some(p) => p.clone(),
        None => pts.first().cloned().ok_or_else(|| anyhow!("the space has no points"))?,
    };
    let space = built.space.as_ref();
    let doc: Value = match what {
        ExportWhat::Labels => {
            let mut labels = BTreeMap::new();
            for x in &pts {
                for l in sep(space, x, &x0)?.support() {
                    labels.entry(l.clone()).or_insert_with(|| space.norm().weight(l));
                }
            }
            let rows: Vec<Value> = labels
                .iter()
                .map(|(l, w)| json!({"label": l.to_string(), "weight": labpart::Scalar::to_exact_string(w)}))
                .collect();
            json!({"space": space.description(), "basepoint": x0.to_string(), "labels": rows})
        }
        ExportWhat::Vectors => {
            let rows = pts
                .iter()
                .map(|x| {
                    let v = sep(space, x, &x0)?;
                    let e = labpart::norm::q_energy(space.norm(), &v)?;
                    Ok(json!({"point": x.to_string(), "energy": e.to_text(), "sep": v}))
                })
                .collect::<Result<Vec<_>>>()?;
            json!({"space": space.description(), "basepoint": x0.to_string(), "vectors": rows})
        }
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}
