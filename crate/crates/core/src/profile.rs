//! Orbit growth over word spheres: finite-ball evidence of properness.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::AutomorphismAction;
use crate::error::Result;
use crate::groups::Group;
use crate::norm::Energy;
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::{energy, LabelledPartitionSpace};

/// Orbit statistics of one sphere: energies `‖c(g·x₀, x₀)‖^q`, distances
/// are their roots.
#[derive(Clone, Debug, Serialize)]
pub struct SphereStats<S: Scalar> {
    pub radius: usize,
    pub sphere_size: usize,
    pub min_energy: Energy<S>,
    pub max_energy: Energy<S>,
    pub min_dist: f64,
    pub max_dist: f64,
    pub mean_dist: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthProfile<S: Scalar> {
    pub rows: Vec<SphereStats<S>>,
    /// Set when the enumeration budget stopped the sweep early.
    pub partial: bool,
}

fn less<S: Scalar>(a: &Energy<S>, b: &Energy<S>) -> bool {
    match (a, b) {
        (Energy::Exact(x), Energy::Exact(y)) => x < y,
        _ => a.to_f64() < b.to_f64(),
    }
}

/// Word spheres `S(0), S(1), …` up to `radius`, stopping before the total
/// element count would exceed `budget`.
pub fn budgeted_spheres(group: &dyn Group, radius: usize, generators: &[Point], budget: usize) -> Result<(Vec<Vec<Point>>, bool)> {
    let mut steps = Vec::new();
    for s in generators {
        steps.push(s.clone());
        let inv = group.inv(s)?;
        if !steps.contains(&inv) {
            steps.push(inv);
        }
    }
    let e = group.identity();
    let mut seen: BTreeSet<Point> = BTreeSet::from([e.clone()]);
    let mut out = vec![vec![e]];
    while out.len() <= radius {
        let mut next = BTreeSet::new();
        for g in out.last().expect("nonempty") {
            for s in &steps {
                let h = group.op(g, s)?;
                if !seen.contains(&h) {
                    next.insert(h);
                }
            }
        }
        if seen.len() + next.len() > budget {
            return Ok((out, true));
        }
        seen.extend(next.iter().cloned());
        out.push(next.into_iter().collect());
    }
    Ok((out, false))
}

/// Growth profile of the orbit of `x₀`. Spheres are evaluated in parallel;
/// rows come out in radius order.
pub fn growth_profile<S: Scalar>(
    space: &dyn LabelledPartitionSpace<S>,
    action: &dyn AutomorphismAction,
    basepoint: &Point,
    radius: usize,
    generators: &[Point],
    budget: usize,
) -> Result<GrowthProfile<S>> {
    let group = action.group();
    let (spheres, partial) = budgeted_spheres(group.as_ref(), radius, generators, budget)?;
    let exponent = space.norm().exponent;
    let mut rows = Vec::new();
    for (r, sphere) in spheres.iter().enumerate() {
        let energies: Vec<Energy<S>> = sphere
            .par_iter()
            .map(|g| energy(space, &action.act(g, basepoint)?, basepoint))
            .collect::<Result<_>>()?;
        let mut min = energies[0].clone();
        let mut max = energies[0].clone();
        let mut total = 0.0;
        for e in &energies {
            if less(e, &min) {
                min = e.clone();
            }
            if less(&max, e) {
                max = e.clone();
            }
            total += e.root(exponent);
        }
        rows.push(SphereStats {
            radius: r,
            sphere_size: sphere.len(),
            min_dist: min.root(exponent),
            max_dist: max.root(exponent),
            mean_dist: total / energies.len() as f64,
            min_energy: min,
            max_energy: max,
        });
    }
    Ok(GrowthProfile { rows, partial })
}

impl<S: Scalar> GrowthProfile<S> {
    pub const CSV_HEADER: &'static str = "radius,sphere_size,min_energy,min_dist,max_dist,mean_dist";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{},{}", r.radius, r.sphere_size, r.min_energy, r.min_dist, r.max_dist, r.mean_dist);
        }
        out
    }

    pub fn min_energies(&self) -> Vec<Energy<S>> {
        self.rows.iter().map(|r| r.min_energy.clone()).collect()
    }
}
