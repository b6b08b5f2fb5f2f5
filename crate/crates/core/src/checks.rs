//! Structural checks returning serializable reports.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{transport, AutomorphismAction};
use crate::error::Result;
use crate::groups::Group;
use crate::norm::{approx_eq, q_energy, Energy, Exponent};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::{dist, energy, sep, LabelledPartitionSpace};

/// Relative tolerance for comparisons after root extraction.
pub const FLOAT_TOL: f64 = 1e-9;

const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), passed: true, checked: 0, failures: 0, counterexamples: Vec::new() }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, inputs: &[&Point], expected: impl ToString, actual: impl ToString) {
        self.checked += 1;
        self.failures += 1;
        self.passed = false;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample {
                inputs: inputs.iter().map(|p| p.to_string()).collect(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Records `Ok(None)` as a pass, `Ok(Some((expected, actual)))` or an
    /// error as a failure.
    pub fn record(&mut self, inputs: &[&Point], outcome: Result<Option<(String, String)>>) {
        match outcome {
            Ok(None) => self.pass(),
            Ok(Some((e, a))) => self.fail(inputs, e, a),
            Err(err) => self.fail(inputs, "no error", err),
        }
    }

    pub fn merge(mut self, other: CheckReport) -> Self {
        self.checked += other.checked;
        self.failures += other.failures;
        self.passed &= other.passed;
        let room = MAX_COUNTEREXAMPLES.saturating_sub(self.counterexamples.len());
        self.counterexamples.extend(other.counterexamples.into_iter().take(room));
        self
    }
}

/// `c(x, z) = c(x, y) + c(y, z)` exactly.
pub fn check_chasles<S: Scalar>(space: &dyn LabelledPartitionSpace<S>, x: &Point, y: &Point, z: &Point) -> Result<bool> {
    Ok(sep(space, x, z)? == sep(space, x, y)? + sep(space, y, z)?)
}

pub fn chasles_report<S: Scalar>(space: &dyn LabelledPartitionSpace<S>, triples: &[(Point, Point, Point)]) -> CheckReport {
    let mut report = CheckReport::new("chasles");
    for (x, y, z) in triples {
        let outcome = check_chasles(space, x, y, z).map(|ok| (!ok).then(|| ("c(x,y)+c(y,z)".into(), "differs".into())));
        report.record(&[x, y, z], outcome);
    }
    report
}

pub fn antisymmetry_report<S: Scalar>(space: &dyn LabelledPartitionSpace<S>, pairs: &[(Point, Point)]) -> CheckReport {
    let mut report = CheckReport::new("antisymmetry");
    for (x, y) in pairs {
        let outcome = (|| {
            let a = sep(space, x, y)?;
            let b = sep(space, y, x)?;
            Ok((a != -b).then(|| ("-c(y,x)".to_string(), "differs".to_string())))
        })();
        report.record(&[x, y], outcome);
    }
    report
}

fn exact_triangle(exponent: Exponent) -> bool {
    matches!(exponent, Exponent::Sup | Exponent::Finite { num: 1, den: 1 })
}

/// `d(x,x) = 0`, `d(x,y) = d(y,x)` exactly, triangle inequality (exact for
/// q = 1 and SUP, relative tolerance otherwise).
pub fn pseudometric_report<S: Scalar>(space: &dyn LabelledPartitionSpace<S>, triples: &[(Point, Point, Point)]) -> CheckReport {
    let mut report = CheckReport::new("pseudometric");
    let exponent = space.norm().exponent;
    for (x, y, z) in triples {
        let outcome = (|| {
            let exx = energy(space, x, x)?;
            if !exx.is_zero() {
                return Ok(Some(("d(x,x)=0".to_string(), exx.to_text())));
            }
            let (exy, eyx) = (energy(space, x, y)?, energy(space, y, x)?);
            if exy != eyx {
                return Ok(Some((exy.to_text(), eyx.to_text())));
            }
            let (eyz, exz) = (energy(space, y, z)?, energy(space, x, z)?);
            if exact_triangle(exponent) && S::is_exact() {
                if let (Energy::Exact(a), Energy::Exact(b), Energy::Exact(c)) = (&exz, &exy, &eyz) {
                    let bound = b.clone() + c.clone();
                    return Ok((*a > bound).then(|| (format!("<= {}", bound.to_exact_string()), a.to_exact_string())));
                }
            }
            let (a, b, c) = (exz.root(exponent), exy.root(exponent), eyz.root(exponent));
            let ok = a <= b + c || approx_eq(a, b + c, FLOAT_TOL);
            Ok((!ok).then(|| (format!("<= {}", b + c), a.to_string())))
        })();
        report.record(&[x, y, z], outcome);
    }
    report
}

/// `dist_source(x, y) = dist_target(f x, f y)` on the given pairs.
pub fn check_homomorphism<S: Scalar>(
    f: &dyn Fn(&Point) -> Result<Point>,
    source: &dyn LabelledPartitionSpace<S>,
    target: &dyn LabelledPartitionSpace<S>,
    pairs: &[(Point, Point)],
) -> CheckReport {
    let mut report = CheckReport::new("homomorphism");
    let same_exponent = source.norm().exponent == target.norm().exponent;
    for (x, y) in pairs {
        let outcome = (|| {
            let (fx, fy) = (f(x)?, f(y)?);
            let a = energy(source, x, y)?;
            let b = energy(target, &fx, &fy)?;
            if same_exponent {
                if let (Energy::Exact(p), Energy::Exact(q)) = (&a, &b) {
                    if S::is_exact() {
                        return Ok((p != q).then(|| (p.to_exact_string(), q.to_exact_string())));
                    }
                }
            }
            let (da, db) = (a.root(source.norm().exponent), b.root(target.norm().exponent));
            Ok((!approx_eq(da, db, FLOAT_TOL)).then(|| (da.to_string(), db.to_string())))
        })();
        report.record(&[x, y], outcome);
    }
    report
}

/// `d(gx, gy) = d(x, y)`; with a label map also `π(g)c(x,y) = c(gx,gy)`
/// and weight invariance on the support.
pub fn check_equivariance<S: Scalar>(
    space: &dyn LabelledPartitionSpace<S>,
    action: &dyn AutomorphismAction,
    samples: &[(Point, Point, Point)],
) -> CheckReport {
    let mut report = CheckReport::new("equivariance");
    let spec = space.norm();
    for (g, x, y) in samples {
        let outcome = (|| {
            let (gx, gy) = (action.act(g, x)?, action.act(g, y)?);
            let moved = sep(space, &gx, &gy)?;
            let base = sep(space, x, y)?;
            let (e1, e2) = (q_energy(spec, &moved)?, q_energy(spec, &base)?);
            if e1 != e2 {
                return Ok(Some((e2.to_text(), e1.to_text())));
            }
            if action.has_label_map() {
                let pushed = transport(action, g, &base)?;
                if pushed != moved {
                    return Ok(Some(("pi(g)c(x,y) = c(gx,gy)".into(), "vectors differ".into())));
                }
                for l in moved.support() {
                    let pulled = action.pull_label(g, l)?;
                    if spec.weight(l) != spec.weight(&pulled) {
                        return Ok(Some((format!("weight of {pulled} preserved"), format!("weight of {l} differs"))));
                    }
                }
            }
            Ok(None)
        })();
        report.record(&[g, x, y], outcome);
    }
    report
}

/// `e·x = x` and `g(hx) = (gh)x`.
pub fn action_axioms_report(action: &dyn AutomorphismAction, samples: &[(Point, Point, Point)]) -> CheckReport {
    let mut report = CheckReport::new("action_axioms");
    let group = action.group();
    for (g, h, x) in samples {
        let outcome = (|| {
            let ex = action.act(&group.identity(), x)?;
            if ex != *x {
                return Ok(Some((x.to_string(), ex.to_string())));
            }
            let lhs = action.act(g, &action.act(h, x)?)?;
            let rhs = action.act(&group.op(g, h)?, x)?;
            Ok((lhs != rhs).then(|| (rhs.to_string(), lhs.to_string())))
        })();
        report.record(&[g, h, x], outcome);
    }
    report
}

/// Same distances computed by two routes; convenience for float spaces.
pub fn dist_agrees<S: Scalar>(space: &dyn LabelledPartitionSpace<S>, x: &Point, y: &Point, expected: f64) -> Result<bool> {
    Ok(approx_eq(dist(space, x, y)?, expected, FLOAT_TOL))
}

/// Deterministic sampler of group elements and points.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Product of a uniformly random number (`0..=max_len`) of random
    /// generators or their inverses.
    pub fn element(&mut self, group: &dyn Group, max_len: usize) -> Result<Point> {
        let gens = group.generators();
        let mut g = group.identity();
        if gens.is_empty() {
            return Ok(g);
        }
        let len = self.rng.gen_range(0..=max_len);
        for _ in 0..len {
            let s = gens.choose(&mut self.rng).expect("nonempty");
            let s = if self.rng.gen_bool(0.5) { group.inv(s)? } else { s.clone() };
            g = group.op(&g, &s)?;
        }
        Ok(g)
    }

    pub fn choose(&mut self, points: &[Point]) -> Point {
        points.choose(&mut self.rng).expect("nonempty point list").clone()
    }
}
