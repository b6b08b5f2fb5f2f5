use std::sync::Arc;

use rayon::prelude::*;

use crate::action::FnAction;
use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::groups::{ball_enumerate, FreeGroup, Group, GroupRef};
use crate::label::{LabelComponent, LabelId};
use crate::norm::{q_energy, Exponent, NormSpec};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::LabelledPartitionSpace;
use crate::sparse::SparseFunctional;

/// Free group acting on its Cayley tree. The label `Pair(a, b)` with
/// `d(a, b) ≤ 1` is `x ↦ h(x, a)(b)`, where `h(x, a)` is the Dirac mass at
/// the neighbour of `a` toward `x` (at `a` itself when `x = a`).
pub struct MineyevSpace<S> {
    group: FreeGroup,
    norm: NormSpec<S>,
}

/// Where `h(x, a)` sits relative to `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Here,
    Parent,
    Child(i32),
}

fn step(x: &[i32], a: &[i32]) -> Step {
    let common = x.iter().zip(a).take_while(|(p, q)| p == q).count();
    if common < a.len() {
        Step::Parent
    } else if x.len() == a.len() {
        Step::Here
    } else {
        Step::Child(x[a.len()])
    }
}

fn apply(a: &[i32], s: Step) -> Vec<i32> {
    match s {
        Step::Here => a.to_vec(),
        Step::Parent => a[..a.len() - 1].to_vec(),
        Step::Child(l) => {
            let mut v = a.to_vec();
            v.push(l);
            v
        }
    }
}

/// `h(x, a)`, as the word of its support point.
pub fn flow_point(x: &[i32], a: &[i32]) -> Vec<i32> {
    apply(a, step(x, a))
}

/// Vertices of the geodesic from `x` to `y`.
pub fn geodesic(x: &[i32], y: &[i32]) -> Vec<Vec<i32>> {
    let common = x.iter().zip(y).take_while(|(p, q)| p == q).count();
    let mut out: Vec<Vec<i32>> = (common..=x.len()).rev().map(|k| x[..k].to_vec()).collect();
    out.extend((common + 1..=y.len()).map(|k| y[..k].to_vec()));
    out
}

pub fn free_tree_mineyev<S: Scalar>(rank: usize, exponent: Exponent) -> Result<(MineyevSpace<S>, FnAction)> {
    let group = FreeGroup::new(rank)?;
    let g: GroupRef = Arc::new(group.clone());
    let g2 = g.clone();
    let action = FnAction::left_translation(
        g,
        Some(Arc::new(move |x, l| match l.0.as_slice() {
            [LabelComponent::Pair(a, b)] => {
                let xi = g2.inv(x)?;
                Ok(LabelId::single(LabelComponent::Pair(g2.op(&xi, a)?, g2.op(&xi, b)?)))
            }
            _ => Err(Error::domain(format!("{l} is not a pair label"))),
        })),
    );
    let weights = |l: &LabelId| match l.0.as_slice() {
        [LabelComponent::Pair(..)] => S::one(),
        _ => S::zero(),
    };
    Ok((MineyevSpace { group, norm: NormSpec::weighted(exponent, Arc::new(weights)) }, action))
}

impl<S: Scalar> MineyevSpace<S> {
    pub fn group(&self) -> &FreeGroup {
        &self.group
    }

    /// Clauses on every pair of the ball of radius `radius`, together with
    /// the energy identity `‖c(x, x′)‖^q = 2(d(x, x′) + 1)`:
    /// (1) `supp h(x, a) ⊆ B(a, 1)`;
    /// (2) `‖h(x, a) − h(x′, a)‖₁ ≤ 2·2^{−(x|x′)_a}`;
    /// (3) `#{a : supp h(x, a) ∩ supp h(x′, a) = ∅} = d(x, x′) + 1` for `x ≠ x′`.
    pub fn clause_reports(&self, radius: usize) -> Result<Vec<CheckReport>> {
        let ball: Vec<Vec<i32>> = ball_enumerate(&self.group, radius, &self.group.generators())?
            .into_iter()
            .map(|(p, _)| self.group.word_of(&p).map(|w| w.to_vec()))
            .collect::<Result<_>>()?;
        let mut support = CheckReport::new("mineyev clause 1 (support radius)");
        for x in &ball {
            for a in &ball {
                let p = flow_point(x, a);
                if FreeGroup::distance(&p, a) > 1 {
                    support.fail(&[&Point::Free(x.clone()), &Point::Free(a.clone())], "<= 1", FreeGroup::distance(&p, a));
                } else {
                    support.pass();
                }
            }
        }
        type Row = (Vec<Option<(String, String)>>, Vec<Option<(String, String)>>, Vec<Result<Option<(String, String)>>>);
        let rows: Vec<Row> = ball
            .par_iter()
            .map(|x| {
                let mut c2 = Vec::new();
                let mut c3 = Vec::new();
                let mut en = Vec::new();
                for y in &ball {
                    let d = FreeGroup::distance(x, y);
                    let mut disjoint = 0usize;
                    let mut worst = None;
                    for a in &ball {
                        let differ = step(x, a) != step(y, a);
                        let l1 = if differ { 2u64 } else { 0 };
                        let gromov = (FreeGroup::distance(a, x) + FreeGroup::distance(a, y) - d) / 2;
                        // l1 ≤ 2^{1 − gromov}
                        if gromov >= 2 && l1 > 0 || gromov == 1 && l1 > 1 {
                            worst.get_or_insert_with(|| (format!("<= 2^(1-{gromov})"), format!("{l1} at a={}", Point::Free(a.clone()))));
                        }
                        disjoint += differ as usize;
                    }
                    c2.push(worst);
                    let expected = if x == y { 0 } else { d + 1 };
                    c3.push((disjoint != expected).then(|| (expected.to_string(), disjoint.to_string())));
                    en.push((|| {
                        let v = self.separation(&Point::Free(x.clone()), &Point::Free(y.clone()))?;
                        let e = q_energy(&self.norm, &v)?;
                        let want = S::from_int(if x == y { 0 } else { 2 * (d as i64 + 1) });
                        Ok(match e.exact() {
                            Some(got) if *got == want => None,
                            _ => Some((want.to_exact_string(), e.to_text())),
                        })
                    })());
                }
                (c2, c3, en)
            })
            .collect();
        let mut decay = CheckReport::new("mineyev clause 2 (decay, C=2, eps=ln 2)");
        let mut disjoint = CheckReport::new("mineyev clause 3 (disjoint supports, K=0)");
        let mut energy = CheckReport::new("mineyev energy identity 2(d+1)");
        for (x, (c2, c3, en)) in ball.iter().zip(rows) {
            let px = Point::Free(x.clone());
            for (((y, a), b), c) in ball.iter().zip(c2).zip(c3).zip(en) {
                let py = Point::Free(y.clone());
                decay.record(&[&px, &py], Ok(a));
                disjoint.record(&[&px, &py], Ok(b));
                energy.record(&[&px, &py], c);
            }
        }
        Ok(vec![support, decay, disjoint, energy])
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for MineyevSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        self.group.contains(p)
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        let (x, y) = (self.group.word_of(x)?, self.group.word_of(y)?);
        let mut v = SparseFunctional::new();
        for a in geodesic(x, y) {
            let (p, q) = (flow_point(x, &a), flow_point(y, &a));
            let pa = Point::Free(a);
            v.add_at(LabelId::single(LabelComponent::Pair(pa.clone(), Point::Free(p))), S::one());
            v.add_at(LabelId::single(LabelComponent::Pair(pa, Point::Free(q))), -S::one());
        }
        Ok(v)
    }

    fn norm(&self) -> &NormSpec<S> {
        &self.norm
    }

    fn description(&self) -> String {
        format!("Mineyev-type flow on the Cayley tree of {}", self.group.name())
    }
}
