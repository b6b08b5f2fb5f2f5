use std::collections::BTreeSet;
use std::sync::Arc;

use crate::action::{ActionRef, AutomorphismAction};
use crate::error::{Error, Result};
use crate::groups::GroupRef;
use crate::label::LabelId;
use crate::norm::{norm, q_energy, Energy, NormSpec};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::{sep, LabelledPartitionSpace, SpaceRef};
use crate::sparse::SparseFunctional;

/// Averaging of a structure on `G` over a finite subgroup `F`:
/// `c′(gF, g′F) = (1/#F) Σ_f c(gf, g′f)`, kept in the original labels.
pub struct QuotientSpace<S> {
    base: SpaceRef<S>,
    group: GroupRef,
    subgroup: Vec<Point>,
    members: BTreeSet<Point>,
}

pub fn quotient_average<S: Scalar>(base: SpaceRef<S>, group: GroupRef, subgroup: Vec<Point>) -> Result<QuotientSpace<S>> {
    let members: BTreeSet<Point> = subgroup.iter().cloned().collect();
    if !members.contains(&group.identity()) {
        return Err(Error::invalid("subgroup does not contain the identity"));
    }
    for a in &members {
        if !group.contains(a) || !base.contains(a) {
            return Err(Error::invalid(format!("{a} is not an element of {}", group.name())));
        }
        for b in &members {
            if !members.contains(&group.op(a, b)?) {
                return Err(Error::invalid("subset is not closed under the group law"));
            }
        }
    }
    Ok(QuotientSpace { base, group, subgroup: members.iter().cloned().collect(), members })
}

impl<S: Scalar> QuotientSpace<S> {
    /// Canonical representative of `gF`: `e` for `F` itself, otherwise the
    /// least element of `gF`.
    pub fn canonical(&self, g: &Point) -> Result<Point> {
        if self.members.contains(g) {
            return Ok(self.group.identity());
        }
        let mut best: Option<Point> = None;
        for f in &self.subgroup {
            let x = self.group.op(g, f)?;
            if best.as_ref().is_none_or(|b| x < *b) {
                best = Some(x);
            }
        }
        Ok(best.expect("subgroup is nonempty"))
    }

    pub fn subgroup(&self) -> &[Point] {
        &self.subgroup
    }

    pub fn base(&self) -> &SpaceRef<S> {
        &self.base
    }

    fn order_inverse(&self) -> S {
        S::ratio(1, self.subgroup.len() as i64)
    }

    /// `η = (1/#F) Σ_f c(f, e)`.
    pub fn eta(&self) -> Result<SparseFunctional<S>> {
        let e = self.group.identity();
        let mut acc = SparseFunctional::new();
        for f in &self.subgroup {
            acc.add_assign_ref(&sep(self.base.as_ref(), f, &e)?);
        }
        Ok(acc.scale(&self.order_inverse()))
    }

    /// `K = 2‖η‖`.
    pub fn k_bound(&self) -> Result<f64> {
        Ok(2.0 * norm(self.base.norm(), &self.eta()?)?)
    }

    /// `2‖η‖₁` as an exact energy when the exponent is 1.
    pub fn k_bound_exact(&self) -> Result<Option<S>> {
        if self.base.norm().exponent.as_integer() != Some(1) {
            return Ok(None);
        }
        Ok(match q_energy(self.base.norm(), &self.eta()?)? {
            Energy::Exact(x) => Some(x * S::from_int(2)),
            Energy::Approx(_) => None,
        })
    }

    /// Left translation on cosets; the label map is the base one.
    pub fn action(self: &Arc<Self>, base_action: ActionRef) -> ActionRef {
        Arc::new(QuotientAction { space: self.clone(), base: base_action })
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for QuotientSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        self.group.contains(p) && self.canonical(p).map(|c| c == *p).unwrap_or(false)
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        let mut acc = SparseFunctional::new();
        for f in &self.subgroup {
            let (xf, yf) = (self.group.op(x, f)?, self.group.op(y, f)?);
            acc.add_assign_ref(&sep(self.base.as_ref(), &xf, &yf)?);
        }
        Ok(acc.scale(&self.order_inverse()))
    }

    fn norm(&self) -> &NormSpec<S> {
        self.base.norm()
    }

    fn description(&self) -> String {
        format!("{} averaged over a subgroup of order {}", self.base.description(), self.subgroup.len())
    }

    fn points(&self) -> Option<Vec<Point>> {
        let elems = self.group.elements()?;
        let reps: BTreeSet<Point> = elems.iter().filter_map(|g| self.canonical(g).ok()).collect();
        Some(reps.into_iter().collect())
    }
}

struct QuotientAction<S> {
    space: Arc<QuotientSpace<S>>,
    base: ActionRef,
}

impl<S: Scalar> AutomorphismAction for QuotientAction<S> {
    fn group(&self) -> GroupRef {
        self.space.group.clone()
    }

    fn act(&self, g: &Point, x: &Point) -> Result<Point> {
        self.space.canonical(&self.space.group.op(g, x)?)
    }

    fn has_label_map(&self) -> bool {
        self.base.has_label_map()
    }

    fn pull_label(&self, g: &Point, l: &LabelId) -> Result<LabelId> {
        self.base.pull_label(g, l)
    }
}

/// `‖c(g, e)‖ − K ≤ ‖c′(gF, F)‖ ≤ ‖c(g, e)‖ + K` for each `g`.
pub fn quotient_bound_report<S: Scalar>(space: &QuotientSpace<S>, elements: &[Point]) -> Result<crate::checks::CheckReport> {
    use crate::checks::{CheckReport, FLOAT_TOL};
    use crate::space::{dist, energy};
    let mut report = CheckReport::new("quotient_bound");
    let e = space.group.identity();
    let k = space.k_bound()?;
    let k_exact = space.k_bound_exact()?;
    for g in elements {
        let outcome = (|| {
            let gf = space.canonical(g)?;
            if let Some(k) = &k_exact {
                let a = energy(space.base.as_ref(), g, &e)?;
                let b = energy(space, &gf, &e)?;
                if let (Some(a), Some(b)) = (a.exact(), b.exact()) {
                    let diff = (a.clone() - b.clone()).abs();
                    return Ok((diff > *k).then(|| (format!("<= {}", k.to_exact_string()), diff.to_exact_string())));
                }
            }
            let a = dist(space.base.as_ref(), g, &e)?;
            let b = dist(space, &gf, &e)?;
            let ok = (a - b).abs() <= k + FLOAT_TOL * 1f64.max(a).max(b);
            Ok((!ok).then(|| (format!("<= {k}"), (a - b).abs().to_string())))
        })();
        report.record(&[g], outcome);
    }
    Ok(report)
}
