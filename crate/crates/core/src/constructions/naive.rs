use std::sync::Arc;

use super::pullback::Membership;
use crate::action::FnAction;
use crate::error::{Error, Result};
use crate::groups::GroupRef;
use crate::label::{LabelComponent, LabelId};
use crate::norm::{Exponent, NormSpec};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::LabelledPartitionSpace;
use crate::sparse::SparseFunctional;

/// The `w`-weighted naive structure: `c(x, y) = w(δ_x − δ_y)` on labels
/// `Dirac(z)` of weight `1/2`, so that `‖c(x, y)‖^q = w^q` for `x ≠ y`.
pub struct NaiveSpace<S> {
    contains: Membership,
    points: Option<Vec<Point>>,
    w: S,
    norm: NormSpec<S>,
    name: String,
}

fn naive_norm<S: Scalar>(exponent: Exponent) -> NormSpec<S> {
    let weights = |l: &LabelId| match l.0.as_slice() {
        [LabelComponent::Dirac(_)] => S::ratio(1, 2),
        _ => S::zero(),
    };
    NormSpec::weighted(exponent, Arc::new(weights))
}

impl<S: Scalar> NaiveSpace<S> {
    pub fn weighted(points: Vec<Point>, w: S, exponent: Exponent) -> Result<Self> {
        if w.is_negative() {
            return Err(Error::InvalidSpec("naive weight must be nonnegative".into()));
        }
        let set: std::collections::BTreeSet<Point> = points.iter().cloned().collect();
        Ok(NaiveSpace {
            contains: Arc::new(move |p| set.contains(p)),
            points: Some(points),
            w,
            norm: naive_norm(exponent),
            name: "naive".into(),
        })
    }

    pub fn new(points: Vec<Point>, exponent: Exponent) -> Self {
        Self::weighted(points, S::one(), exponent).expect("unit weight")
    }

    /// Naive structure on the elements of a (possibly infinite) group.
    pub fn on_group(group: GroupRef, w: S, exponent: Exponent) -> Result<Self> {
        if w.is_negative() {
            return Err(Error::InvalidSpec("naive weight must be nonnegative".into()));
        }
        let name = format!("naive on {}", group.name());
        let points = group.elements();
        Ok(NaiveSpace {
            contains: Arc::new(move |p| group.contains(p)),
            points,
            w,
            norm: naive_norm(exponent),
            name,
        })
    }

    pub fn weight(&self) -> &S {
        &self.w
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for NaiveSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        (self.contains)(p)
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        Ok(SparseFunctional::from_entries([
            (LabelId::dirac(x.clone()), self.w.clone()),
            (LabelId::dirac(y.clone()), -self.w.clone()),
        ]))
    }

    fn norm(&self) -> &NormSpec<S> {
        &self.norm
    }

    fn description(&self) -> String {
        self.name.clone()
    }

    fn points(&self) -> Option<Vec<Point>> {
        self.points.clone()
    }
}

/// Left translation on a naive group space: `Dirac(z) ∘ τ(g) = Dirac(g⁻¹z)`.
pub fn naive_translation(group: GroupRef) -> FnAction {
    let g2 = group.clone();
    FnAction::left_translation(
        group,
        Some(Arc::new(move |g, l| match l.0.as_slice() {
            [LabelComponent::Dirac(z)] => Ok(LabelId::dirac(g2.op(&g2.inv(g)?, z)?)),
            _ => Err(Error::domain(format!("{l} is not a Dirac label"))),
        })),
    )
}

/// Any map of points acts on Dirac labels by the inverse map.
pub fn naive_action(group: GroupRef, point_map: Arc<dyn Fn(&Point, &Point) -> Result<Point> + Send + Sync>) -> FnAction {
    let pm = point_map.clone();
    let g2 = group.clone();
    FnAction::new(
        group,
        point_map,
        Some(Arc::new(move |g, l| match l.0.as_slice() {
            [LabelComponent::Dirac(z)] => Ok(LabelId::dirac(pm(&g2.inv(g)?, z)?)),
            _ => Err(Error::domain(format!("{l} is not a Dirac label"))),
        })),
    )
}
