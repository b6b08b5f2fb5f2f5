//! Group actions by automorphisms of labelled-partition spaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::GroupRef;
use crate::label::LabelId;
use crate::point::Point;
use crate::scalar::Scalar;
use crate::sparse::{Direction, LabelBijection, SparseFunctional};

/// `τ : G → Aut(X)`, optionally with the label bijection
/// `Φ_{τ(g)}(ℓ) = ℓ ∘ τ(g)` so that `c(gx, gy)(ℓ) = c(x, y)(Φ_g(ℓ))`.
pub trait AutomorphismAction: Send + Sync {
    fn group(&self) -> GroupRef;

    fn act(&self, g: &Point, x: &Point) -> Result<Point>;

    fn has_label_map(&self) -> bool {
        false
    }

    /// `Φ_{τ(g)}(ℓ)`.
    fn pull_label(&self, _g: &Point, label: &LabelId) -> Result<LabelId> {
        Err(Error::domain(format!("action has no label map (label {label})")))
    }
}

pub type ActionRef = Arc<dyn AutomorphismAction>;

/// `Φ_{τ(g)}` packaged as a [`LabelBijection`].
pub struct ActionBijection<'a> {
    action: &'a dyn AutomorphismAction,
    g: Point,
    g_inv: Point,
}

impl<'a> ActionBijection<'a> {
    pub fn new(action: &'a dyn AutomorphismAction, g: &Point) -> Result<Self> {
        let g_inv = action.group().inv(g)?;
        Ok(ActionBijection { action, g: g.clone(), g_inv })
    }
}

impl LabelBijection for ActionBijection<'_> {
    fn forward(&self, label: &LabelId) -> Result<LabelId> {
        self.action.pull_label(&self.g, label)
    }

    fn inverse(&self, label: &LabelId) -> Result<LabelId> {
        self.action.pull_label(&self.g_inv, label)
    }
}

/// `π(g)ξ = ξ ∘ Φ_{τ(g)}`, the linear part of the induced affine action.
pub fn transport<S: Scalar>(action: &dyn AutomorphismAction, g: &Point, v: &SparseFunctional<S>) -> Result<SparseFunctional<S>> {
    v.relabel(&ActionBijection::new(action, g)?, Direction::Forward)
}

type PointMap = dyn Fn(&Point, &Point) -> Result<Point> + Send + Sync;
type LabelMap = dyn Fn(&Point, &LabelId) -> Result<LabelId> + Send + Sync;

/// Action given by closures.
#[derive(Clone)]
pub struct FnAction {
    pub group: GroupRef,
    pub point_map: Arc<PointMap>,
    pub label_map: Option<Arc<LabelMap>>,
}

impl FnAction {
    pub fn new(group: GroupRef, point_map: Arc<PointMap>, label_map: Option<Arc<LabelMap>>) -> Self {
        FnAction { group, point_map, label_map }
    }

    /// `G` acting on itself by left multiplication; `label_map` as given.
    pub fn left_translation(group: GroupRef, label_map: Option<Arc<LabelMap>>) -> Self {
        let g2 = group.clone();
        FnAction { group, point_map: Arc::new(move |g, x| g2.op(g, x)), label_map }
    }

    /// Every element acts as the identity.
    pub fn trivial(group: GroupRef) -> Self {
        FnAction {
            group,
            point_map: Arc::new(|_, x| Ok(x.clone())),
            label_map: Some(Arc::new(|_, l| Ok(l.clone()))),
        }
    }
}

impl AutomorphismAction for FnAction {
    fn group(&self) -> GroupRef {
        self.group.clone()
    }

    fn act(&self, g: &Point, x: &Point) -> Result<Point> {
        if !self.group.contains(g) {
            return Err(Error::domain(format!("{g} is not an element of {}", self.group.name())));
        }
        (self.point_map)(g, x)
    }

    fn has_label_map(&self) -> bool {
        self.label_map.is_some()
    }

    fn pull_label(&self, g: &Point, label: &LabelId) -> Result<LabelId> {
        match &self.label_map {
            Some(f) => f(g, label),
            None => Err(Error::domain("action has no label map")),
        }
    }
}
