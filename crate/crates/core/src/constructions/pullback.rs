use std::sync::Arc;

use crate::error::Result;
use crate::norm::NormSpec;
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::{sep, LabelledPartitionSpace, SpaceRef};
use crate::sparse::SparseFunctional;

pub type PointMap = Arc<dyn Fn(&Point) -> Result<Point> + Send + Sync>;
pub type Membership = Arc<dyn Fn(&Point) -> bool + Send + Sync>;

/// Structure on `Y` pulled back along `f : Y → X`; labels are reused from `X`.
pub struct PullbackSpace<S> {
    base: SpaceRef<S>,
    map: PointMap,
    domain: Membership,
    points: Option<Vec<Point>>,
    name: String,
}

pub fn pullback<S: Scalar>(base: SpaceRef<S>, map: PointMap, domain: Membership, name: impl Into<String>) -> PullbackSpace<S> {
    PullbackSpace { base, map, domain, points: None, name: name.into() }
}

impl<S: Scalar> PullbackSpace<S> {
    pub fn with_points(mut self, points: Vec<Point>) -> Self {
        self.points = Some(points);
        self
    }

    pub fn base(&self) -> &SpaceRef<S> {
        &self.base
    }

    pub fn apply(&self, y: &Point) -> Result<Point> {
        (self.map)(y)
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for PullbackSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        (self.domain)(p)
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        sep(self.base.as_ref(), &(self.map)(x)?, &(self.map)(y)?)
    }

    fn norm(&self) -> &NormSpec<S> {
        self.base.norm()
    }

    fn description(&self) -> String {
        format!("pullback({} via {})", self.base.description(), self.name)
    }

    fn points(&self) -> Option<Vec<Point>> {
        self.points.clone()
    }
}
