//! The labelled-partition space abstraction.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::norm::{q_energy, Energy, NormSpec};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::sparse::SparseFunctional;

/// A point universe with a separation oracle and a norm on label space.
///
/// Implementors provide the raw oracle [`separation`](Self::separation);
/// callers use [`sep`], which validates membership and enforces
/// antisymmetry.
pub trait LabelledPartitionSpace<S: Scalar>: Send + Sync {
    fn contains(&self, p: &Point) -> bool;

    /// `c(x, y)`. Only called with `x < y` and both points contained.
    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>>;

    fn norm(&self) -> &NormSpec<S>;

    fn description(&self) -> String;

    /// Full point list when the universe is finite and small.
    fn points(&self) -> Option<Vec<Point>> {
        None
    }
}

pub type SpaceRef<S> = Arc<dyn LabelledPartitionSpace<S>>;

fn check_member<S: Scalar>(space: &dyn LabelledPartitionSpace<S>, p: &Point) -> Result<()> {
    if space.contains(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("point {p} is not in {}", space.description())))
    }
}

/// The separation vector `c(x, y)`.
pub fn sep<S: Scalar>(space: &dyn LabelledPartitionSpace<S>, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
    check_member(space, x)?;
    check_member(space, y)?;
    if x == y {
        Ok(SparseFunctional::new())
    } else if x < y {
        space.separation(x, y)
    } else {
        Ok(-space.separation(y, x)?)
    }
}

/// `‖c(x, y)‖^q`, or the sup norm for SUP spaces.
pub fn energy<S: Scalar>(space: &dyn LabelledPartitionSpace<S>, x: &Point, y: &Point) -> Result<Energy<S>> {
    q_energy(space.norm(), &sep(space, x, y)?)
}

/// The labelled-partitions pseudo-metric.
pub fn dist<S: Scalar>(space: &dyn LabelledPartitionSpace<S>, x: &Point, y: &Point) -> Result<f64> {
    Ok(energy(space, x, y)?.root(space.norm().exponent))
}

/// Finite space given by an explicit point list and an oracle closure.
pub struct FnSpace<S, F> {
    pub points: Vec<Point>,
    pub oracle: F,
    pub norm: NormSpec<S>,
    pub name: String,
}

impl<S, F> LabelledPartitionSpace<S> for FnSpace<S, F>
where
    S: Scalar,
    F: Fn(&Point, &Point) -> Result<SparseFunctional<S>> + Send + Sync,
{
    fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        (self.oracle)(x, y)
    }

    fn norm(&self) -> &NormSpec<S> {
        &self.norm
    }

    fn description(&self) -> String {
        self.name.clone()
    }

    fn points(&self) -> Option<Vec<Point>> {
        Some(self.points.clone())
    }
}
