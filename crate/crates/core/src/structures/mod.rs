//! Concrete structures: the supremum-norm realization of a finite metric,
//! Mineyev-type flows on free-group trees, and the correspondence with
//! affine isometric actions.

mod cocycle;
mod metric;
mod mineyev;

pub use cocycle::{cocycle_from_space, cocycle_space, CocycleAction, CocycleGroup, CocycleSpace, Isometry};
pub use metric::{metric_realization_space, FiniteMetric, MetricSpace};
pub use mineyev::{flow_point, free_tree_mineyev, geodesic, MineyevSpace};
