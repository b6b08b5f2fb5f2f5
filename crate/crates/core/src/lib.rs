//! Spaces with labelled partitions, their separation vectors and ℓ^q
//! pseudo-metrics, and the group constructions acting on them.
//!
//! Every vector, weight and energy is generic over [`Scalar`]. The exact
//! instance used throughout the tests is [`Rational`].

pub mod action;
pub mod amalgam;
pub mod checks;
pub mod constructions;
pub mod error;
pub mod groups;
pub mod label;
pub mod norm;
pub mod point;
pub mod profile;
pub mod scalar;
pub mod space;
pub mod sparse;
pub mod structures;
pub mod walls;

pub use action::{ActionRef, AutomorphismAction, FnAction};
pub use error::{Error, Result};
pub use groups::{Group, GroupRef};
pub use label::{LabelComponent, LabelId, WallId};
pub use norm::{Energy, Exponent, NormSpec};
pub use point::Point;
pub use scalar::Scalar;
pub use space::{dist, energy, sep, LabelledPartitionSpace, SpaceRef};
pub use sparse::{Direction, SparseFunctional};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Separation vectors over [`Rational`].
pub type Sparse = SparseFunctional<Rational>;
/// Spaces over [`Rational`].
pub type RationalSpace = SpaceRef<Rational>;
/// Spaces over `f64`.
pub type FloatSpace = SpaceRef<f64>;
