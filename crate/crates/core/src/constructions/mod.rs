//! Building new labelled partition spaces out of old ones.

pub mod naive;
pub mod product;
pub mod proper_sum;
pub mod pullback;
pub mod quotient;
pub mod semidirect;
pub mod wreath;

pub use naive::{naive_action, naive_translation, NaiveSpace};
pub use product::{
    direct_sum_space, product_space, BasepointedFamily, DiagonalAction, DirectSumAction, DirectSumSpace, ProductAction,
    ProductSpace,
};
pub use proper_sum::{naive_factor, proper_sum_space, uniform_factor, IndexWeight, ProperFactor, ProperSum};
pub use pullback::{pullback, Membership, PointMap, PullbackSpace};
pub use quotient::{quotient_average, quotient_bound_report, QuotientSpace};
pub use semidirect::{infinite_dihedral, semidirect_space, SemidirectAction, SemidirectData};
pub use wreath::{lamplighter, wreath_glue, wreath_group, IndexShift, LampWalls, WreathAction, WreathGlue};
