//! Bass–Serre trees of coset spaces for `G ∗_C H`, the induced
//! labelled-partition structures and the closed-form energy identity.

mod space;
mod tree;

pub use space::{
    amalgam_space, coset_translation, naive_cosets, naive_factors, proper_amalgam_from_factors, vertex_induced_space,
    AmalgamAction, AmalgamSpace, CosetStructure, TreeTerm, TreeWalls, VertexInducedSpace,
};
pub use tree::{BassSerreTree, TotalPoint, VertexId};
