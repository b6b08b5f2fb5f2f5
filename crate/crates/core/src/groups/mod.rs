//! Desk-scale groups: finite tables, amalgams, free groups, lattices and
//! the product/semidirect combinators built on top of them.

mod amalgam;
mod finite;
mod free;
mod lattice;
mod product;
mod semidirect;

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

pub use amalgam::{AmalgamGroup, AmalgamWord, Letter, Side};
pub use finite::{CosetTable, FiniteGroup};
pub use free::FreeGroup;
pub use lattice::IntegerLattice;
pub use product::{DirectSumGroup, IndexSet, ProductGroup};
pub use semidirect::{SemidirectGroup, Twist};

use crate::error::Result;
use crate::point::Point;

/// A discrete group whose elements are encoded as [`Point`]s.
pub trait Group: Send + Sync {
    fn name(&self) -> String;
    fn identity(&self) -> Point;
    fn op(&self, a: &Point, b: &Point) -> Result<Point>;
    fn inv(&self, a: &Point) -> Result<Point>;
    fn contains(&self, a: &Point) -> bool;
    /// Default generating set used by ball enumeration and sampling.
    fn generators(&self) -> Vec<Point>;
    /// All elements, for finite groups.
    fn elements(&self) -> Option<Vec<Point>> {
        None
    }
}

pub type GroupRef = Arc<dyn Group>;

/// Product of a sequence of elements, left to right.
pub fn product_of(group: &dyn Group, elems: &[Point]) -> Result<Point> {
    let mut acc = group.identity();
    for e in elems {
        acc = group.op(&acc, e)?;
    }
    Ok(acc)
}

/// All elements of word length `≤ radius` over `generators ∪ generators⁻¹`,
/// with their lengths, sorted by length and then by canonical point order.
pub fn ball_enumerate(group: &dyn Group, radius: usize, generators: &[Point]) -> Result<Vec<(Point, usize)>> {
    let mut steps = Vec::with_capacity(2 * generators.len());
    for s in generators {
        steps.push(s.clone());
        let inv = group.inv(s)?;
        if !steps.contains(&inv) {
            steps.push(inv);
        }
    }
    let mut seen = BTreeMap::new();
    let e = group.identity();
    seen.insert(e.clone(), 0usize);
    let mut queue = VecDeque::from([(e, 0usize)]);
    while let Some((g, len)) = queue.pop_front() {
        if len == radius {
            continue;
        }
        for s in &steps {
            let h = group.op(&g, s)?;
            if !seen.contains_key(&h) {
                seen.insert(h.clone(), len + 1);
                queue.push_back((h, len + 1));
            }
        }
    }
    let mut out: Vec<(Point, usize)> = seen.into_iter().collect();
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Word-length spheres `S(0), …, S(radius)`.
pub fn spheres(group: &dyn Group, radius: usize, generators: &[Point]) -> Result<Vec<Vec<Point>>> {
    let mut out = vec![Vec::new(); radius + 1];
    for (g, len) in ball_enumerate(group, radius, generators)? {
        out[len].push(g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_ball_radius_one() {
        let z4 = FiniteGroup::cyclic(4);
        let ball = ball_enumerate(&z4, 1, &z4.generators()).unwrap();
        let pts: Vec<Point> = ball.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(pts, vec![Point::Index(0), Point::Index(1), Point::Index(3)]);
        let zero = ball_enumerate(&z4, 0, &z4.generators()).unwrap();
        assert_eq!(zero, vec![(Point::Index(0), 0)]);
    }
}
