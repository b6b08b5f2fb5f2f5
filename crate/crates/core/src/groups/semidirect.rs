use std::sync::Arc;

use super::{Group, GroupRef};
use crate::error::Result;
use crate::point::Point;

/// Automorphism action `ρ(g₂)(g₁)` of `G₂` on `G₁`.
pub type Twist = Arc<dyn Fn(&Point, &Point) -> Result<Point> + Send + Sync>;

/// `G₁ ⋊_ρ G₂` with `(a, b)(c, d) = (a·ρ(b)(c), bd)`.
#[derive(Clone)]
pub struct SemidirectGroup {
    normal: GroupRef,
    acting: GroupRef,
    rho: Twist,
}

impl SemidirectGroup {
    pub fn new(normal: GroupRef, acting: GroupRef, rho: Twist) -> Self {
        SemidirectGroup { normal, acting, rho }
    }

    pub fn normal(&self) -> &GroupRef {
        &self.normal
    }

    pub fn acting(&self) -> &GroupRef {
        &self.acting
    }

    pub fn rho(&self, g2: &Point, g1: &Point) -> Result<Point> {
        (self.rho)(g2, g1)
    }

    pub fn split<'a>(&self, p: &'a Point) -> Result<(&'a Point, &'a Point)> {
        let t = p.as_tuple(2)?;
        Ok((&t[0], &t[1]))
    }
}

impl Group for SemidirectGroup {
    fn name(&self) -> String {
        format!("{} x| {}", self.normal.name(), self.acting.name())
    }

    fn identity(&self) -> Point {
        Point::pair(self.normal.identity(), self.acting.identity())
    }

    fn op(&self, x: &Point, y: &Point) -> Result<Point> {
        let (a, b) = self.split(x)?;
        let (c, d) = self.split(y)?;
        let first = self.normal.op(a, &self.rho(b, c)?)?;
        Ok(Point::pair(first, self.acting.op(b, d)?))
    }

    fn inv(&self, x: &Point) -> Result<Point> {
        let (a, b) = self.split(x)?;
        let b_inv = self.acting.inv(b)?;
        let first = self.rho(&b_inv, &self.normal.inv(a)?)?;
        Ok(Point::pair(first, b_inv))
    }

    fn contains(&self, x: &Point) -> bool {
        self.split(x)
            .map(|(a, b)| self.normal.contains(a) && self.acting.contains(b))
            .unwrap_or(false)
    }

    fn generators(&self) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .normal
            .generators()
            .into_iter()
            .map(|s| Point::pair(s, self.acting.identity()))
            .collect();
        out.extend(self.acting.generators().into_iter().map(|t| Point::pair(self.normal.identity(), t)));
        out
    }

    fn elements(&self) -> Option<Vec<Point>> {
        let (xs, ys) = (self.normal.elements()?, self.acting.elements()?);
        Some(
            xs.iter()
                .flat_map(|a| ys.iter().map(move |b| Point::pair(a.clone(), b.clone())))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteGroup, IntegerLattice};

    fn infinite_dihedral() -> SemidirectGroup {
        let z: GroupRef = Arc::new(IntegerLattice::new(1).unwrap());
        let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2));
        SemidirectGroup::new(
            z,
            z2,
            Arc::new(|s: &Point, n: &Point| Ok(if s.as_index()? == 1 { Point::Int(-n.as_int()?) } else { n.clone() })),
        )
    }

    #[test]
    fn reflection_conjugates_translation() {
        let d = infinite_dihedral();
        let t = Point::pair(Point::Int(1), Point::Index(0));
        let s = Point::pair(Point::Int(0), Point::Index(1));
        let sts = d.op(&d.op(&s, &t).unwrap(), &s).unwrap();
        assert_eq!(sts, d.inv(&t).unwrap());
        let st = d.op(&s, &t).unwrap();
        assert_eq!(d.op(&st, &d.inv(&st).unwrap()).unwrap(), d.identity());
    }
}
