use super::Group;
use crate::error::{Error, Result};
use crate::point::Point;

/// `ℤⁿ` under addition. Elements are `Point::Int` for `n = 1` and
/// `Point::Lattice` otherwise.
#[derive(Clone, Debug)]
pub struct IntegerLattice {
    dim: usize,
}

impl IntegerLattice {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("lattice dimension must be at least 1"));
        }
        Ok(IntegerLattice { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self, p: &Point) -> Result<Vec<i64>> {
        match p {
            Point::Int(x) if self.dim == 1 => Ok(vec![*x]),
            Point::Lattice(v) if v.len() == self.dim && self.dim > 1 => Ok(v.clone()),
            other => Err(Error::domain(format!("{other} is not a point of Z^{}", self.dim))),
        }
    }

    pub fn point(&self, coords: Vec<i64>) -> Point {
        if self.dim == 1 {
            Point::Int(coords[0])
        } else {
            Point::Lattice(coords)
        }
    }
}

impl Group for IntegerLattice {
    fn name(&self) -> String {
        format!("Z^{}", self.dim)
    }

    fn identity(&self) -> Point {
        self.point(vec![0; self.dim])
    }

    fn op(&self, a: &Point, b: &Point) -> Result<Point> {
        let (a, b) = (self.coords(a)?, self.coords(b)?);
        Ok(self.point(a.iter().zip(&b).map(|(x, y)| x + y).collect()))
    }

    fn inv(&self, a: &Point) -> Result<Point> {
        Ok(self.point(self.coords(a)?.iter().map(|x| -x).collect()))
    }

    fn contains(&self, a: &Point) -> bool {
        self.coords(a).is_ok()
    }

    fn generators(&self) -> Vec<Point> {
        (0..self.dim)
            .map(|i| {
                let mut v = vec![0; self.dim];
                v[i] = 1;
                self.point(v)
            })
            .collect()
    }
}
