use super::Group;
use crate::error::{Error, Result};
use crate::point::Point;

/// Free group of rank `r` on reduced words; letter `k+1` is the `k`-th
/// generator and `-(k+1)` its inverse.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(Error::invalid(format!("free group rank {rank} outside 1..=26")));
        }
        Ok(FreeGroup { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_reduced(&self, w: &[i32]) -> bool {
        w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= self.rank)
            && w.windows(2).all(|p| p[0] != -p[1])
    }

    /// Reduced form of the concatenation `u v`.
    pub fn concat(u: &[i32], v: &[i32]) -> Vec<i32> {
        let mut out = u.to_vec();
        for &l in v {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }

    pub fn word_of<'a>(&self, p: &'a Point) -> Result<&'a [i32]> {
        match p {
            Point::Free(w) if self.is_reduced(w) => Ok(w),
            other => Err(Error::domain(format!("{other} is not a reduced word of F_{}", self.rank))),
        }
    }

    /// Tree distance `|u⁻¹v|`.
    pub fn distance(u: &[i32], v: &[i32]) -> usize {
        let common = u.iter().zip(v).take_while(|(a, b)| a == b).count();
        u.len() + v.len() - 2 * common
    }
}

impl Group for FreeGroup {
    fn name(&self) -> String {
        format!("F_{}", self.rank)
    }

    fn identity(&self) -> Point {
        Point::Free(Vec::new())
    }

    fn op(&self, a: &Point, b: &Point) -> Result<Point> {
        Ok(Point::Free(Self::concat(self.word_of(a)?, self.word_of(b)?)))
    }

    fn inv(&self, a: &Point) -> Result<Point> {
        Ok(Point::Free(self.word_of(a)?.iter().rev().map(|l| -l).collect()))
    }

    fn contains(&self, a: &Point) -> bool {
        matches!(a, Point::Free(w) if self.is_reduced(w))
    }

    fn generators(&self) -> Vec<Point> {
        (1..=self.rank as i32).map(|k| Point::Free(vec![k])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ball_enumerate;

    #[test]
    fn ball_sizes_of_f2() {
        let f2 = FreeGroup::new(2).unwrap();
        let ball = ball_enumerate(&f2, 3, &f2.generators()).unwrap();
        // 1 + 4 + 12 + 36
        assert_eq!(ball.len(), 53);
        assert!(ball.iter().all(|(p, len)| f2.word_of(p).unwrap().len() == *len));
    }

    #[test]
    fn concat_cancels() {
        assert_eq!(FreeGroup::concat(&[1, 2], &[-2, -1, 2]), vec![2]);
        assert_eq!(FreeGroup::distance(&[1, 2], &[1, -2]), 2);
    }
}
