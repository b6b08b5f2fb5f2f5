use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Group, GroupRef};
use crate::error::{Error, Result};
use crate::point::Point;

/// Finite direct product; elements are tuples.
#[derive(Clone)]
pub struct ProductGroup {
    factors: Vec<GroupRef>,
}

impl ProductGroup {
    pub fn new(factors: Vec<GroupRef>) -> Self {
        ProductGroup { factors }
    }

    pub fn factors(&self) -> &[GroupRef] {
        &self.factors
    }

    fn parts<'a>(&self, p: &'a Point) -> Result<&'a [Point]> {
        p.as_tuple(self.factors.len())
    }
}

impl Group for ProductGroup {
    fn name(&self) -> String {
        let names: Vec<String> = self.factors.iter().map(|g| g.name()).collect();
        names.join(" x ")
    }

    fn identity(&self) -> Point {
        Point::Tuple(self.factors.iter().map(|g| g.identity()).collect())
    }

    fn op(&self, a: &Point, b: &Point) -> Result<Point> {
        let (a, b) = (self.parts(a)?, self.parts(b)?);
        let items = self
            .factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(g, (x, y))| g.op(x, y))
            .collect::<Result<_>>()?;
        Ok(Point::Tuple(items))
    }

    fn inv(&self, a: &Point) -> Result<Point> {
        let items = self
            .factors
            .iter()
            .zip(self.parts(a)?)
            .map(|(g, x)| g.inv(x))
            .collect::<Result<_>>()?;
        Ok(Point::Tuple(items))
    }

    fn contains(&self, a: &Point) -> bool {
        self.parts(a)
            .map(|xs| self.factors.iter().zip(xs).all(|(g, x)| g.contains(x)))
            .unwrap_or(false)
    }

    fn generators(&self) -> Vec<Point> {
        let e: Vec<Point> = self.factors.iter().map(|g| g.identity()).collect();
        let mut out = Vec::new();
        for (i, g) in self.factors.iter().enumerate() {
            for s in g.generators() {
                let mut t = e.clone();
                t[i] = s;
                out.push(Point::Tuple(t));
            }
        }
        out
    }

    fn elements(&self) -> Option<Vec<Point>> {
        let mut acc = vec![Vec::new()];
        for g in &self.factors {
            let elems = g.elements()?;
            acc = acc
                .into_iter()
                .flat_map(|prefix: Vec<Point>| {
                    elems.iter().map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x.clone());
                        p
                    })
                })
                .collect();
        }
        Some(acc.into_iter().map(Point::Tuple).collect())
    }
}

/// Countable index set of a direct sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSet {
    Finite(Vec<i64>),
    Integers,
}

impl IndexSet {
    pub fn contains(&self, i: i64) -> bool {
        match self {
            IndexSet::Finite(v) => v.contains(&i),
            IndexSet::Integers => true,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, IndexSet::Finite(_))
    }

    /// Position in the fixed enumeration: list order for finite sets,
    /// `0, 1, -1, 2, -2, …` for `ℤ`.
    pub fn rank(&self, i: i64) -> Option<u64> {
        match self {
            IndexSet::Finite(v) => v.iter().position(|&j| j == i).map(|k| k as u64),
            IndexSet::Integers => Some(if i > 0 { 2 * i as u64 - 1 } else { 2 * i.unsigned_abs() }),
        }
    }

    /// The first `n` indices of the enumeration.
    pub fn first(&self, n: usize) -> Vec<i64> {
        match self {
            IndexSet::Finite(v) => v.iter().copied().take(n).collect(),
            IndexSet::Integers => (0..n as i64).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 }).collect(),
        }
    }
}

/// Restricted direct sum `⊕_{i∈I} H_i`; absent coordinates are the identity.
#[derive(Clone)]
pub struct DirectSumGroup {
    factor: Arc<dyn Fn(i64) -> GroupRef + Send + Sync>,
    indices: IndexSet,
    window: Vec<i64>,
    name: String,
}

impl DirectSumGroup {
    /// `⊕_I H`. Generators are taken on the finite set, or on the window
    /// `-w..=w` of `ℤ`.
    pub fn uniform(group: GroupRef, indices: IndexSet, window: i64) -> Self {
        let name = format!("sum {} over {:?}", group.name(), indices);
        let win = match &indices {
            IndexSet::Finite(v) => v.clone(),
            IndexSet::Integers => (-window..=window).collect(),
        };
        DirectSumGroup { factor: Arc::new(move |_| group.clone()), indices, window: win, name }
    }

    pub fn family(factor: Arc<dyn Fn(i64) -> GroupRef + Send + Sync>, indices: IndexSet, window: Vec<i64>, name: String) -> Self {
        DirectSumGroup { factor, indices, window, name }
    }

    pub fn factor(&self, i: i64) -> GroupRef {
        (self.factor)(i)
    }

    pub fn indices(&self) -> &IndexSet {
        &self.indices
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    fn canonical(&self, map: BTreeMap<i64, Point>) -> Point {
        Point::Sparse(
            map.into_iter()
                .filter(|(i, x)| *x != self.factor(*i).identity())
                .collect(),
        )
    }

    /// The element with the single coordinate `x` at `i`.
    pub fn delta(&self, i: i64, x: Point) -> Point {
        self.canonical(BTreeMap::from([(i, x)]))
    }

    pub fn coords<'a>(&self, p: &'a Point) -> Result<&'a BTreeMap<i64, Point>> {
        let map = p.as_sparse()?;
        for (i, x) in map {
            if !self.indices.contains(*i) {
                return Err(Error::domain(format!("index {i} outside the direct sum")));
            }
            let g = self.factor(*i);
            if !g.contains(x) || *x == g.identity() {
                return Err(Error::domain(format!("coordinate {i} of {p} is not canonical")));
            }
        }
        Ok(map)
    }
}

impl Group for DirectSumGroup {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn identity(&self) -> Point {
        Point::Sparse(BTreeMap::new())
    }

    fn op(&self, a: &Point, b: &Point) -> Result<Point> {
        let (a, b) = (self.coords(a)?, self.coords(b)?);
        let mut out = a.clone();
        for (i, y) in b {
            let g = self.factor(*i);
            let x = out.remove(i).unwrap_or_else(|| g.identity());
            out.insert(*i, g.op(&x, y)?);
        }
        Ok(self.canonical(out))
    }

    fn inv(&self, a: &Point) -> Result<Point> {
        let out = self
            .coords(a)?
            .iter()
            .map(|(i, x)| Ok((*i, self.factor(*i).inv(x)?)))
            .collect::<Result<_>>()?;
        Ok(self.canonical(out))
    }

    fn contains(&self, a: &Point) -> bool {
        self.coords(a).is_ok()
    }

    fn generators(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for &i in &self.window {
            for s in self.factor(i).generators() {
                out.push(self.delta(i, s));
            }
        }
        out
    }

    fn elements(&self) -> Option<Vec<Point>> {
        let IndexSet::Finite(idx) = &self.indices else {
            return None;
        };
        let mut acc = vec![BTreeMap::new()];
        for &i in idx {
            let elems = self.factor(i).elements()?;
            let mut next = Vec::new();
            for m in &acc {
                for x in &elems {
                    let mut m2: BTreeMap<i64, Point> = m.clone();
                    m2.insert(i, x.clone());
                    next.push(m2);
                }
            }
            acc = next;
        }
        let mut out: Vec<Point> = acc.into_iter().map(|m| self.canonical(m)).collect();
        out.sort();
        Some(out)
    }
}
