//! Atomic measured walls and the labelled partitions they induce.
//!
//! Walls are handled through their half-spaces: `𝒜_x` is the set of
//! half-spaces containing `x` and `d_μ(x, y) = μ(𝒜_x △ 𝒜_y)`. A wall of
//! measure `m` is entered as its two halves with weight `m/2` each.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::action::FnAction;
use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Group, GroupRef, IntegerLattice};
use crate::label::{LabelComponent, LabelId, WallId};
use crate::norm::{Exponent, NormSpec};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::LabelledPartitionSpace;
use crate::sparse::SparseFunctional;

/// Atomic measure on half-spaces with a finite separation oracle.
pub trait MeasuredWalls<S: Scalar>: Send + Sync {
    fn contains(&self, p: &Point) -> bool;
    /// Half-spaces containing exactly one of `x`, `y`.
    fn separating(&self, x: &Point, y: &Point) -> Result<Vec<WallId>>;
    /// `μ({h})`.
    fn weight(&self, h: &WallId) -> S;
    /// `x ∈ h`.
    fn holds(&self, h: &WallId, x: &Point) -> Result<bool>;
    fn description(&self) -> String;
    fn points(&self) -> Option<Vec<Point>> {
        None
    }
}

pub type WallsRef<S> = Arc<dyn MeasuredWalls<S>>;

/// `d_μ(x, y)`.
pub fn wall_distance<S: Scalar>(walls: &dyn MeasuredWalls<S>, x: &Point, y: &Point) -> Result<S> {
    Ok(walls
        .separating(x, y)?
        .iter()
        .fold(S::zero(), |acc, h| acc + walls.weight(h)))
}

/// The labelled-partition structure with labels `Wall(h)` of weight `μ({h})`.
pub struct WallsSpace<S> {
    walls: WallsRef<S>,
    norm: NormSpec<S>,
}

/// Labels `Wall(h)` with `c(x,y)(h) = 1_h(x) − 1_h(y)`; the q-energy is `d_μ`.
pub fn walls_to_labelled<S: Scalar>(walls: WallsRef<S>, exponent: Exponent) -> WallsSpace<S> {
    let w = walls.clone();
    let weights = move |l: &LabelId| match l.0.as_slice() {
        [LabelComponent::Wall(h)] => w.weight(h),
        _ => S::zero(),
    };
    WallsSpace { walls, norm: NormSpec::weighted(exponent, Arc::new(weights)) }
}

impl<S: Scalar> WallsSpace<S> {
    pub fn walls(&self) -> &WallsRef<S> {
        &self.walls
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for WallsSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        self.walls.contains(p)
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        let mut v = SparseFunctional::new();
        for h in self.walls.separating(x, y)? {
            let value = match (self.walls.holds(&h, x)?, self.walls.holds(&h, y)?) {
                (true, false) => S::one(),
                (false, true) => -S::one(),
                _ => return Err(Error::domain(format!("half-space {h} does not separate {x} and {y}"))),
            };
            v.add_at(LabelId::wall(h), value);
        }
        Ok(v)
    }

    fn norm(&self) -> &NormSpec<S> {
        &self.norm
    }

    fn description(&self) -> String {
        format!("walls({})", self.walls.description())
    }

    fn points(&self) -> Option<Vec<Point>> {
        self.walls.points()
    }
}

/// Coordinate half-spaces of `ℤⁿ`; both halves of each wall carry weight
/// `1/2`, so `d_μ` is the ℓ¹ metric.
#[derive(Clone, Debug)]
pub struct ZnHalfSpaceWalls {
    lattice: IntegerLattice,
}

impl ZnHalfSpaceWalls {
    pub fn new(dim: usize) -> Result<Self> {
        Ok(ZnHalfSpaceWalls { lattice: IntegerLattice::new(dim)? })
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    /// `ℤⁿ` acting by translation; half-spaces shift with it.
    pub fn translation_action(&self) -> FnAction {
        let group: GroupRef = Arc::new(self.lattice.clone());
        let lat = self.lattice.clone();
        let lat2 = self.lattice.clone();
        FnAction::new(
            group,
            Arc::new(move |t, x| lat.op(t, x)),
            Some(Arc::new(move |t, l| {
                let t = lat2.coords(t)?;
                shift_half_space(l, |axis, cut, upper| Ok((cut - t[axis], upper)))
            })),
        )
    }
}

/// Rewrites a single-component half-space label.
pub fn shift_half_space(
    l: &LabelId,
    f: impl Fn(usize, i64, bool) -> Result<(i64, bool)>,
) -> Result<LabelId> {
    match l.0.as_slice() {
        [LabelComponent::Wall(WallId::HalfSpace { axis, cut, upper })] => {
            let (cut, upper) = f(*axis, *cut, *upper)?;
            Ok(LabelId::wall(WallId::HalfSpace { axis: *axis, cut, upper }))
        }
        _ => Err(Error::domain(format!("{l} is not a half-space label"))),
    }
}

/// Label map of the reflection `n ↦ −n` on `ℤ`.
pub fn reflect_half_space(l: &LabelId) -> Result<LabelId> {
    shift_half_space(l, |_, cut, upper| Ok((-cut - 1, !upper)))
}

impl<S: Scalar> MeasuredWalls<S> for ZnHalfSpaceWalls {
    fn contains(&self, p: &Point) -> bool {
        self.lattice.contains(p)
    }

    fn separating(&self, x: &Point, y: &Point) -> Result<Vec<WallId>> {
        let (a, b) = (self.lattice.coords(x)?, self.lattice.coords(y)?);
        let mut out = Vec::new();
        for (axis, (&p, &q)) in a.iter().zip(&b).enumerate() {
            for cut in p.min(q)..p.max(q) {
                out.push(WallId::HalfSpace { axis, cut, upper: false });
                out.push(WallId::HalfSpace { axis, cut, upper: true });
            }
        }
        Ok(out)
    }

    fn weight(&self, h: &WallId) -> S {
        match h {
            WallId::HalfSpace { axis, .. } if *axis < self.lattice.dim() => S::ratio(1, 2),
            _ => S::zero(),
        }
    }

    fn holds(&self, h: &WallId, x: &Point) -> Result<bool> {
        let c = self.lattice.coords(x)?;
        match h {
            WallId::HalfSpace { axis, cut, upper } if *axis < c.len() => Ok((c[*axis] > *cut) == *upper),
            other => Err(Error::domain(format!("{other} is not a half-space of Z^{}", self.lattice.dim()))),
        }
    }

    fn description(&self) -> String {
        format!("half-spaces of Z^{}", self.lattice.dim())
    }
}

/// Explicit half-spaces over the points `#0, …, #(m−1)`.
#[derive(Clone, Debug)]
pub struct FiniteWalls<S> {
    size: usize,
    names: Vec<String>,
    weights: Vec<S>,
    members: Vec<Vec<bool>>,
    by_name: BTreeMap<String, usize>,
}

impl<S: Scalar> FiniteWalls<S> {
    pub fn new(size: usize, walls: Vec<(String, S, Vec<bool>)>) -> Result<Self> {
        let mut by_name = BTreeMap::new();
        let (mut names, mut weights, mut members) = (Vec::new(), Vec::new(), Vec::new());
        for (k, (name, w, m)) in walls.into_iter().enumerate() {
            if m.len() != size {
                return Err(Error::invalid(format!("wall {name} has {} membership bits, expected {size}", m.len())));
            }
            if !w.is_positive() {
                return Err(Error::invalid(format!("wall {name} has non-positive weight")));
            }
            if by_name.insert(name.clone(), k).is_some() {
                return Err(Error::invalid(format!("duplicate wall name {name}")));
            }
            names.push(name);
            weights.push(w);
            members.push(m);
        }
        Ok(FiniteWalls { size, names, weights, members, by_name })
    }

    /// Parses `points m` followed by lines `name weight bits`; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut size = None;
        let mut walls = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::parse(format!("line {}: cannot parse '{raw}'", lineno + 1));
            match (size, fields.as_slice()) {
                (None, ["points", m]) => size = Some(m.parse::<usize>().map_err(|_| bad())?),
                (Some(_), [name, w, bits]) => {
                    let w = S::parse_scalar(w).ok_or_else(bad)?;
                    let bits = bits
                        .chars()
                        .map(|c| match c {
                            '0' => Ok(false),
                            '1' => Ok(true),
                            _ => Err(bad()),
                        })
                        .collect::<Result<Vec<bool>>>()?;
                    walls.push((name.to_string(), w, bits));
                }
                _ => return Err(bad()),
            }
        }
        Self::new(size.ok_or_else(|| Error::parse("missing 'points m' header"))?, walls)
    }

    /// Antipodal edge cuts of a Cayley graph that is an even cycle (for
    /// example `ℤ/2k` with one generator, or `S₃` with two transpositions).
    pub fn cayley_cycle(group: &FiniteGroup) -> Result<Self> {
        let n = group.order();
        let mut steps: BTreeSet<usize> = BTreeSet::new();
        for &s in group.generator_indices() {
            steps.insert(s);
            steps.insert(group.inverse(s));
        }
        steps.remove(&group.identity_index());
        if steps.len() != 2 || !n.is_multiple_of(2) || n < 2 {
            return Err(Error::invalid("Cayley graph is not an even cycle"));
        }
        let steps: Vec<usize> = steps.into_iter().collect();
        let mut cycle = vec![group.identity_index(), group.mul(group.identity_index(), steps[0])];
        while cycle.len() < n {
            let (prev, cur) = (cycle[cycle.len() - 2], cycle[cycle.len() - 1]);
            let next = steps
                .iter()
                .map(|&s| group.mul(cur, s))
                .find(|&x| x != prev)
                .expect("degree two");
            if cycle.contains(&next) {
                return Err(Error::invalid("Cayley graph is not a single cycle"));
            }
            cycle.push(next);
        }
        let k = n / 2;
        let half = S::ratio(1, 2);
        let mut walls = Vec::new();
        for j in 0..k {
            let mut inside = vec![false; n];
            for t in 1..=k {
                inside[cycle[(j + t) % n]] = true;
            }
            let outside = inside.iter().map(|b| !b).collect();
            walls.push((format!("cut{j}+"), half.clone(), inside));
            walls.push((format!("cut{j}-"), half.clone(), outside));
        }
        Self::new(n, walls)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("points {}\n", self.size);
        for k in 0..self.names.len() {
            let bits: String = self.members[k].iter().map(|&b| if b { '1' } else { '0' }).collect();
            out.push_str(&format!("{} {} {}\n", self.names[k], self.weights[k].to_exact_string(), bits));
        }
        out
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn wall_index(&self, h: &WallId) -> Result<usize> {
        match h {
            WallId::Named(name) => self
                .by_name
                .get(name)
                .copied()
                .ok_or_else(|| Error::domain(format!("unknown wall {name}"))),
            other => Err(Error::domain(format!("{other} is not a named wall"))),
        }
    }

    /// Left translation of a finite group on its own elements, provided the
    /// wall family and weights are invariant.
    pub fn translation_action(self: &Arc<Self>, group: Arc<FiniteGroup>) -> Result<FnAction> {
        if group.order() != self.size {
            return Err(Error::invalid("group order differs from the number of points"));
        }
        let mut by_set: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
        for (k, m) in self.members.iter().enumerate() {
            by_set.insert(m.clone(), k);
        }
        // pulled[g][k] = index of g⁻¹·h_k
        let mut pulled = vec![vec![0; self.names.len()]; self.size];
        for g in 0..self.size {
            let g_inv = group.inverse(g);
            for (k, m) in self.members.iter().enumerate() {
                let mut image = vec![false; self.size];
                for x in (0..self.size).filter(|&x| m[x]) {
                    image[group.mul(g_inv, x)] = true;
                }
                let j = *by_set
                    .get(&image)
                    .ok_or_else(|| Error::invalid(format!("wall {} is not translation invariant", self.names[k])))?;
                if self.weights[j] != self.weights[k] {
                    return Err(Error::invalid(format!("translation changes the weight of {}", self.names[k])));
                }
                pulled[g][k] = j;
            }
        }
        let walls = self.clone();
        let g2 = group.clone();
        Ok(FnAction::new(
            group.clone(),
            Arc::new(move |g, x| g2.op(g, x)),
            Some(Arc::new(move |g, l| {
                let g = group.index_of(g)?;
                match l.0.as_slice() {
                    [LabelComponent::Wall(h)] => {
                        let k = walls.wall_index(h)?;
                        Ok(LabelId::wall(WallId::Named(walls.names[pulled[g][k]].clone())))
                    }
                    _ => Err(Error::domain(format!("{l} is not a wall label"))),
                }
            })),
        ))
    }
}

impl<S: Scalar> MeasuredWalls<S> for FiniteWalls<S> {
    fn contains(&self, p: &Point) -> bool {
        matches!(p, Point::Index(i) if *i < self.size)
    }

    fn separating(&self, x: &Point, y: &Point) -> Result<Vec<WallId>> {
        let (x, y) = (x.as_index()?, y.as_index()?);
        Ok((0..self.names.len())
            .filter(|&k| self.members[k][x] != self.members[k][y])
            .map(|k| WallId::Named(self.names[k].clone()))
            .collect())
    }

    fn weight(&self, h: &WallId) -> S {
        self.wall_index(h).map(|k| self.weights[k].clone()).unwrap_or_else(|_| S::zero())
    }

    fn holds(&self, h: &WallId, x: &Point) -> Result<bool> {
        Ok(self.members[self.wall_index(h)?][x.as_index()?])
    }

    fn description(&self) -> String {
        format!("{} half-spaces on {} points", self.names.len(), self.size)
    }

    fn points(&self) -> Option<Vec<Point>> {
        Some((0..self.size).map(Point::Index).collect())
    }
}

/// Symmetry, empty diagonal and triangle inequality of `d_μ`.
pub fn check_walls<S: Scalar>(walls: &dyn MeasuredWalls<S>, triples: &[(Point, Point, Point)]) -> CheckReport {
    let mut report = CheckReport::new("walls");
    for (x, y, z) in triples {
        let outcome = (|| {
            if !walls.separating(x, x)?.is_empty() {
                return Ok(Some(("no wall separates x from x".to_string(), "nonempty".to_string())));
            }
            let a: BTreeSet<WallId> = walls.separating(x, y)?.into_iter().collect();
            let b: BTreeSet<WallId> = walls.separating(y, x)?.into_iter().collect();
            if a != b {
                return Ok(Some(("symmetric separation".to_string(), "asymmetric".to_string())));
            }
            let dxz = wall_distance(walls, x, z)?;
            let bound = wall_distance(walls, x, y)? + wall_distance(walls, y, z)?;
            Ok((dxz > bound).then(|| (format!("<= {}", bound.to_exact_string()), dxz.to_exact_string())))
        })();
        report.record(&[x, y, z], outcome);
    }
    report
}
