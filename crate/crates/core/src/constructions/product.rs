use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::action::{ActionRef, AutomorphismAction};
use crate::error::{Error, Result};
use crate::groups::{DirectSumGroup, GroupRef, IndexSet, ProductGroup};
use crate::label::{LabelComponent, LabelId};
use crate::norm::{Exponent, NormSpec};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::{sep, LabelledPartitionSpace, SpaceRef};
use crate::sparse::SparseFunctional;

const MAX_LISTED_POINTS: usize = 100_000;

fn factor_weights<S: Scalar>(lookup: impl Fn(i64) -> Option<SpaceRef<S>> + Send + Sync + 'static) -> Arc<dyn Fn(&LabelId) -> S + Send + Sync> {
    Arc::new(move |l: &LabelId| match l.split_factor() {
        Some((i, rest)) => lookup(i).map(|s| s.norm().weight(&rest)).unwrap_or_else(S::zero),
        None => S::zero(),
    })
}

/// ℓ^q product of finitely many spaces on tuples; labels are tagged
/// `Factor(i)`.
pub struct ProductSpace<S> {
    factors: Vec<SpaceRef<S>>,
    norm: NormSpec<S>,
}

/// All factors must share the exponent, which the product inherits.
pub fn product_space<S: Scalar>(factors: Vec<SpaceRef<S>>) -> Result<ProductSpace<S>> {
    let exponent = factors
        .first()
        .map(|f| f.norm().exponent)
        .ok_or_else(|| Error::invalid("product of an empty family"))?;
    if let Some(bad) = factors.iter().find(|f| f.norm().exponent != exponent) {
        return Err(Error::InvalidSpec(format!(
            "factor {} has exponent {} but the product uses {exponent}",
            bad.description(),
            bad.norm().exponent
        )));
    }
    let fs = factors.clone();
    let weights = factor_weights(move |i| usize::try_from(i).ok().and_then(|i| fs.get(i).cloned()));
    Ok(ProductSpace { factors, norm: NormSpec::weighted(exponent, Arc::new(move |l: &LabelId| weights(l))) })
}

impl<S: Scalar> ProductSpace<S> {
    pub fn factors(&self) -> &[SpaceRef<S>] {
        &self.factors
    }

    /// `c_i(x_i, y_i)` for each factor.
    pub fn components(&self, x: &Point, y: &Point) -> Result<Vec<SparseFunctional<S>>> {
        let (xs, ys) = (x.as_tuple(self.factors.len())?, y.as_tuple(self.factors.len())?);
        self.factors
            .iter()
            .zip(xs.iter().zip(ys))
            .map(|(f, (a, b))| sep(f.as_ref(), a, b))
            .collect()
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for ProductSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        p.as_tuple(self.factors.len())
            .map(|xs| self.factors.iter().zip(xs).all(|(f, x)| f.contains(x)))
            .unwrap_or(false)
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        let mut out = SparseFunctional::new();
        for (i, v) in self.components(x, y)?.into_iter().enumerate() {
            out.add_assign_ref(&v.prefixed(&LabelComponent::Factor(i as i64)));
        }
        Ok(out)
    }

    fn norm(&self) -> &NormSpec<S> {
        &self.norm
    }

    fn description(&self) -> String {
        let names: Vec<String> = self.factors.iter().map(|f| f.description()).collect();
        format!("product[{}]", names.join(", "))
    }

    fn points(&self) -> Option<Vec<Point>> {
        let mut acc: Vec<Vec<Point>> = vec![Vec::new()];
        for f in &self.factors {
            let pts = f.points()?;
            if acc.len().saturating_mul(pts.len()) > MAX_LISTED_POINTS {
                return None;
            }
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    pts.iter().map(move |p| {
                        let mut t = prefix.clone();
                        t.push(p.clone());
                        t
                    })
                })
                .collect();
        }
        Some(acc.into_iter().map(Point::Tuple).collect())
    }
}

/// A family of spaces indexed by `I ⊆ ℤ` with one basepoint per factor.
#[derive(Clone)]
pub struct BasepointedFamily<S> {
    pub indices: IndexSet,
    pub factor: Arc<dyn Fn(i64) -> SpaceRef<S> + Send + Sync>,
    pub basepoint: Arc<dyn Fn(i64) -> Point + Send + Sync>,
}

impl<S: Scalar> BasepointedFamily<S> {
    pub fn uniform(space: SpaceRef<S>, basepoint: Point, indices: IndexSet) -> Result<Self> {
        if !space.contains(&basepoint) {
            return Err(Error::domain(format!("basepoint {basepoint} not in {}", space.description())));
        }
        Ok(BasepointedFamily {
            indices,
            factor: Arc::new(move |_| space.clone()),
            basepoint: Arc::new(move |_| basepoint.clone()),
        })
    }

    pub fn space(&self, i: i64) -> SpaceRef<S> {
        (self.factor)(i)
    }

    pub fn basepoint(&self, i: i64) -> Point {
        (self.basepoint)(i)
    }

    /// Coordinate `i` of a finitely supported point.
    pub fn coordinate(&self, x: &BTreeMap<i64, Point>, i: i64) -> Point {
        x.get(&i).cloned().unwrap_or_else(|| self.basepoint(i))
    }

    /// Drops coordinates equal to the basepoint.
    pub fn canonical(&self, x: BTreeMap<i64, Point>) -> Point {
        Point::Sparse(x.into_iter().filter(|(i, p)| *p != self.basepoint(*i)).collect())
    }
}

/// Restricted ℓ^q direct sum `⊕^{x₀}` on finitely supported points.
pub struct DirectSumSpace<S> {
    family: BasepointedFamily<S>,
    norm: NormSpec<S>,
}

pub fn direct_sum_space<S: Scalar>(family: BasepointedFamily<S>, exponent: Exponent) -> Result<DirectSumSpace<S>> {
    if let IndexSet::Finite(idx) = &family.indices {
        for &i in idx {
            let f = family.space(i);
            if f.norm().exponent != exponent {
                return Err(Error::InvalidSpec(format!("factor {i} has exponent {}", f.norm().exponent)));
            }
            if !f.contains(&family.basepoint(i)) {
                return Err(Error::domain(format!("basepoint of factor {i} is outside the factor")));
            }
        }
    }
    let fam = family.clone();
    let weights = factor_weights(move |i| fam.indices.contains(i).then(|| fam.space(i)));
    Ok(DirectSumSpace { family, norm: NormSpec::weighted(exponent, Arc::new(move |l: &LabelId| weights(l))) })
}

impl<S: Scalar> DirectSumSpace<S> {
    pub fn family(&self) -> &BasepointedFamily<S> {
        &self.family
    }

    /// The point with every coordinate at its basepoint.
    pub fn origin(&self) -> Point {
        Point::Sparse(BTreeMap::new())
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for DirectSumSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        let Ok(map) = p.as_sparse() else {
            return false;
        };
        map.iter().all(|(i, x)| {
            self.family.indices.contains(*i) && *x != self.family.basepoint(*i) && self.family.space(*i).contains(x)
        })
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        let (xm, ym) = (x.as_sparse()?, y.as_sparse()?);
        let support: BTreeSet<i64> = xm.keys().chain(ym.keys()).copied().collect();
        let mut out = SparseFunctional::new();
        for i in support {
            let f = self.family.space(i);
            if f.norm().exponent != self.norm.exponent {
                return Err(Error::InvalidSpec(format!("factor {i} has exponent {}", f.norm().exponent)));
            }
            let v = sep(f.as_ref(), &self.family.coordinate(xm, i), &self.family.coordinate(ym, i))?;
            out.add_assign_ref(&v.prefixed(&LabelComponent::Factor(i)));
        }
        Ok(out)
    }

    fn norm(&self) -> &NormSpec<S> {
        &self.norm
    }

    fn description(&self) -> String {
        format!("direct sum over {:?}", self.family.indices)
    }

    fn points(&self) -> Option<Vec<Point>> {
        let IndexSet::Finite(idx) = &self.family.indices else {
            return None;
        };
        let mut acc = vec![BTreeMap::new()];
        for &i in idx {
            let pts = self.family.space(i).points()?;
            if acc.len().saturating_mul(pts.len()) > MAX_LISTED_POINTS {
                return None;
            }
            let mut next = Vec::new();
            for m in &acc {
                for p in &pts {
                    let mut m2: BTreeMap<i64, Point> = m.clone();
                    m2.insert(i, p.clone());
                    next.push(m2);
                }
            }
            acc = next;
        }
        let mut out: Vec<Point> = acc.into_iter().map(|m| self.family.canonical(m)).collect();
        out.sort();
        Some(out)
    }
}

fn pull_tagged(l: &LabelId, pull: impl Fn(i64, &LabelId) -> Result<LabelId>) -> Result<LabelId> {
    match l.split_factor() {
        Some((i, rest)) => Ok(pull(i, &rest)?.prefixed(LabelComponent::Factor(i))),
        None => Err(Error::domain(format!("{l} carries no factor tag"))),
    }
}

/// Coordinatewise action of `∏ G_i` on a [`ProductSpace`].
pub struct ProductAction {
    group: Arc<ProductGroup>,
    actions: Vec<ActionRef>,
}

impl ProductAction {
    pub fn new(actions: Vec<ActionRef>) -> Self {
        let group = Arc::new(ProductGroup::new(actions.iter().map(|a| a.group()).collect()));
        ProductAction { group, actions }
    }
}

impl AutomorphismAction for ProductAction {
    fn group(&self) -> GroupRef {
        self.group.clone()
    }

    fn act(&self, g: &Point, x: &Point) -> Result<Point> {
        let k = self.actions.len();
        let (gs, xs) = (g.as_tuple(k)?, x.as_tuple(k)?);
        let items = self
            .actions
            .iter()
            .zip(gs.iter().zip(xs))
            .map(|(a, (g, x))| a.act(g, x))
            .collect::<Result<_>>()?;
        Ok(Point::Tuple(items))
    }

    fn has_label_map(&self) -> bool {
        self.actions.iter().all(|a| a.has_label_map())
    }

    fn pull_label(&self, g: &Point, l: &LabelId) -> Result<LabelId> {
        let gs = g.as_tuple(self.actions.len())?;
        pull_tagged(l, |i, rest| {
            let a = self.actions.get(i as usize).ok_or_else(|| Error::domain("factor tag out of range"))?;
            a.pull_label(&gs[i as usize], rest)
        })
    }
}

/// One group acting on every factor of a [`ProductSpace`] at once.
pub struct DiagonalAction {
    group: GroupRef,
    actions: Vec<ActionRef>,
}

impl DiagonalAction {
    pub fn new(group: GroupRef, actions: Vec<ActionRef>) -> Self {
        DiagonalAction { group, actions }
    }
}

impl AutomorphismAction for DiagonalAction {
    fn group(&self) -> GroupRef {
        self.group.clone()
    }

    fn act(&self, g: &Point, x: &Point) -> Result<Point> {
        let xs = x.as_tuple(self.actions.len())?;
        let items = self.actions.iter().zip(xs).map(|(a, x)| a.act(g, x)).collect::<Result<_>>()?;
        Ok(Point::Tuple(items))
    }

    fn has_label_map(&self) -> bool {
        self.actions.iter().all(|a| a.has_label_map())
    }

    fn pull_label(&self, g: &Point, l: &LabelId) -> Result<LabelId> {
        pull_tagged(l, |i, rest| {
            let a = self.actions.get(i as usize).ok_or_else(|| Error::domain("factor tag out of range"))?;
            a.pull_label(g, rest)
        })
    }
}

/// `⊕ G_i` acting coordinatewise on a [`DirectSumSpace`].
pub struct DirectSumAction<S> {
    group: Arc<DirectSumGroup>,
    family: BasepointedFamily<S>,
    action: Arc<dyn Fn(i64) -> ActionRef + Send + Sync>,
}

impl<S: Scalar> DirectSumAction<S> {
    pub fn new(group: Arc<DirectSumGroup>, family: BasepointedFamily<S>, action: Arc<dyn Fn(i64) -> ActionRef + Send + Sync>) -> Self {
        DirectSumAction { group, family, action }
    }
}

impl<S: Scalar> AutomorphismAction for DirectSumAction<S> {
    fn group(&self) -> GroupRef {
        self.group.clone()
    }

    fn act(&self, w: &Point, x: &Point) -> Result<Point> {
        let wm = self.group.coords(w)?;
        let mut out = x.as_sparse()?.clone();
        for (i, g) in wm {
            let xi = self.family.coordinate(&out, *i);
            out.insert(*i, (self.action)(*i).act(g, &xi)?);
        }
        Ok(self.family.canonical(out))
    }

    fn has_label_map(&self) -> bool {
        true
    }

    fn pull_label(&self, w: &Point, l: &LabelId) -> Result<LabelId> {
        let wm = self.group.coords(w)?;
        pull_tagged(l, |i, rest| {
            let g = wm.get(&i).cloned().unwrap_or_else(|| self.group.factor(i).identity());
            (self.action)(i).pull_label(&g, rest)
        })
    }
}
