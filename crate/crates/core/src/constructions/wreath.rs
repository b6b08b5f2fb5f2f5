use std::collections::BTreeSet;
use std::sync::Arc;

use super::naive::{naive_translation, NaiveSpace};
use super::product::{direct_sum_space, product_space, BasepointedFamily, ProductSpace};
use crate::action::{ActionRef, AutomorphismAction, FnAction};
use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::groups::{ball_enumerate, DirectSumGroup, FiniteGroup, Group, GroupRef, IndexSet, IntegerLattice, SemidirectGroup};
use crate::label::{LabelComponent, LabelId, WallId};
use crate::norm::{q_energy, Energy, Exponent};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::{energy, sep, LabelledPartitionSpace, SpaceRef};
use crate::walls::{wall_distance, walls_to_labelled, MeasuredWalls, WallsRef};

/// `G` acting on the index set `I` by translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexShift {
    /// `G = I = ℤ`.
    Integers,
    /// `G = I = ℤ/m`.
    Cyclic(usize),
}

impl IndexShift {
    pub fn group(&self) -> GroupRef {
        match *self {
            IndexShift::Integers => Arc::new(IntegerLattice::new(1).expect("dimension 1")),
            IndexShift::Cyclic(m) => Arc::new(FiniteGroup::cyclic(m)),
        }
    }

    pub fn indices(&self) -> IndexSet {
        match *self {
            IndexShift::Integers => IndexSet::Integers,
            IndexShift::Cyclic(m) => IndexSet::Finite((0..m as i64).collect()),
        }
    }

    fn amount(&self, g: &Point) -> Result<i64> {
        match self {
            IndexShift::Integers => g.as_int(),
            IndexShift::Cyclic(_) => Ok(g.as_index()? as i64),
        }
    }

    /// `g·i`.
    pub fn act(&self, g: &Point, i: i64) -> Result<i64> {
        let t = self.amount(g)?;
        Ok(match *self {
            IndexShift::Integers => i + t,
            IndexShift::Cyclic(m) => (i + t).rem_euclid(m as i64),
        })
    }

    /// `g⁻¹·i`.
    pub fn act_inv(&self, g: &Point, i: i64) -> Result<i64> {
        let t = self.amount(g)?;
        Ok(match *self {
            IndexShift::Integers => i - t,
            IndexShift::Cyclic(m) => (i - t).rem_euclid(m as i64),
        })
    }

    /// `(ρ(g)w)_j = w_{g⁻¹j}`.
    pub fn shift_point(&self, g: &Point, w: &Point) -> Result<Point> {
        let mut out = std::collections::BTreeMap::new();
        for (i, x) in w.as_sparse()? {
            out.insert(self.act(g, *i)?, x.clone());
        }
        Ok(Point::Sparse(out))
    }
}

/// `(⊕_I H) ⋊ G` with `G` shifting coordinates.
pub fn wreath_group(h: GroupRef, shift: IndexShift, window: i64) -> (Arc<DirectSumGroup>, Arc<SemidirectGroup>) {
    let lamps = Arc::new(DirectSumGroup::uniform(h, shift.indices(), window));
    let group = Arc::new(SemidirectGroup::new(
        lamps.clone(),
        shift.group(),
        Arc::new(move |g, w| shift.shift_point(g, w)),
    ));
    (lamps, group)
}

/// Toy walls on `W × I`: `{w_j = h}` and `{i = k}`, each of weight `1/2`,
/// so `d_μ((w,i),(w′,i′)) = #{j : w_j ≠ w′_j} + [i ≠ i′]`.
pub struct LampWalls {
    lamps: Arc<DirectSumGroup>,
    shift: IndexShift,
}

impl LampWalls {
    pub fn new(lamps: Arc<DirectSumGroup>, shift: IndexShift) -> Self {
        LampWalls { lamps, shift }
    }

    fn split<'a>(&self, p: &'a Point) -> Result<(&'a Point, i64)> {
        let t = p.as_tuple(2)?;
        let i = t[1].as_int()?;
        if !self.shift.indices().contains(i) || !self.lamps.contains(&t[0]) {
            return Err(Error::domain(format!("{p} is not a point of W x I")));
        }
        Ok((&t[0], i))
    }

    fn lamp(&self, w: &Point, j: i64) -> Result<Point> {
        Ok(w.as_sparse()?.get(&j).cloned().unwrap_or_else(|| self.lamps.factor(j).identity()))
    }

    /// `W ⋊ G` acting on `W × I`, with the induced wall relabelling.
    pub fn action(self: &Arc<Self>, group: Arc<SemidirectGroup>) -> ActionRef {
        let grp = group.clone();
        let walls = self.clone();
        let shift = self.shift;
        Arc::new(FnAction::new(
            group,
            Arc::new(move |g, x| {
                let (w1, i) = walls.split(x)?;
                let (_, gi) = grp.split(g)?;
                let moved = grp.op(g, &Point::pair(w1.clone(), grp.acting().identity()))?;
                let (w, _) = grp.split(&moved)?;
                Ok(Point::pair(w.clone(), Point::Int(shift.act(gi, i)?)))
            }),
            Some({
                let walls = self.clone();
                let grp = self.clone();
                Arc::new(move |g, l| {
                    let t = g.as_tuple(2)?;
                    let (w, gi) = (&t[0], &t[1]);
                    let h = match l.0.as_slice() {
                        [LabelComponent::Wall(WallId::LampState { index, value })] => {
                            let wj = walls.lamp(w, *index)?;
                            let hj = grp.lamps.factor(*index);
                            WallId::LampState { index: shift.act_inv(gi, *index)?, value: hj.op(&hj.inv(&wj)?, value)? }
                        }
                        [LabelComponent::Wall(WallId::Position(k))] => WallId::Position(shift.act_inv(gi, *k)?),
                        _ => return Err(Error::domain(format!("{l} is not a lamp wall"))),
                    };
                    Ok(LabelId::wall(h))
                })
            }),
        ))
    }
}

impl<S: Scalar> MeasuredWalls<S> for LampWalls {
    fn contains(&self, p: &Point) -> bool {
        self.split(p).is_ok()
    }

    fn separating(&self, x: &Point, y: &Point) -> Result<Vec<WallId>> {
        let ((w, i), (v, k)) = (self.split(x)?, self.split(y)?);
        let support: BTreeSet<i64> = w.as_sparse()?.keys().chain(v.as_sparse()?.keys()).copied().collect();
        let mut out = Vec::new();
        for j in support {
            let (a, b) = (self.lamp(w, j)?, self.lamp(v, j)?);
            if a != b {
                out.push(WallId::LampState { index: j, value: a });
                out.push(WallId::LampState { index: j, value: b });
            }
        }
        if i != k {
            out.push(WallId::Position(i));
            out.push(WallId::Position(k));
        }
        Ok(out)
    }

    fn weight(&self, h: &WallId) -> S {
        let idx = self.shift.indices();
        let valid = match h {
            WallId::LampState { index, value } => idx.contains(*index) && self.lamps.factor(*index).contains(value),
            WallId::Position(k) => idx.contains(*k),
            _ => false,
        };
        if valid {
            S::ratio(1, 2)
        } else {
            S::zero()
        }
    }

    fn holds(&self, h: &WallId, x: &Point) -> Result<bool> {
        let (w, i) = self.split(x)?;
        match h {
            WallId::LampState { index, value } => Ok(self.lamp(w, *index)? == *value),
            WallId::Position(k) => Ok(i == *k),
            other => Err(Error::domain(format!("{other} is not a lamp wall"))),
        }
    }

    fn description(&self) -> String {
        "lamp walls".into()
    }
}

/// The glued space on `(W × I) × W` and the `W ⋊ G` action on it.
pub struct WreathGlue<S> {
    pub space: Arc<ProductSpace<S>>,
    pub action: Arc<WreathAction>,
    pub group: Arc<SemidirectGroup>,
    pub lamps: Arc<DirectSumGroup>,
    pub walls: WallsRef<S>,
    pub factor: SpaceRef<S>,
    pub base_index: i64,
}

pub struct WreathAction {
    group: Arc<SemidirectGroup>,
    walls_action: ActionRef,
    factor_action: ActionRef,
    lamps: Arc<DirectSumGroup>,
    shift: IndexShift,
}

/// Product of the walls structure on `W × I` (factor 0) with `⊕_I` of the
/// factor structure on `H` (factor 1).
#[allow(clippy::too_many_arguments)]
pub fn wreath_glue<S: Scalar>(
    walls: WallsRef<S>,
    walls_action: ActionRef,
    factor: SpaceRef<S>,
    factor_action: ActionRef,
    lamps: Arc<DirectSumGroup>,
    group: Arc<SemidirectGroup>,
    shift: IndexShift,
    exponent: Exponent,
    base_index: i64,
) -> Result<WreathGlue<S>> {
    if !shift.indices().contains(base_index) {
        return Err(Error::invalid(format!("base index {base_index} is outside I")));
    }
    let h = factor_action.group();
    let family = BasepointedFamily::uniform(factor.clone(), h.identity(), shift.indices())?;
    let walls_space: SpaceRef<S> = Arc::new(walls_to_labelled(walls.clone(), exponent));
    let sum: SpaceRef<S> = Arc::new(direct_sum_space(family, exponent)?);
    let space = Arc::new(product_space(vec![walls_space, sum])?);
    let action = Arc::new(WreathAction { group: group.clone(), walls_action, factor_action, lamps: lamps.clone(), shift });
    Ok(WreathGlue { space, action, group, lamps, walls, factor, base_index })
}

/// Lamplighter-type gluing `H ≀_I G` with [`LampWalls`] and naive factors.
pub fn lamplighter<S: Scalar>(h: Arc<FiniteGroup>, shift: IndexShift, exponent: Exponent, window: i64) -> Result<WreathGlue<S>> {
    let hg: GroupRef = h.clone();
    let (lamps, group) = wreath_group(hg.clone(), shift, window);
    let lw = Arc::new(LampWalls::new(lamps.clone(), shift));
    let walls_action = lw.action(group.clone());
    let walls: WallsRef<S> = lw;
    let factor: SpaceRef<S> = Arc::new(NaiveSpace::on_group(hg.clone(), S::one(), exponent)?);
    let factor_action: ActionRef = Arc::new(naive_translation(hg));
    wreath_glue(walls, walls_action, factor, factor_action, lamps, group, shift, exponent, 0)
}

impl<S: Scalar> WreathGlue<S> {
    /// `x₀ = ((e, i₀), e)`.
    pub fn basepoint(&self) -> Point {
        let e = self.lamps.identity();
        Point::pair(Point::pair(e.clone(), Point::Int(self.base_index)), e)
    }

    /// The element `(w, e_G)`.
    pub fn lamp_element(&self, w: Point) -> Point {
        Point::pair(w, self.group.acting().identity())
    }

    /// `d_μ((w, i₀), (e, i₀)) + Σ_{i∈supp w} ‖c_H(h_i, e)‖^q`.
    pub fn energy_formula(&self, w: &Point) -> Result<S> {
        let i0 = Point::Int(self.base_index);
        let e = self.lamps.identity();
        let mut total = wall_distance(self.walls.as_ref(), &Point::pair(w.clone(), i0.clone()), &Point::pair(e, i0))?;
        for hi in self.lamps.coords(w)?.values() {
            let eh = self.factor_identity();
            match energy(self.factor.as_ref(), hi, &eh)? {
                Energy::Exact(x) => total = total + x,
                Energy::Approx(_) => return Err(Error::InvalidSpec("closed form needs an integer exponent".into())),
            }
        }
        Ok(total)
    }

    fn factor_identity(&self) -> Point {
        self.action.factor_action.group().identity()
    }

    /// Empirical `J_R` sets: for each `R ≤ r_max`, the union of `supp(w)` over
    /// `(w, g)` in the ball of radius `radius` with `d_μ((w,g)x₀, x₀) ≤ R`.
    /// The check passes when every `J_R` is unchanged by growing the ball by one.
    pub fn j_r_report(&self, radius: usize, r_max: i64) -> Result<CheckReport> {
        let mut report = CheckReport::new("wreath J_R stability");
        let small = self.j_r_sets(radius, r_max)?;
        let large = self.j_r_sets(radius + 1, r_max)?;
        for (r, (a, b)) in small.iter().zip(&large).enumerate() {
            let rp = Point::Int(r as i64);
            if a == b {
                report.pass();
            } else {
                report.fail(&[&rp], format!("{a:?}"), format!("{b:?}"));
            }
        }
        Ok(report)
    }

    fn j_r_sets(&self, radius: usize, r_max: i64) -> Result<Vec<BTreeSet<i64>>> {
        let x0 = Point::pair(self.lamps.identity(), Point::Int(self.base_index));
        let mut sets = vec![BTreeSet::new(); (r_max + 1).max(0) as usize];
        for (g, _) in ball_enumerate(self.group.as_ref(), radius, &self.group.generators())? {
            let moved = self.action.walls_action.act(&g, &x0)?;
            let d = wall_distance(self.walls.as_ref(), &moved, &x0)?;
            let (w, _) = self.group.split(&g)?;
            for (r, set) in sets.iter_mut().enumerate() {
                if d <= S::from_int(r as i64) {
                    set.extend(w.as_sparse()?.keys().copied());
                }
            }
        }
        Ok(sets)
    }

    /// `‖c(τ_W(w)x₀, x₀)‖^q` computed through the oracle.
    pub fn orbit_energy(&self, w: &Point) -> Result<Energy<S>> {
        let x0 = self.basepoint();
        let moved = self.action.act(&self.lamp_element(w.clone()), &x0)?;
        q_energy(self.space.norm(), &sep(self.space.as_ref(), &moved, &x0)?)
    }
}

impl WreathAction {
    /// The `W`-action `τ_W` as a stand-alone action.
    pub fn lamp_action(self: &Arc<Self>) -> ActionRef {
        Arc::new(Restricted { inner: self.clone(), normal: true })
    }

    /// The `G`-action `τ_G`.
    pub fn shift_action(self: &Arc<Self>) -> ActionRef {
        Arc::new(Restricted { inner: self.clone(), normal: false })
    }

    fn lift(&self, g: &Point, normal: bool) -> Point {
        if normal {
            Point::pair(g.clone(), self.group.acting().identity())
        } else {
            Point::pair(self.group.normal().identity(), g.clone())
        }
    }
}

impl AutomorphismAction for WreathAction {
    fn group(&self) -> GroupRef {
        self.group.clone()
    }

    fn act(&self, g: &Point, x: &Point) -> Result<Point> {
        let (w, gi) = self.group.split(g)?;
        let parts = x.as_tuple(2)?;
        let first = self.walls_action.act(g, &parts[0])?;
        let shifted = self.group.rho(gi, &parts[1])?;
        let second = self.lamps.op(w, &shifted)?;
        Ok(Point::pair(first, second))
    }

    fn has_label_map(&self) -> bool {
        self.walls_action.has_label_map() && self.factor_action.has_label_map()
    }

    fn pull_label(&self, g: &Point, l: &LabelId) -> Result<LabelId> {
        let (w, gi) = self.group.split(g)?;
        match l.split_factor() {
            Some((0, rest)) => Ok(self.walls_action.pull_label(g, &rest)?.prefixed(LabelComponent::Factor(0))),
            Some((1, rest)) => {
                let (j, p) = rest
                    .split_factor()
                    .ok_or_else(|| Error::domain(format!("{l} lacks a coordinate tag")))?;
                let wj = w.as_sparse()?.get(&j).cloned().unwrap_or_else(|| self.lamps.factor(j).identity());
                let pulled = self.factor_action.pull_label(&wj, &p)?;
                Ok(pulled
                    .prefixed(LabelComponent::Factor(self.shift.act_inv(gi, j)?))
                    .prefixed(LabelComponent::Factor(1)))
            }
            _ => Err(Error::domain(format!("{l} is not a label of the glued space"))),
        }
    }
}

struct Restricted {
    inner: Arc<WreathAction>,
    normal: bool,
}

impl AutomorphismAction for Restricted {
    fn group(&self) -> GroupRef {
        if self.normal {
            self.inner.group.normal().clone()
        } else {
            self.inner.group.acting().clone()
        }
    }

    fn act(&self, g: &Point, x: &Point) -> Result<Point> {
        self.inner.act(&self.inner.lift(g, self.normal), x)
    }

    fn has_label_map(&self) -> bool {
        self.inner.has_label_map()
    }

    fn pull_label(&self, g: &Point, l: &LabelId) -> Result<LabelId> {
        self.inner.pull_label(&self.inner.lift(g, self.normal), l)
    }
}
