use std::sync::Arc;

use rayon::prelude::*;

use super::tree::{BassSerreTree, TotalPoint, VertexId};
use crate::action::{ActionRef, AutomorphismAction};
use crate::checks::CheckReport;
use crate::constructions::naive::{naive_action, naive_translation, NaiveSpace};
use crate::constructions::product::{product_space, ProductSpace};
use crate::constructions::pullback::{pullback, PullbackSpace};
use crate::constructions::quotient::quotient_average;
use crate::error::{Error, Result};
use crate::groups::{ball_enumerate, AmalgamGroup, AmalgamWord, FiniteGroup, Group, GroupRef, Side};
use crate::label::{LabelComponent, LabelId, WallId};
use crate::norm::{q_energy, Energy, Exponent, NormSpec};
use crate::point::Point;
use crate::scalar::{pow, Scalar};
use crate::space::{energy, sep, LabelledPartitionSpace, SpaceRef};
use crate::sparse::SparseFunctional;
use crate::walls::{walls_to_labelled, MeasuredWalls, WallsRef};

/// A structure on `G/C` (or `H/C`), points `Index(r)` for the coset
/// representatives `r`, with the factor acting by left translation.
#[derive(Clone)]
pub struct CosetStructure<S> {
    pub space: SpaceRef<S>,
    pub action: ActionRef,
}

fn side_index(side: Side) -> usize {
    match side {
        Side::Left => 0,
        Side::Right => 1,
    }
}

/// Left translation of a factor on its `C`-cosets.
pub fn coset_translation(group: &Arc<AmalgamGroup>, side: Side) -> Arc<dyn Fn(&Point, &Point) -> Result<Point> + Send + Sync> {
    let grp = group.clone();
    Arc::new(move |g, x| {
        let f = grp.factor(side);
        let prod = f.mul(f.index_of(g)?, f.index_of(x)?);
        Ok(Point::Index(grp.cosets(side).rep(prod)))
    })
}

/// Naive structure on the coset space of one factor.
pub fn naive_cosets<S: Scalar>(group: &Arc<AmalgamGroup>, side: Side, exponent: Exponent) -> Result<CosetStructure<S>> {
    let reps: Vec<Point> = group.cosets(side).representatives().iter().map(|&r| Point::Index(r)).collect();
    let space: SpaceRef<S> = Arc::new(NaiveSpace::new(reps, exponent));
    let factor: GroupRef = Arc::new(group.factor(side).clone());
    let action: ActionRef = Arc::new(naive_action(factor, coset_translation(group, side)));
    Ok(CosetStructure { space, action })
}

/// `Σ_v Vertex(v)`-tagged `c_v(f_v π_v x, f_v π_v y)` over the path between
/// `ρ(x)` and `ρ(y)`; points are `Point::Total`.
pub struct VertexInducedSpace<S> {
    tree: BassSerreTree,
    sides: [CosetStructure<S>; 2],
    norm: NormSpec<S>,
}

pub fn vertex_induced_space<S: Scalar>(
    tree: BassSerreTree,
    left: CosetStructure<S>,
    right: CosetStructure<S>,
) -> Result<VertexInducedSpace<S>> {
    let exponent = left.space.norm().exponent;
    if right.space.norm().exponent != exponent {
        return Err(Error::InvalidSpec("factor structures use different exponents".into()));
    }
    for (side, s) in [(Side::Left, &left), (Side::Right, &right)] {
        for &r in tree.group().cosets(side).representatives() {
            if !s.space.contains(&Point::Index(r)) {
                return Err(Error::invalid(format!("coset representative #{r} is not a point of the {side:?} structure")));
            }
        }
    }
    let (lw, rw) = (left.space.clone(), right.space.clone());
    let weights = move |l: &LabelId| match l.head() {
        Some(LabelComponent::Vertex(v)) => match v.side {
            Side::Left => lw.norm().weight(&l.rest()),
            Side::Right => rw.norm().weight(&l.rest()),
        },
        _ => S::zero(),
    };
    Ok(VertexInducedSpace { tree, sides: [left, right], norm: NormSpec::weighted(exponent, Arc::new(weights)) })
}

impl<S: Scalar> VertexInducedSpace<S> {
    pub fn structure(&self, side: Side) -> &CosetStructure<S> {
        &self.sides[side_index(side)]
    }

    /// Per-vertex components `(v, c_v(f_v π_v x, f_v π_v y))`, zero ones skipped.
    pub fn components(&self, x: &TotalPoint, y: &TotalPoint) -> Result<Vec<(VertexId, SparseFunctional<S>)>> {
        let mut out = Vec::new();
        for v in self.tree.vertex_path(x.vertex(), y.vertex()) {
            let a = self.tree.local_coset(&self.tree.project(&v, x));
            let b = self.tree.local_coset(&self.tree.project(&v, y));
            if a != b {
                let s = self.structure(v.side).space.as_ref();
                out.push((v.clone(), sep(s, &Point::Index(a), &Point::Index(b))?));
            }
        }
        Ok(out)
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for VertexInducedSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        self.tree.total_point(p).is_ok()
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        let (x, y) = (self.tree.total_point(x)?, self.tree.total_point(y)?);
        let mut acc = SparseFunctional::new();
        for (v, c) in self.components(x, y)? {
            acc.add_assign_ref(&c.prefixed(&LabelComponent::Vertex(v)));
        }
        Ok(acc)
    }

    fn norm(&self) -> &NormSpec<S> {
        &self.norm
    }

    fn description(&self) -> String {
        "vertex-induced structure on the tree of coset spaces".into()
    }
}

/// Half-tree walls of the Bass–Serre tree on `Point::Vertex`: each edge
/// `γC` cuts the tree into the half containing its `G`-end and the half
/// containing its `H`-end, each of weight `1/2`.
pub struct TreeWalls {
    tree: BassSerreTree,
}

impl TreeWalls {
    pub fn new(tree: BassSerreTree) -> Self {
        TreeWalls { tree }
    }

    fn endpoint(edge: &AmalgamWord, side: Side) -> VertexId {
        VertexId::of_word(side, edge)
    }
}

impl<S: Scalar> MeasuredWalls<S> for TreeWalls {
    fn contains(&self, p: &Point) -> bool {
        self.tree.vertex_point(p).is_ok()
    }

    fn separating(&self, x: &Point, y: &Point) -> Result<Vec<WallId>> {
        let (v, w) = (self.tree.vertex_point(x)?, self.tree.vertex_point(y)?);
        let path = self.tree.vertex_path(v, w);
        let mut out = Vec::new();
        for pair in path.windows(2) {
            let edge = self.tree.edge(&pair[0], &pair[1])?;
            out.push(WallId::HalfTree { edge: edge.clone(), side: pair[0].side });
            out.push(WallId::HalfTree { edge, side: pair[1].side });
        }
        Ok(out)
    }

    fn weight(&self, h: &WallId) -> S {
        match h {
            WallId::HalfTree { edge, .. } if edge.tail == 0 && self.tree.group().is_reduced(edge) => S::ratio(1, 2),
            _ => S::zero(),
        }
    }

    fn holds(&self, h: &WallId, x: &Point) -> Result<bool> {
        let v = self.tree.vertex_point(x)?;
        let WallId::HalfTree { edge, side } = h else {
            return Err(Error::domain(format!("{h} is not a half-tree")));
        };
        let (near, far) = (Self::endpoint(edge, *side), Self::endpoint(edge, side.other()));
        let path = self.tree.vertex_path(v, &far);
        Ok(path.len() >= 2 && path[path.len() - 2] == near)
    }

    fn description(&self) -> String {
        "half-tree walls of the Bass-Serre tree".into()
    }
}

/// Which tree term the closed-form energy uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeTerm {
    /// `d_T(γG, G)`.
    Distance,
    /// `d_T(γG, G)^q`.
    DistancePowQ,
}

/// The structure on the total space of the tree of coset spaces and the
/// `G ∗_C H` action on it.
pub struct AmalgamSpace<S> {
    pub tree: BassSerreTree,
    pub vertex: Arc<VertexInducedSpace<S>>,
    pub tree_space: Arc<PullbackSpace<S>>,
    pub space: Arc<PullbackSpace<S>>,
    pub product: Arc<ProductSpace<S>>,
    pub action: Arc<AmalgamAction>,
}

/// Diagonal pull-back of (vertex-induced) × (tree-induced).
pub fn amalgam_space<S: Scalar>(tree: BassSerreTree, left: CosetStructure<S>, right: CosetStructure<S>) -> Result<AmalgamSpace<S>> {
    let exponent = left.space.norm().exponent;
    let actions = [left.action.clone(), right.action.clone()];
    for (side, a) in [(Side::Left, &actions[0]), (Side::Right, &actions[1])] {
        if !a.has_label_map() {
            return Err(Error::invalid(format!("{side:?} coset action has no label map")));
        }
    }
    let vertex = Arc::new(vertex_induced_space(tree.clone(), left, right)?);
    let walls: WallsRef<S> = Arc::new(TreeWalls::new(tree.clone()));
    let on_vertices: SpaceRef<S> = Arc::new(walls_to_labelled(walls, exponent));
    let t = tree.clone();
    let in_total = move |p: &Point| t.total_point(p).is_ok();
    let t = tree.clone();
    let rho = move |p: &Point| Ok(Point::Vertex(t.total_point(p)?.vertex().clone()));
    let tree_space = Arc::new(pullback(on_vertices, Arc::new(rho), Arc::new(in_total.clone()), "rho"));
    let product = Arc::new(product_space(vec![vertex.clone() as SpaceRef<S>, tree_space.clone() as SpaceRef<S>])?);
    let diagonal = |p: &Point| Ok(Point::pair(p.clone(), p.clone()));
    let space = Arc::new(pullback(product.clone() as SpaceRef<S>, Arc::new(diagonal), Arc::new(in_total), "diagonal"));
    let action = Arc::new(AmalgamAction { tree: tree.clone(), sides: actions });
    Ok(AmalgamSpace { tree, vertex, tree_space, space, product, action })
}

/// Composes [`quotient_average`] on each factor with [`amalgam_space`]:
/// `left`, `right` are structures on the factor groups with their left
/// translation actions.
pub fn proper_amalgam_from_factors<S: Scalar>(
    group: Arc<AmalgamGroup>,
    left: CosetStructure<S>,
    right: CosetStructure<S>,
) -> Result<AmalgamSpace<S>> {
    let mut sides = Vec::new();
    for (side, s) in [(Side::Left, left), (Side::Right, right)] {
        let factor: Arc<FiniteGroup> = Arc::new(group.factor(side).clone());
        let common: Vec<Point> = group.common_images(side).iter().map(|&c| Point::Index(c)).collect();
        let q = Arc::new(quotient_average(s.space, factor.clone() as GroupRef, common)?);
        for &r in group.cosets(side).representatives() {
            if q.canonical(&Point::Index(r))? != Point::Index(r) {
                return Err(Error::invalid(format!("coset representative #{r} is not canonical in the quotient")));
            }
        }
        let action = q.action(s.action);
        sides.push(CosetStructure { space: q as SpaceRef<S>, action });
    }
    let right = sides.pop().expect("two sides");
    let left = sides.pop().expect("two sides");
    amalgam_space(BassSerreTree::new(group), left, right)
}

/// Naive structures on both factors, left translation.
pub fn naive_factors<S: Scalar>(group: &AmalgamGroup, exponent: Exponent) -> Result<[CosetStructure<S>; 2]> {
    let make = |side: Side| -> Result<CosetStructure<S>> {
        let g: GroupRef = Arc::new(group.factor(side).clone());
        Ok(CosetStructure {
            space: Arc::new(NaiveSpace::on_group(g.clone(), S::one(), exponent)?),
            action: Arc::new(naive_translation(g)),
        })
    };
    Ok([make(Side::Left)?, make(Side::Right)?])
}

/// `γ·(v, δC) = (γv, γδC)` with the induced label bijection.
pub struct AmalgamAction {
    tree: BassSerreTree,
    sides: [ActionRef; 2],
}

impl AmalgamAction {
    pub fn tree(&self) -> &BassSerreTree {
        &self.tree
    }
}

impl AutomorphismAction for AmalgamAction {
    fn group(&self) -> GroupRef {
        self.tree.group().clone()
    }

    fn act(&self, g: &Point, x: &Point) -> Result<Point> {
        let gamma = self.tree.group().word_of(g)?;
        Ok(Point::Total(self.tree.act_point(gamma, self.tree.total_point(x)?)))
    }

    fn has_label_map(&self) -> bool {
        true
    }

    fn pull_label(&self, g: &Point, l: &LabelId) -> Result<LabelId> {
        let grp = self.tree.group();
        let gamma = grp.word_of(g)?;
        let inv = grp.inverse(gamma);
        let bad = || Error::domain(format!("{l} is not a label of the amalgam structure"));
        let (k, rest) = l.split_factor().ok_or_else(bad)?;
        let pulled = match (k, rest.head()) {
            (0, Some(LabelComponent::Vertex(v))) => {
                let u = self.tree.act_vertex(&inv, v);
                let elem = self.tree.local_element(gamma, &u, v)?;
                let p = self.sides[side_index(v.side)].pull_label(&Point::Index(elem), &rest.rest())?;
                p.prefixed(LabelComponent::Vertex(u))
            }
            (1, Some(LabelComponent::Wall(WallId::HalfTree { edge, side }))) => {
                let moved = grp.multiply(&inv, edge).coset_rep();
                LabelId::wall(WallId::HalfTree { edge: moved, side: *side })
            }
            _ => return Err(bad()),
        };
        Ok(pulled.prefixed(LabelComponent::Factor(k)))
    }
}

impl<S: Scalar> AmalgamSpace<S> {
    pub fn group(&self) -> &Arc<AmalgamGroup> {
        self.tree.group()
    }

    /// The point `C ∈ X_G`.
    pub fn basepoint(&self) -> Point {
        Point::Total(TotalPoint::base())
    }

    /// `γ·C`.
    pub fn orbit_point(&self, gamma: &AmalgamWord) -> Point {
        Point::Total(self.tree.act_point(gamma, &TotalPoint::base()))
    }

    /// `‖c(γC, C)‖^q` through the separation oracle.
    pub fn oracle_energy(&self, gamma: &AmalgamWord) -> Result<Energy<S>> {
        energy(self.space.as_ref(), &self.orbit_point(gamma), &self.basepoint())
    }

    /// `Σ_v ‖c_v(f_v π_v γC, f_v π_v C)‖^q + d_T(γG, G)`, summed vertex by
    /// vertex along the path.
    pub fn projection_energy(&self, gamma: &AmalgamWord) -> Result<S> {
        let x = self.tree.act_point(gamma, &TotalPoint::base());
        let y = TotalPoint::base();
        let mut total = S::from_int(self.tree.distance(x.vertex(), y.vertex()) as i64);
        for (v, c) in self.vertex.components(&x, &y)? {
            total = total + exact(q_energy(self.vertex.structure(v.side).space.norm(), &c)?)?;
        }
        Ok(total)
    }

    /// `Σ_k (‖c_G(g_kC, C)‖^q + ‖c_H(h_kC, C)‖^q)` plus the tree term, for
    /// `γ = g₁h₁⋯g_nh_n·c`.
    pub fn energy_formula(&self, gamma: &AmalgamWord, term: TreeTerm) -> Result<S> {
        let grp = self.group();
        let mut total = S::zero();
        let [left, right] = [&self.vertex.structure(Side::Left).space, &self.vertex.structure(Side::Right).space];
        let (eg, eh) = (grp.factor(Side::Left).identity_index(), grp.factor(Side::Right).identity_index());
        for (g, h) in grp.syllable_pairs(gamma) {
            total = total + exact(energy(left.as_ref(), &Point::Index(g), &Point::Index(eg))?)?;
            total = total + exact(energy(right.as_ref(), &Point::Index(h), &Point::Index(eh))?)?;
        }
        let d = self.tree.depth(&VertexId::of_word(Side::Left, gamma)) as i64;
        let tree = match term {
            TreeTerm::Distance => S::from_int(d),
            TreeTerm::DistancePowQ => {
                let q = self.exponent().as_integer().ok_or_else(|| Error::InvalidSpec("closed form needs an integer exponent".into()))?;
                pow(&S::from_int(d), q)
            }
        };
        Ok(total + tree)
    }

    pub fn exponent(&self) -> Exponent {
        self.space.norm().exponent
    }

    /// Formula against oracle on every `γ` of the ball of radius `radius`
    /// (default generators), plus the lower bound `energy ≥ 2n − 2`.
    /// Elements are evaluated in parallel; the report lists failures in ball
    /// order.
    pub fn formula_report(&self, radius: usize, term: TreeTerm) -> Result<CheckReport> {
        let grp = self.group();
        let ball = ball_enumerate(grp.as_ref(), radius, &grp.generators())?;
        let outcomes: Vec<Result<Option<(String, String)>>> = ball
            .par_iter()
            .map(|(g, _)| {
                let gamma = grp.word_of(g)?;
                let oracle = exact(self.oracle_energy(gamma)?)?;
                let formula = self.energy_formula(gamma, term)?;
                if oracle != formula {
                    return Ok(Some((format!("formula {}", formula.to_exact_string()), format!("oracle {}", oracle.to_exact_string()))));
                }
                let n = grp.syllable_pairs(gamma).len() as i64;
                if oracle < S::from_int(2 * n - 2) {
                    return Ok(Some((format!(">= {}", 2 * n - 2), oracle.to_exact_string())));
                }
                Ok(None)
            })
            .collect();
        let name = match term {
            TreeTerm::Distance => "amalgam formula (tree term d_T)",
            TreeTerm::DistancePowQ => "amalgam formula (tree term d_T^q)",
        };
        let mut report = CheckReport::new(name);
        for ((g, _), outcome) in ball.iter().zip(outcomes) {
            report.record(&[g], outcome);
        }
        Ok(report)
    }

    /// `{v : π_v(x) ≠ π_v(y)} ⊆ vertexPath(ρ(x), ρ(y))`, tested on the
    /// vertices of `probe`.
    pub fn support_bound_report(&self, pairs: &[(Point, Point)], probe: &[VertexId]) -> Result<CheckReport> {
        let mut report = CheckReport::new("projection support bound");
        for (x, y) in pairs {
            let (px, py) = (self.tree.total_point(x)?, self.tree.total_point(y)?);
            let path = self.tree.vertex_path(px.vertex(), py.vertex());
            let stray = probe
                .iter()
                .find(|v| !path.contains(v) && self.tree.project(v, px) != self.tree.project(v, py));
            match stray {
                Some(v) => report.fail(&[x, y], "support on the path", format!("{}", Point::Vertex(v.clone()))),
                None => report.pass(),
            }
        }
        Ok(report)
    }

    /// `γ·π_v(x) = π_{γv}(γx)`, `ρ(γx) = γρ(x)` and
    /// `f_{γv}(γx) = k·f_v(x)` with `k = r_{γv}⁻¹γr_v`, on samples `(γ, v, x)`.
    pub fn tree_action_report(&self, samples: &[(AmalgamWord, VertexId, TotalPoint)]) -> Result<CheckReport> {
        let mut report = CheckReport::new("tree of coset spaces automorphism");
        for (gamma, v, x) in samples {
            let gv = self.tree.act_vertex(gamma, v);
            let gx = self.tree.act_point(gamma, x);
            let lhs = self.tree.act_point(gamma, &self.tree.project(v, x));
            let rhs = self.tree.project(&gv, &gx);
            let inputs = [Point::Word(gamma.clone()), Point::Vertex(v.clone()), Point::Total(x.clone())];
            let refs: Vec<&Point> = inputs.iter().collect();
            if lhs != rhs {
                report.fail(&refs, Point::Total(rhs), Point::Total(lhs));
                continue;
            }
            if gx.vertex() != &self.tree.act_vertex(gamma, x.vertex()) {
                report.fail(&refs, "rho equivariant", Point::Vertex(gx.vertex().clone()));
                continue;
            }
            let k = self.tree.local_element(gamma, x.vertex(), gx.vertex())?;
            let side = x.side();
            let f = self.group().factor(side);
            let expected = self.group().cosets(side).rep(f.mul(k, self.tree.local_coset(x)));
            let actual = self.tree.local_coset(&gx);
            if expected != actual {
                report.fail(&refs, format!("#{expected}"), format!("#{actual}"));
            } else {
                report.pass();
            }
        }
        Ok(report)
    }
}

fn exact<S: Scalar>(e: Energy<S>) -> Result<S> {
    match e {
        Energy::Exact(x) => Ok(x),
        Energy::Approx(_) => Err(Error::InvalidSpec("closed form needs an integer exponent".into())),
    }
}
