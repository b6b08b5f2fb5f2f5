use std::sync::Arc;

use super::naive::{naive_translation, NaiveSpace};
use super::product::{direct_sum_space, product_space, BasepointedFamily, DiagonalAction, DirectSumAction, DirectSumSpace, ProductSpace};
use crate::action::ActionRef;
use crate::error::{Error, Result};
use crate::groups::{DirectSumGroup, GroupRef, IndexSet};
use crate::norm::{Energy, Exponent};
use crate::point::Point;
use crate::scalar::{pow, Scalar};
use crate::space::{energy, LabelledPartitionSpace, SpaceRef};

/// Index weight `φ : I → ℚ_{≥0}` of the weighted naive direct sum.
#[derive(Clone)]
pub enum IndexWeight<S> {
    /// `1 + rank(i)` in the enumeration of the index set.
    EnumerationRank,
    /// `1 + |i|`.
    OnePlusAbs,
    Constant(S),
    Custom(Arc<dyn Fn(i64) -> S + Send + Sync>),
}

impl<S: Scalar> IndexWeight<S> {
    pub fn eval(&self, indices: &IndexSet, i: i64) -> S {
        match self {
            IndexWeight::EnumerationRank => S::from_int(1 + indices.rank(i).unwrap_or(0) as i64),
            IndexWeight::OnePlusAbs => S::from_int(1 + i.abs()),
            IndexWeight::Constant(c) => c.clone(),
            IndexWeight::Custom(f) => f(i),
        }
    }

    /// A warning when `φ` cannot tend to infinity on an infinite index set.
    pub fn warning(&self, indices: &IndexSet) -> Option<String> {
        if indices.is_finite() {
            return None;
        }
        match self {
            IndexWeight::Constant(_) => Some("constant index weight on an infinite index set: the action need not be proper".into()),
            IndexWeight::Custom(_) => {
                let probe = indices.first(256);
                let early = probe[..16].iter().map(|&i| self.eval(indices, i)).fold(S::zero(), S::max_of);
                let late = probe[128..].iter().map(|&i| self.eval(indices, i)).fold(S::zero(), S::max_of);
                (late <= early).then(|| "index weight does not grow along the enumeration: properness not guaranteed".into())
            }
            _ => None,
        }
    }
}

/// Factor data for [`proper_sum_space`]: a group acting on a space, with
/// the basepoint of that factor.
#[derive(Clone)]
pub struct ProperFactor<S> {
    pub space: SpaceRef<S>,
    pub action: ActionRef,
    pub basepoint: Point,
}

pub struct ProperSum<S> {
    pub space: Arc<ProductSpace<S>>,
    pub action: Arc<DiagonalAction>,
    pub group: Arc<DirectSumGroup>,
    /// `⊕ X_i` (factor 0 of the product).
    pub spaces: Arc<DirectSumSpace<S>>,
    /// `⊕ φ(i)`-weighted naive structures on the `H_i` (factor 1).
    pub weighted: Arc<DirectSumSpace<S>>,
    pub phi: IndexWeight<S>,
    pub warnings: Vec<String>,
}

/// `Y = X × W` with `X = ⊕ X_i` and `W = ⊕ H_i` carrying the φ-weighted
/// naive sum, and `W` acting diagonally.
pub fn proper_sum_space<S: Scalar>(
    indices: IndexSet,
    factor: Arc<dyn Fn(i64) -> ProperFactor<S> + Send + Sync>,
    phi: IndexWeight<S>,
    exponent: Exponent,
    window: Vec<i64>,
) -> Result<ProperSum<S>> {
    let mut warnings = Vec::new();
    warnings.extend(phi.warning(&indices));
    let f1 = factor.clone();
    let f2 = factor.clone();
    let family = BasepointedFamily {
        indices: indices.clone(),
        factor: Arc::new(move |i| f1(i).space),
        basepoint: Arc::new(move |i| f2(i).basepoint),
    };
    let f3 = factor.clone();
    let group_of = Arc::new(move |i: i64| f3(i).action.group());
    let g_of = group_of.clone();
    let group = Arc::new(DirectSumGroup::family(
        Arc::new(move |i| g_of(i)),
        indices.clone(),
        window,
        "W".into(),
    ));
    let spaces = Arc::new(direct_sum_space(family.clone(), exponent)?);

    let phi2 = phi.clone();
    let idx2 = indices.clone();
    let go = group_of.clone();
    let naive_family = BasepointedFamily {
        indices: indices.clone(),
        factor: Arc::new(move |i| -> SpaceRef<S> {
            let w = phi2.eval(&idx2, i);
            Arc::new(NaiveSpace::on_group(go(i), w, exponent).expect("index weights are nonnegative"))
        }),
        basepoint: {
            let go = group_of.clone();
            Arc::new(move |i| go(i).identity())
        },
    };
    if let IndexSet::Finite(idx) = &indices {
        if let Some(&i) = idx.iter().find(|&&i| phi.eval(&indices, i).is_negative()) {
            return Err(Error::InvalidSpec(format!("negative index weight at {i}")));
        }
    }
    let weighted = Arc::new(direct_sum_space(naive_family.clone(), exponent)?);

    let f4 = factor.clone();
    let x_action: ActionRef = Arc::new(DirectSumAction::new(group.clone(), family, Arc::new(move |i| f4(i).action)));
    let go = group_of.clone();
    let w_action: ActionRef = Arc::new(DirectSumAction::new(
        group.clone(),
        naive_family,
        Arc::new(move |i| -> ActionRef { Arc::new(naive_translation(go(i))) }),
    ));
    let space = Arc::new(product_space(vec![spaces.clone() as SpaceRef<S>, weighted.clone() as SpaceRef<S>])?);
    let action = Arc::new(DiagonalAction::new(group.clone(), vec![x_action, w_action]));
    Ok(ProperSum { space, action, group, spaces, weighted, phi, warnings })
}

impl<S: Scalar> ProperSum<S> {
    /// `y₀ = (x⁰, e_W)`.
    pub fn basepoint(&self) -> Point {
        Point::pair(self.spaces.origin(), self.weighted.origin())
    }

    /// `Σ_{i∈supp(w)} (‖c_i(h_i x_i⁰, x_i⁰)‖^q + φ(i)^q)` for integer `q`,
    /// evaluated factor by factor.
    pub fn energy_formula(&self, w: &Point, factor: &dyn Fn(i64) -> ProperFactor<S>) -> Result<S> {
        let q = self
            .space
            .norm()
            .exponent
            .as_integer()
            .ok_or_else(|| Error::InvalidSpec("closed form needs an integer exponent".into()))?;
        let mut total = S::zero();
        for (i, h) in self.group.coords(w)? {
            let f = factor(*i);
            let moved = f.action.act(h, &f.basepoint)?;
            let e = match energy(f.space.as_ref(), &moved, &f.basepoint)? {
                Energy::Exact(x) => x,
                Energy::Approx(_) => return Err(Error::InvalidSpec("inexact factor energy".into())),
            };
            total = total + e + pow(&self.phi.eval(self.group.indices(), *i), q);
        }
        Ok(total)
    }
}

/// Uniform factor data: one group acting on one space at every index.
pub fn uniform_factor<S: Scalar>(space: SpaceRef<S>, action: ActionRef, basepoint: Point) -> Arc<dyn Fn(i64) -> ProperFactor<S> + Send + Sync> {
    let f = ProperFactor { space, action, basepoint };
    Arc::new(move |_| f.clone())
}

/// Naive factor spaces `H_i` with left translation, basepoint `e`.
pub fn naive_factor<S: Scalar>(group: GroupRef, exponent: Exponent) -> Result<Arc<dyn Fn(i64) -> ProperFactor<S> + Send + Sync>> {
    let space: SpaceRef<S> = Arc::new(NaiveSpace::on_group(group.clone(), S::one(), exponent)?);
    let action: ActionRef = Arc::new(naive_translation(group.clone()));
    Ok(uniform_factor(space, action, group.identity()))
}

