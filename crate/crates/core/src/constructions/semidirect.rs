use std::sync::Arc;

use super::product::{product_space, ProductSpace};
use crate::action::{ActionRef, AutomorphismAction};
use crate::error::{Error, Result};
use crate::groups::{GroupRef, SemidirectGroup};
use crate::label::{LabelComponent, LabelId};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::SpaceRef;

/// Inputs of the semidirect gluing.
#[derive(Clone)]
pub struct SemidirectData<S> {
    pub space1: SpaceRef<S>,
    pub space2: SpaceRef<S>,
    /// `G₁` on `X₁`.
    pub action1: ActionRef,
    /// `G₂` on `X₂`.
    pub action2: ActionRef,
    /// `ρ̃`: `G₂` on `X₁`, extending the automorphism action `ρ`.
    pub twist: ActionRef,
    pub group: Arc<SemidirectGroup>,
}

/// `τ(g₁, g₂)(x₁, x₂) = (τ₁(g₁) ρ̃(g₂) x₁, τ₂(g₂) x₂)`.
pub struct SemidirectAction {
    data_action1: ActionRef,
    data_action2: ActionRef,
    twist: ActionRef,
    group: Arc<SemidirectGroup>,
}

impl<S: Scalar> SemidirectData<S> {
    /// `ρ̃(g₂) τ₁(g₁) ρ̃(g₂)⁻¹ x = τ₁(ρ(g₂)(g₁)) x` on the given samples.
    pub fn check_compatibility(&self, samples: &[(Point, Point, Point)]) -> Result<()> {
        let g2grp = self.group.acting();
        for (g1, g2, x) in samples {
            let inner = self.twist.act(&g2grp.inv(g2)?, x)?;
            let lhs = self.twist.act(g2, &self.action1.act(g1, &inner)?)?;
            let rhs = self.action1.act(&self.group.rho(g2, g1)?, x)?;
            if lhs != rhs {
                return Err(Error::invalid(format!(
                    "twist is not compatible with the action at g1={g1}, g2={g2}, x={x}: {lhs} vs {rhs}"
                )));
            }
        }
        Ok(())
    }
}

/// Product structure on `X₁ × X₂` with the glued `G₁ ⋊ G₂` action. Fails
/// when the compatibility check fails on `samples`.
pub fn semidirect_space<S: Scalar>(
    data: SemidirectData<S>,
    samples: &[(Point, Point, Point)],
) -> Result<(ProductSpace<S>, SemidirectAction)> {
    data.check_compatibility(samples)?;
    let space = product_space(vec![data.space1.clone(), data.space2.clone()])?;
    let action = SemidirectAction {
        data_action1: data.action1,
        data_action2: data.action2,
        twist: data.twist,
        group: data.group,
    };
    Ok((space, action))
}

impl AutomorphismAction for SemidirectAction {
    fn group(&self) -> GroupRef {
        self.group.clone()
    }

    fn act(&self, g: &Point, x: &Point) -> Result<Point> {
        let (g1, g2) = self.group.split(g)?;
        let xs = x.as_tuple(2)?;
        let x1 = self.data_action1.act(g1, &self.twist.act(g2, &xs[0])?)?;
        let x2 = self.data_action2.act(g2, &xs[1])?;
        Ok(Point::pair(x1, x2))
    }

    fn has_label_map(&self) -> bool {
        self.data_action1.has_label_map() && self.data_action2.has_label_map() && self.twist.has_label_map()
    }

    fn pull_label(&self, g: &Point, l: &LabelId) -> Result<LabelId> {
        let (g1, g2) = self.group.split(g)?;
        match l.split_factor() {
            Some((0, p)) => Ok(self
                .twist
                .pull_label(g2, &self.data_action1.pull_label(g1, &p)?)?
                .prefixed(LabelComponent::Factor(0))),
            Some((1, p)) => Ok(self.data_action2.pull_label(g2, &p)?.prefixed(LabelComponent::Factor(1))),
            _ => Err(Error::domain(format!("{l} is not a label of the glued space"))),
        }
    }
}

/// `ℤ ⋊ ℤ/2` on (ℤ half-space walls) × (naive `ℤ/2`), the reflection
/// acting on `ℤ` by `n ↦ −n`.
pub fn infinite_dihedral<S: Scalar>(exponent: crate::norm::Exponent) -> Result<(ProductSpace<S>, SemidirectAction)> {
    use crate::action::FnAction;
    use crate::constructions::naive::{naive_translation, NaiveSpace};
    use crate::groups::{FiniteGroup, IntegerLattice};
    use crate::walls::{reflect_half_space, walls_to_labelled, WallsRef, ZnHalfSpaceWalls};

    let zwalls = ZnHalfSpaceWalls::new(1)?;
    let action1: ActionRef = Arc::new(zwalls.translation_action());
    let walls: WallsRef<S> = Arc::new(zwalls);
    let space1: SpaceRef<S> = Arc::new(walls_to_labelled(walls, exponent));
    let z: GroupRef = Arc::new(IntegerLattice::new(1)?);
    let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2));
    let space2: SpaceRef<S> = Arc::new(NaiveSpace::on_group(z2.clone(), S::one(), exponent)?);
    let action2: ActionRef = Arc::new(naive_translation(z2.clone()));
    let flips = |s: &Point| -> Result<bool> { Ok(s.as_index()? == 1) };
    let twist: ActionRef = Arc::new(FnAction::new(
        z2.clone(),
        Arc::new(move |s, n| Ok(if flips(s)? { Point::Int(-n.as_int()?) } else { n.clone() })),
        Some(Arc::new(move |s, l| if flips(s)? { reflect_half_space(l) } else { Ok(l.clone()) })),
    ));
    let group = Arc::new(SemidirectGroup::new(
        z,
        z2,
        Arc::new(move |s, n| Ok(if flips(s)? { Point::Int(-n.as_int()?) } else { n.clone() })),
    ));
    let data = SemidirectData { space1, space2, action1, action2, twist, group };
    let samples: Vec<(Point, Point, Point)> = (-3..=3)
        .flat_map(|n| (0..2).map(move |s| (Point::Int(n), Point::Index(s), Point::Int(2 * n - 1))))
        .collect();
    semidirect_space(data, &samples)
}
