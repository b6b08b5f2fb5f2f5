//! Label identifiers: structured paths naming one labelling function.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::groups::{AmalgamWord, Side};
use crate::point::Point;
use crate::amalgam::VertexId;

/// Identifier of an atomic wall.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WallId {
    /// `{x : x_axis ≤ cut}` when `upper` is false, its complement otherwise.
    HalfSpace { axis: usize, cut: i64, upper: bool },
    Named(String),
    /// Half of the Bass–Serre tree cut at edge `edge`, on the `side` end.
    HalfTree { edge: AmalgamWord, side: Side },
    /// `{(w, i) : w_index = value}` in a lamp-type walls system.
    LampState { index: i64, value: Point },
    /// `{(w, i) : i = position}`.
    Position(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelComponent {
    Factor(i64),
    Vertex(VertexId),
    Wall(WallId),
    Dirac(Point),
    Pair(Point, Point),
    /// Signed coordinate functional; `2k` is `+e_k*`, `2k+1` is `-e_k*`.
    CosetFunctional(i64),
    Custom(String),
}

/// A path of tagged components. Structural equality is label equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub Vec<LabelComponent>);

impl LabelId {
    pub fn single(c: LabelComponent) -> Self {
        LabelId(vec![c])
    }

    pub fn dirac(p: Point) -> Self {
        Self::single(LabelComponent::Dirac(p))
    }

    pub fn wall(w: WallId) -> Self {
        Self::single(LabelComponent::Wall(w))
    }

    /// Prepends `c`, as when a factor label is lifted into a sum.
    pub fn prefixed(&self, c: LabelComponent) -> Self {
        let mut path = Vec::with_capacity(self.0.len() + 1);
        path.push(c);
        path.extend(self.0.iter().cloned());
        LabelId(path)
    }

    pub fn head(&self) -> Option<&LabelComponent> {
        self.0.first()
    }

    /// The path without its first component.
    pub fn rest(&self) -> LabelId {
        LabelId(self.0.iter().skip(1).cloned().collect())
    }

    /// Splits off a leading `Factor(i)` tag.
    pub fn split_factor(&self) -> Option<(i64, LabelId)> {
        match self.0.first() {
            Some(LabelComponent::Factor(i)) => Some((*i, self.rest())),
            _ => None,
        }
    }
}

impl fmt::Display for WallId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallId::HalfSpace { axis, cut, upper } => {
                let op = if *upper { ">" } else { "<=" };
                write!(f, "x{axis}{op}{cut}")
            }
            WallId::Named(name) => f.write_str(name),
            WallId::HalfTree { edge, side } => {
                write!(f, "half({}, {side:?})", Point::Word(edge.clone()))
            }
            WallId::LampState { index, value } => write!(f, "lamp({index}={value})"),
            WallId::Position(i) => write!(f, "pos({i})"),
        }
    }
}

impl fmt::Display for LabelComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelComponent::Factor(i) => write!(f, "factor({i})"),
            LabelComponent::Vertex(v) => write!(f, "vertex({})", Point::Vertex(v.clone())),
            LabelComponent::Wall(w) => write!(f, "wall({w})"),
            LabelComponent::Dirac(p) => write!(f, "dirac({p})"),
            LabelComponent::Pair(a, b) => write!(f, "pair({a}, {b})"),
            LabelComponent::CosetFunctional(k) => {
                let sign = if k % 2 == 0 { '+' } else { '-' };
                write!(f, "{sign}e{}", k / 2)
            }
            LabelComponent::Custom(s) => write!(f, "custom({s})"),
        }
    }
}

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("/")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for LabelId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_round_trip() {
        let base = LabelId::dirac(Point::Index(2));
        let lifted = base.prefixed(LabelComponent::Factor(-1));
        assert_eq!(lifted.split_factor(), Some((-1, base.clone())));
        assert_eq!(base.split_factor(), None);
        assert_eq!(lifted.to_string(), "factor(-1)/dirac(#2)");
    }
}
