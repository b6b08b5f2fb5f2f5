//! Finitely supported functionals on labels.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::label::{LabelComponent, LabelId};
use crate::scalar::Scalar;

/// Map `LabelId → S` with finite support. Zeros are never stored, so
/// structural equality coincides with equality as functions.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseFunctional<S> {
    entries: BTreeMap<LabelId, S>,
}

impl<S: Scalar> Default for SparseFunctional<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// A bijection of the label set, given by both directions.
pub trait LabelBijection {
    fn forward(&self, label: &LabelId) -> Result<LabelId>;
    fn inverse(&self, label: &LabelId) -> Result<LabelId>;
}

/// Closure-backed bijection.
pub struct FnBijection<F, G> {
    pub forward: F,
    pub inverse: G,
}

impl<F, G> LabelBijection for FnBijection<F, G>
where
    F: Fn(&LabelId) -> Result<LabelId>,
    G: Fn(&LabelId) -> Result<LabelId>,
{
    fn forward(&self, label: &LabelId) -> Result<LabelId> {
        (self.forward)(label)
    }

    fn inverse(&self, label: &LabelId) -> Result<LabelId> {
        (self.inverse)(label)
    }
}

pub struct IdentityBijection;

impl LabelBijection for IdentityBijection {
    fn forward(&self, label: &LabelId) -> Result<LabelId> {
        Ok(label.clone())
    }

    fn inverse(&self, label: &LabelId) -> Result<LabelId> {
        Ok(label.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `result(ℓ) = v(Φ(ℓ))`.
    Forward,
    /// `result(ℓ) = v(Φ⁻¹(ℓ))`.
    Inverse,
}

impl<S: Scalar> SparseFunctional<S> {
    pub fn new() -> Self {
        SparseFunctional { entries: BTreeMap::new() }
    }

    /// Sums duplicate labels and drops zeros.
    pub fn from_entries<I: IntoIterator<Item = (LabelId, S)>>(entries: I) -> Self {
        let mut v = Self::new();
        for (label, value) in entries {
            v.add_at(label, value);
        }
        v
    }

    pub fn singleton(label: LabelId, value: S) -> Self {
        Self::from_entries([(label, value)])
    }

    /// `self(label) += value`.
    pub fn add_at(&mut self, label: LabelId, value: S) {
        if value.is_zero() {
            return;
        }
        match self.entries.entry(label) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(value);
            }
            btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + value;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn get(&self, label: &LabelId) -> S {
        self.entries.get(label).cloned().unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LabelId, &S)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LabelId> {
        self.entries.keys()
    }

    pub fn scale(&self, lambda: &S) -> Self {
        if lambda.is_zero() {
            return Self::new();
        }
        SparseFunctional {
            entries: self
                .entries
                .iter()
                .map(|(l, x)| (l.clone(), x.clone() * lambda.clone()))
                .collect(),
        }
    }

    /// `λa + μb`.
    pub fn combine(a: &Self, b: &Self, lambda: &S, mu: &S) -> Self {
        let mut out = a.scale(lambda);
        out.add_scaled(b, mu);
        out
    }

    /// `self += μ·other`.
    pub fn add_scaled(&mut self, other: &Self, mu: &S) {
        if mu.is_zero() {
            return;
        }
        for (l, x) in &other.entries {
            self.add_at(l.clone(), x.clone() * mu.clone());
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (l, x) in &other.entries {
            self.add_at(l.clone(), x.clone());
        }
    }

    /// Tags every label with a leading component.
    pub fn prefixed(&self, c: &LabelComponent) -> Self {
        SparseFunctional {
            entries: self
                .entries
                .iter()
                .map(|(l, x)| (l.prefixed(c.clone()), x.clone()))
                .collect(),
        }
    }

    /// Applies an injective label map to the support.
    pub fn map_labels<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&LabelId) -> Result<LabelId>,
    {
        let mut entries = BTreeMap::new();
        for (l, x) in &self.entries {
            let image = f(l)?;
            if entries.insert(image.clone(), x.clone()).is_some() {
                return Err(Error::domain(format!("label map is not injective at {image}")));
            }
        }
        Ok(SparseFunctional { entries })
    }

    /// Precomposition with a label bijection; see [`Direction`].
    pub fn relabel(&self, phi: &dyn LabelBijection, direction: Direction) -> Result<Self> {
        match direction {
            Direction::Forward => self.map_labels(|l| phi.inverse(l)),
            Direction::Inverse => self.map_labels(|l| phi.forward(l)),
        }
    }
}

impl<S: Scalar> Neg for SparseFunctional<S> {
    type Output = Self;

    fn neg(self) -> Self {
        SparseFunctional {
            entries: self.entries.into_iter().map(|(l, x)| (l, -x)).collect(),
        }
    }
}

impl<S: Scalar> Add for SparseFunctional<S> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (l, x) in rhs.entries {
            self.add_at(l, x);
        }
        self
    }
}

impl<S: Scalar> Sub for SparseFunctional<S> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for (l, x) in rhs.entries {
            self.add_at(l, -x);
        }
        self
    }
}

impl<S: Scalar> FromIterator<(LabelId, S)> for SparseFunctional<S> {
    fn from_iter<I: IntoIterator<Item = (LabelId, S)>>(iter: I) -> Self {
        Self::from_entries(iter)
    }
}

impl<S: Scalar> Serialize for SparseFunctional<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (l, x) in &self.entries {
            map.serialize_entry(&l.to_string(), &x.to_exact_string())?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;
    use crate::Rational;
    use proptest::prelude::*;

    fn l(i: i64) -> LabelId {
        LabelId::dirac(Point::Int(i))
    }

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn combine_cancels_and_merges() {
        let v = SparseFunctional::from_entries([(l(0), r(2)), (l(1), r(-1))]);
        assert!(SparseFunctional::combine(&v, &v, &r(1), &r(-1)).is_empty());
        let a = SparseFunctional::singleton(l(0), r(2));
        let b = SparseFunctional::singleton(l(0), r(3));
        assert_eq!(a + b, SparseFunctional::singleton(l(0), r(5)));
    }

    #[test]
    fn zeros_are_not_stored() {
        let v = SparseFunctional::from_entries([(l(0), r(0)), (l(1), r(1)), (l(1), r(-1))]);
        assert!(v.is_empty());
    }

    #[test]
    fn relabel_identity_and_shift() {
        let v = SparseFunctional::from_entries([(l(0), r(1)), (l(3), r(-1))]);
        assert_eq!(v.relabel(&IdentityBijection, Direction::Forward).unwrap(), v);
        // Φ(Dirac(n)) = Dirac(n + 1)
        let shift = FnBijection {
            forward: |x: &LabelId| match x.head() {
                Some(LabelComponent::Dirac(Point::Int(n))) => Ok(l(n + 1)),
                _ => Err(Error::domain("bad label")),
            },
            inverse: |x: &LabelId| match x.head() {
                Some(LabelComponent::Dirac(Point::Int(n))) => Ok(l(n - 1)),
                _ => Err(Error::domain("bad label")),
            },
        };
        let fwd = v.relabel(&shift, Direction::Forward).unwrap();
        assert_eq!(fwd.get(&l(-1)), r(1));
        assert_eq!(fwd.get(&l(2)), r(-1));
        let inv = v.relabel(&shift, Direction::Inverse).unwrap();
        assert_eq!(inv.get(&l(1)), r(1));
        assert_eq!(inv.relabel(&shift, Direction::Forward).unwrap(), v);
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(
            a in prop::collection::vec((-5i64..5, -9i64..9), 0..8),
            b in prop::collection::vec((-5i64..5, -9i64..9), 0..8),
        ) {
            let va: SparseFunctional<Rational> = a.iter().map(|&(k, x)| (l(k), r(x))).collect();
            let vb: SparseFunctional<Rational> = b.iter().map(|&(k, x)| (l(k), r(x))).collect();
            prop_assert_eq!((va.clone() + vb.clone()) - vb.clone(), va.clone());
            prop_assert_eq!(-(-va.clone()), va.clone());
            let two = SparseFunctional::combine(&va, &va, &r(1), &r(1));
            prop_assert_eq!(two, va.scale(&r(2)));
        }
    }
}
