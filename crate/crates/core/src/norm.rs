//! Weighted ℓ^q and ℓ^∞ energies of sparse functionals.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::label::LabelId;
use crate::scalar::{pow, Scalar};
use crate::sparse::SparseFunctional;

/// Norm exponent: a rational `q = num/den ≥ 1` or the supremum norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite { num: u32, den: u32 },
    Sup,
}

impl Exponent {
    pub fn integer(q: u32) -> Result<Self> {
        Self::rational(q, 1)
    }

    pub fn rational(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidSpec("exponent denominator is zero".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g.max(1), den / g.max(1));
        if num < den {
            return Err(Error::InvalidSpec(format!("exponent {num}/{den} is below 1")));
        }
        Ok(Exponent::Finite { num, den })
    }

    /// Parses `"2"`, `"3/2"`, `"sup"`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("sup") || t.eq_ignore_ascii_case("inf") {
            return Ok(Exponent::Sup);
        }
        let (n, d) = t.split_once('/').unwrap_or((t, "1"));
        let n: i64 = n.trim().parse().map_err(|_| Error::InvalidSpec(format!("bad exponent '{text}'")))?;
        let d: i64 = d.trim().parse().map_err(|_| Error::InvalidSpec(format!("bad exponent '{text}'")))?;
        if n <= 0 || d <= 0 || n > u32::MAX as i64 || d > u32::MAX as i64 {
            return Err(Error::InvalidSpec(format!("exponent '{text}' is below 1")));
        }
        Self::rational(n as u32, d as u32)
    }

    /// `Some(q)` when `q` is a positive integer.
    pub fn as_integer(&self) -> Option<u32> {
        match *self {
            Exponent::Finite { num, den: 1 } => Some(num),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            Exponent::Finite { num, den } => num as f64 / den as f64,
            Exponent::Sup => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Exponent::Finite { num, den: 1 } => write!(f, "{num}"),
            Exponent::Finite { num, den } => write!(f, "{num}/{den}"),
            Exponent::Sup => f.write_str("sup"),
        }
    }
}

/// Total weight map on labels.
pub trait WeightMap<S>: Send + Sync {
    fn weight(&self, label: &LabelId) -> S;
}

impl<S, F> WeightMap<S> for F
where
    F: Fn(&LabelId) -> S + Send + Sync,
{
    fn weight(&self, label: &LabelId) -> S {
        self(label)
    }
}

#[derive(Clone)]
pub struct NormSpec<S> {
    pub exponent: Exponent,
    pub weights: Arc<dyn WeightMap<S>>,
}

impl<S: Scalar> NormSpec<S> {
    /// Unit weights.
    pub fn unweighted(exponent: Exponent) -> Self {
        NormSpec { exponent, weights: Arc::new(|_: &LabelId| S::one()) }
    }

    pub fn weighted(exponent: Exponent, weights: Arc<dyn WeightMap<S>>) -> Self {
        NormSpec { exponent, weights }
    }

    pub fn weight(&self, label: &LabelId) -> S {
        self.weights.weight(label)
    }
}

impl<S> fmt::Debug for NormSpec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormSpec").field("exponent", &self.exponent).finish_non_exhaustive()
    }
}

/// A q-energy: exact when the exponent is an integer (or SUP), a float otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Energy<S> {
    Exact(S),
    Approx(f64),
}

impl<S: Scalar> Energy<S> {
    pub fn zero() -> Self {
        Energy::Exact(S::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Energy::Exact(x) => x.to_f64(),
            Energy::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&S> {
        match self {
            Energy::Exact(x) => Some(x),
            Energy::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Energy::Exact(x) => x.is_zero(),
            Energy::Approx(x) => *x == 0.0,
        }
    }

    /// The norm: `energy^{1/q}`, or the energy itself for SUP.
    pub fn root(&self, exponent: Exponent) -> f64 {
        let e = self.to_f64().max(0.0);
        match exponent {
            Exponent::Sup => e,
            Exponent::Finite { num, den } if num == den => e,
            Exponent::Finite { num: 2, den: 1 } => e.sqrt(),
            Exponent::Finite { num, den } => e.powf(den as f64 / num as f64),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Energy::Exact(x) => x.to_exact_string(),
            Energy::Approx(x) => format!("{x:.12e}"),
        }
    }
}

impl<S: Scalar> fmt::Display for Energy<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<S: Scalar> Serialize for Energy<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

fn checked_weight<S: Scalar>(spec: &NormSpec<S>, label: &LabelId) -> Result<S> {
    let w = spec.weight(label);
    if w.is_negative() {
        return Err(Error::InvalidSpec(format!("negative weight at label {label}")));
    }
    Ok(w)
}

/// `Σ w(ℓ)|v(ℓ)|^q`, or `max w(ℓ)|v(ℓ)|` for SUP.
pub fn q_energy<S: Scalar>(spec: &NormSpec<S>, v: &SparseFunctional<S>) -> Result<Energy<S>> {
    match spec.exponent {
        Exponent::Sup => {
            let mut best = S::zero();
            for (l, x) in v.iter() {
                let term = checked_weight(spec, l)? * x.abs();
                best = S::max_of(best, term);
            }
            Ok(Energy::Exact(best))
        }
        Exponent::Finite { num, den: 1 } => {
            let mut total = S::zero();
            for (l, x) in v.iter() {
                total = total + checked_weight(spec, l)? * pow(&x.abs(), num);
            }
            Ok(Energy::Exact(total))
        }
        Exponent::Finite { num, den } => {
            let q = num as f64 / den as f64;
            let mut total = 0.0;
            for (l, x) in v.iter() {
                total += checked_weight(spec, l)?.to_f64() * x.abs().to_f64().powf(q);
            }
            Ok(Energy::Approx(total))
        }
    }
}

/// Weighted norm of `v`.
pub fn norm<S: Scalar>(spec: &NormSpec<S>, v: &SparseFunctional<S>) -> Result<f64> {
    Ok(q_energy(spec, v)?.root(spec.exponent))
}

/// Exact or tolerance comparison of two energies (relative `tol`).
pub fn energies_agree<S: Scalar>(a: &Energy<S>, b: &Energy<S>, tol: f64) -> bool {
    match (a, b) {
        (Energy::Exact(x), Energy::Exact(y)) if S::is_exact() => x == y,
        _ => approx_eq(a.to_f64(), b.to_f64(), tol),
    }
}

/// `|a - b| ≤ tol · max(1, |a|, |b|)`.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
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
    fn exponent_validation() {
        assert!(Exponent::integer(0).is_err());
        assert!(Exponent::rational(1, 2).is_err());
        assert_eq!(Exponent::rational(4, 2).unwrap(), Exponent::Finite { num: 2, den: 1 });
        assert_eq!(Exponent::parse("sup").unwrap(), Exponent::Sup);
        assert_eq!(Exponent::parse("3/2").unwrap().to_string(), "3/2");
        assert!(Exponent::parse("-2").is_err());
    }

    #[test]
    fn two_unit_entries_at_q2() {
        let spec = NormSpec::<Rational>::unweighted(Exponent::integer(2).unwrap());
        let v = SparseFunctional::from_entries([(l(1), r(1)), (l(2), r(-1))]);
        assert_eq!(q_energy(&spec, &v).unwrap(), Energy::Exact(r(2)));
        assert_eq!(q_energy(&spec, &SparseFunctional::new()).unwrap(), Energy::Exact(r(0)));
    }

    #[test]
    fn sup_takes_weighted_max() {
        let spec = NormSpec::<Rational>::unweighted(Exponent::Sup);
        let v = SparseFunctional::from_entries([(l(1), r(3)), (l(2), r(-5))]);
        assert_eq!(norm(&spec, &v).unwrap(), 5.0);
    }

    #[test]
    fn fractional_exponent_is_float() {
        let spec = NormSpec::<Rational>::unweighted(Exponent::rational(3, 2).unwrap());
        let v = SparseFunctional::singleton(l(0), r(4));
        match q_energy(&spec, &v).unwrap() {
            Energy::Approx(e) => assert!(approx_eq(e, 8.0, 1e-12)),
            other => panic!("expected float energy, got {other:?}"),
        }
    }

    #[test]
    fn negative_weight_rejected() {
        let spec = NormSpec::<Rational>::weighted(Exponent::integer(1).unwrap(), Arc::new(|_: &LabelId| r(-1)));
        assert!(q_energy(&spec, &SparseFunctional::singleton(l(0), r(1))).is_err());
    }

    proptest! {
        #[test]
        fn homogeneous_of_degree_q(
            entries in prop::collection::vec((-6i64..6, -7i64..7), 0..6),
            lambda in -5i64..5,
            q in 1u32..4,
        ) {
            let spec = NormSpec::<Rational>::unweighted(Exponent::integer(q).unwrap());
            let v: SparseFunctional<Rational> = entries.iter().map(|&(k, x)| (l(k), r(x))).collect();
            let lhs = q_energy(&spec, &v.scale(&r(lambda))).unwrap();
            let base = q_energy(&spec, &v).unwrap();
            let factor = pow(&r(lambda.abs()), q);
            prop_assert_eq!(lhs, Energy::Exact(base.exact().unwrap().clone() * factor));
        }
    }
}
