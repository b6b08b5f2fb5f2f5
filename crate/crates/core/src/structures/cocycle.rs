use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use crate::action::{transport, AutomorphismAction, FnAction};
use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, FreeGroup, GroupRef, IntegerLattice};
use crate::label::{LabelComponent, LabelId};
use crate::norm::{q_energy, Exponent, NormSpec};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::{sep, LabelledPartitionSpace};
use crate::sparse::SparseFunctional;

/// A linear isometry of `ℓ^q` on `n` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum Isometry<S> {
    /// `e_i ↦ ±e_{perm[i]}`, minus where `negate[i]`.
    Signed { perm: Vec<usize>, negate: Vec<bool> },
    /// Orthogonal matrix, accepted for `q = 2` only.
    Matrix(Vec<Vec<S>>),
}

impl<S: Scalar> Isometry<S> {
    pub fn identity(n: usize) -> Self {
        Isometry::Signed { perm: (0..n).collect(), negate: vec![false; n] }
    }

    pub fn dim(&self) -> usize {
        match self {
            Isometry::Signed { perm, .. } => perm.len(),
            Isometry::Matrix(m) => m.len(),
        }
    }

    fn validate(&self, n: usize, exponent: Exponent) -> Result<()> {
        match self {
            Isometry::Signed { perm, negate } => {
                let mut seen = vec![false; n];
                if perm.len() != n || negate.len() != n {
                    return Err(Error::invalid(format!("signed permutation must have {n} entries")));
                }
                for &p in perm {
                    if p >= n || std::mem::replace(&mut seen[p], true) {
                        return Err(Error::invalid("not a permutation"));
                    }
                }
                Ok(())
            }
            Isometry::Matrix(m) => {
                if exponent.as_integer() != Some(2) {
                    return Err(Error::invalid("matrices are isometries of q-space only for q = 2; use a signed permutation"));
                }
                if m.len() != n || m.iter().any(|r| r.len() != n) {
                    return Err(Error::invalid(format!("matrix must be {n}x{n}")));
                }
                for i in 0..n {
                    for j in 0..n {
                        let dot = (0..n).fold(S::zero(), |acc, k| acc + m[i][k].clone() * m[j][k].clone());
                        if dot != S::from_int((i == j) as i64) {
                            return Err(Error::invalid("matrix is not orthogonal"));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        match self {
            Isometry::Signed { perm, negate } => {
                let mut out = vec![S::zero(); v.len()];
                for i in 0..v.len() {
                    out[perm[i]] = if negate[i] { -v[i].clone() } else { v[i].clone() };
                }
                out
            }
            Isometry::Matrix(m) => m
                .iter()
                .map(|row| row.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
                .collect(),
        }
    }

    fn to_matrix(&self) -> Vec<Vec<S>> {
        match self {
            Isometry::Matrix(m) => m.clone(),
            Isometry::Signed { perm, .. } => {
                let n = perm.len();
                let cols: Vec<Vec<S>> = (0..n)
                    .map(|j| {
                        let mut e = vec![S::zero(); n];
                        e[j] = S::one();
                        self.apply(&e)
                    })
                    .collect();
                (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (Isometry::Signed { perm: pa, negate: na }, Isometry::Signed { perm: pb, negate: nb }) => Isometry::Signed {
                perm: pb.iter().map(|&j| pa[j]).collect(),
                negate: (0..pb.len()).map(|i| nb[i] ^ na[pb[i]]).collect(),
            },
            _ => {
                let (a, b) = (self.to_matrix(), other.to_matrix());
                let n = a.len();
                Isometry::Matrix(
                    (0..n)
                        .map(|i| (0..n).map(|j| (0..n).fold(S::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())).collect())
                        .collect(),
                )
            }
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Isometry::Signed { perm, negate } => {
                let mut p = vec![0; perm.len()];
                let mut s = vec![false; perm.len()];
                for i in 0..perm.len() {
                    p[perm[i]] = i;
                    s[perm[i]] = negate[i];
                }
                Isometry::Signed { perm: p, negate: s }
            }
            Isometry::Matrix(m) => {
                let n = m.len();
                Isometry::Matrix((0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect())
            }
        }
    }

    fn same_map(&self, other: &Self) -> bool {
        self.to_matrix() == other.to_matrix()
    }
}

/// Groups on which a cocycle can be evaluated from generator data.
#[derive(Clone)]
pub enum CocycleGroup {
    Finite(Arc<FiniteGroup>),
    Lattice(Arc<IntegerLattice>),
    Free(Arc<FreeGroup>),
}

impl CocycleGroup {
    pub fn group(&self) -> GroupRef {
        match self {
            CocycleGroup::Finite(g) => g.clone(),
            CocycleGroup::Lattice(g) => g.clone(),
            CocycleGroup::Free(g) => g.clone(),
        }
    }

    /// `g` as a word in the generators: `(generator, inverted)`.
    fn decompose(&self, g: &Point) -> Result<Vec<(usize, bool)>> {
        match self {
            CocycleGroup::Finite(_) => Err(Error::domain("finite groups are tabulated")),
            CocycleGroup::Lattice(l) => Ok(l
                .coords(g)?
                .iter()
                .enumerate()
                .flat_map(|(k, &n)| std::iter::repeat_n((k, n < 0), n.unsigned_abs() as usize))
                .collect()),
            CocycleGroup::Free(f) => Ok(f.word_of(g)?.iter().map(|&l| (l.unsigned_abs() as usize - 1, l < 0)).collect()),
        }
    }
}

/// An affine isometric action `g·ξ = π(g)ξ + b(g)` on `n`-dimensional
/// `ℓ^q`, given on generators and extended by the cocycle rule.
#[derive(Clone)]
pub struct CocycleAction<S> {
    group: CocycleGroup,
    dim: usize,
    exponent: Exponent,
    gens: Vec<(Isometry<S>, Vec<S>)>,
    table: Option<BTreeMap<Point, (Isometry<S>, Vec<S>)>>,
}

fn affine_mul<S: Scalar>(a: &(Isometry<S>, Vec<S>), b: &(Isometry<S>, Vec<S>)) -> (Isometry<S>, Vec<S>) {
    let shifted = a.0.apply(&b.1);
    (a.0.compose(&b.0), a.1.iter().zip(shifted).map(|(x, y)| x.clone() + y).collect())
}

fn affine_inv<S: Scalar>(a: &(Isometry<S>, Vec<S>)) -> (Isometry<S>, Vec<S>) {
    let inv = a.0.inverse();
    let b = inv.apply(&a.1).into_iter().map(|x| -x).collect();
    (inv, b)
}

impl<S: Scalar> CocycleAction<S> {
    /// `gens[k]` is `(π(s_k), b(s_k))` for the `k`-th group generator.
    pub fn new(group: CocycleGroup, dim: usize, exponent: Exponent, gens: Vec<(Isometry<S>, Vec<S>)>) -> Result<Self> {
        let generators = group.group().generators();
        if gens.len() != generators.len() {
            return Err(Error::invalid(format!("expected data for {} generators, got {}", generators.len(), gens.len())));
        }
        for (pi, b) in &gens {
            pi.validate(dim, exponent)?;
            if b.len() != dim {
                return Err(Error::invalid(format!("cocycle vector must have {dim} entries")));
            }
        }
        let mut action = CocycleAction { group, dim, exponent, gens, table: None };
        match action.group.clone() {
            CocycleGroup::Finite(g) => action.tabulate(&g)?,
            CocycleGroup::Lattice(_) => {
                for i in 0..action.gens.len() {
                    for j in 0..i {
                        let (a, b) = (&action.gens[i], &action.gens[j]);
                        let (ab, ba) = (affine_mul(a, b), affine_mul(b, a));
                        if !ab.0.same_map(&ba.0) || ab.1 != ba.1 {
                            return Err(Error::invalid(format!("generators {j} and {i} do not commute: cocycle identity fails")));
                        }
                    }
                }
            }
            CocycleGroup::Free(_) => {}
        }
        Ok(action)
    }

    fn tabulate(&mut self, g: &FiniteGroup) -> Result<()> {
        let gens: Vec<usize> = g.generator_indices().to_vec();
        let mut table: BTreeMap<Point, (Isometry<S>, Vec<S>)> = BTreeMap::new();
        let e = g.identity_index();
        table.insert(Point::Index(e), (Isometry::identity(self.dim), vec![S::zero(); self.dim]));
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            let ax = table[&Point::Index(x)].clone();
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let ay = affine_mul(&ax, &self.gens[k]);
                if let std::collections::btree_map::Entry::Vacant(slot) = table.entry(Point::Index(y)) {
                    slot.insert(ay);
                    queue.push_back(y);
                }
            }
        }
        for x in 0..g.order() {
            for y in 0..g.order() {
                let (ax, ay) = (&table[&Point::Index(x)], &table[&Point::Index(y)]);
                let want = affine_mul(ax, ay);
                let got = &table[&Point::Index(g.mul(x, y))];
                if !want.0.same_map(&got.0) {
                    return Err(Error::invalid(format!("pi is not a homomorphism at (#{x}, #{y})")));
                }
                if want.1 != got.1 {
                    return Err(Error::invalid(format!("cocycle identity b(gh) = pi(g)b(h) + b(g) fails at (#{x}, #{y})")));
                }
            }
        }
        self.table = Some(table);
        Ok(())
    }

    pub fn group(&self) -> GroupRef {
        self.group.group()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    /// `(π(g), b(g))`.
    pub fn eval(&self, g: &Point) -> Result<(Isometry<S>, Vec<S>)> {
        if let Some(t) = &self.table {
            return t.get(g).cloned().ok_or_else(|| Error::domain(format!("{g} is not a group element")));
        }
        let mut acc = (Isometry::identity(self.dim), vec![S::zero(); self.dim]);
        for (k, inverted) in self.group.decompose(g)? {
            let s = if inverted { affine_inv(&self.gens[k]) } else { self.gens[k].clone() };
            acc = affine_mul(&acc, &s);
        }
        Ok(acc)
    }

    pub fn b(&self, g: &Point) -> Result<Vec<S>> {
        Ok(self.eval(g)?.1)
    }

    /// `b(gh) = π(g)b(h) + b(g)` on the given pairs.
    pub fn identity_report(&self, pairs: &[(Point, Point)]) -> CheckReport {
        let grp = self.group();
        let mut report = CheckReport::new("cocycle identity (generator data)");
        for (g, h) in pairs {
            let outcome = (|| {
                let (pg, bg) = self.eval(g)?;
                let bh = self.b(h)?;
                let lhs = self.b(&grp.op(g, h)?)?;
                let rhs: Vec<S> = pg.apply(&bh).into_iter().zip(bg).map(|(x, y)| x + y).collect();
                Ok((lhs != rhs).then(|| (fmt_vec(&rhs), fmt_vec(&lhs))))
            })();
            report.record(&[g, h], outcome);
        }
        report
    }

    /// `group <kind> <n>`, `dim <n>`, `q <exponent>`, then one line per
    /// generator: `gen <k> perm <p…> sign <±…> shift <b…>` or
    /// `gen <k> matrix <row-major entries> shift <b…>`.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut group = None;
        let mut dim = None;
        let mut exponent = None;
        let mut gens: BTreeMap<usize, (Isometry<S>, Vec<S>)> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::parse(format!("line {}: {m}", lineno + 1));
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "group" => {
                    let n: usize = toks.get(2).and_then(|t| t.parse().ok()).ok_or_else(|| err("expected 'group <kind> <n>'"))?;
                    group = Some(match toks[1] {
                        "cyclic" => CocycleGroup::Finite(Arc::new(FiniteGroup::cyclic(n))),
                        "dihedral" => CocycleGroup::Finite(Arc::new(FiniteGroup::dihedral(n))),
                        "symmetric" => CocycleGroup::Finite(Arc::new(FiniteGroup::symmetric(n))),
                        "lattice" => CocycleGroup::Lattice(Arc::new(IntegerLattice::new(n)?)),
                        "free" => CocycleGroup::Free(Arc::new(FreeGroup::new(n)?)),
                        other => return Err(err(&format!("unknown group kind '{other}'"))),
                    });
                }
                "dim" => dim = Some(toks.get(1).and_then(|t| t.parse::<usize>().ok()).ok_or_else(|| err("bad dimension"))?),
                "q" => exponent = Some(Exponent::parse(toks.get(1).copied().unwrap_or("")).map_err(|e| err(&e.to_string()))?),
                "gen" => {
                    let n = dim.ok_or_else(|| err("'dim' must precede generators"))?;
                    let k: usize = toks.get(1).and_then(|t| t.parse().ok()).ok_or_else(|| err("bad generator index"))?;
                    let mut i = 2;
                    let take = |i: &mut usize, count: usize| -> Result<Vec<&str>> {
                        let out = toks.get(*i + 1..*i + 1 + count).ok_or_else(|| err("too few entries"))?.to_vec();
                        *i += 1 + count;
                        Ok(out)
                    };
                    let iso = match toks.get(i).copied() {
                        Some("perm") => {
                            let perm = take(&mut i, n)?
                                .iter()
                                .map(|t| t.parse::<usize>().map_err(|_| err("bad permutation entry")))
                                .collect::<Result<Vec<_>>>()?;
                            if toks.get(i).copied() != Some("sign") {
                                return Err(err("expected 'sign'"));
                            }
                            let negate = take(&mut i, n)?
                                .iter()
                                .map(|t| match *t {
                                    "+" => Ok(false),
                                    "-" => Ok(true),
                                    _ => Err(err("signs are '+' or '-'")),
                                })
                                .collect::<Result<Vec<_>>>()?;
                            Isometry::Signed { perm, negate }
                        }
                        Some("matrix") => {
                            let flat = take(&mut i, n * n)?
                                .iter()
                                .map(|t| S::parse_scalar(t).ok_or_else(|| err("bad matrix entry")))
                                .collect::<Result<Vec<S>>>()?;
                            Isometry::Matrix(flat.chunks(n).map(|c| c.to_vec()).collect())
                        }
                        _ => return Err(err("expected 'perm' or 'matrix'")),
                    };
                    if toks.get(i).copied() != Some("shift") {
                        return Err(err("expected 'shift'"));
                    }
                    let b = take(&mut i, n)?
                        .iter()
                        .map(|t| S::parse_scalar(t).ok_or_else(|| err("bad shift entry")))
                        .collect::<Result<Vec<S>>>()?;
                    if i != toks.len() {
                        return Err(err("trailing tokens"));
                    }
                    if gens.insert(k, (iso, b)).is_some() {
                        return Err(err("generator given twice"));
                    }
                }
                other => return Err(err(&format!("unknown directive '{other}'"))),
            }
        }
        let group = group.ok_or_else(|| Error::parse("missing 'group' line"))?;
        let dim = dim.ok_or_else(|| Error::parse("missing 'dim' line"))?;
        let exponent = exponent.unwrap_or(Exponent::Finite { num: 1, den: 1 });
        let count = group.group().generators().len();
        if gens.keys().copied().ne(0..count) {
            return Err(Error::parse(format!("generators must be listed as 0..{count}")));
        }
        Self::new(group, dim, exponent, gens.into_values().collect())
    }
}

fn fmt_vec<S: Scalar>(v: &[S]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_exact_string()).collect::<Vec<_>>().join(", "))
}

fn coordinate_label(k: usize, negative: bool) -> LabelId {
    LabelId::single(LabelComponent::CosetFunctional(2 * k as i64 + negative as i64))
}

/// The structure on the group with `c(g, h)` the coordinates of
/// `b(g) − b(h)` under the labels `±e_k*`.
pub struct CocycleSpace<S> {
    action: CocycleAction<S>,
    norm: NormSpec<S>,
}

pub fn cocycle_space<S: Scalar>(action: CocycleAction<S>) -> (CocycleSpace<S>, FnAction) {
    let n = action.dim as i64;
    let w = if action.exponent == Exponent::Sup { S::one() } else { S::ratio(1, 2) };
    let weights = move |l: &LabelId| match l.0.as_slice() {
        [LabelComponent::CosetFunctional(k)] if (0..2 * n).contains(k) => w.clone(),
        _ => S::zero(),
    };
    let signed = action.gens.iter().all(|(p, _)| matches!(p, Isometry::Signed { .. }));
    let label_map = signed.then(|| {
        let a = action.clone();
        Arc::new(move |g: &Point, l: &LabelId| match l.0.as_slice() {
            [LabelComponent::CosetFunctional(code)] => {
                let (k, neg) = ((code / 2) as usize, code % 2 == 1);
                match a.eval(g)?.0 {
                    Isometry::Signed { perm, negate } => {
                        let i = perm.iter().position(|&p| p == k).ok_or_else(|| Error::domain("coordinate out of range"))?;
                        Ok(coordinate_label(i, neg ^ negate[i]))
                    }
                    Isometry::Matrix(_) => Err(Error::domain("matrix isometries have no label map")),
                }
            }
            _ => Err(Error::domain(format!("{l} is not a coordinate label"))),
        }) as Arc<dyn Fn(&Point, &LabelId) -> Result<LabelId> + Send + Sync>
    });
    let tau = FnAction::left_translation(action.group(), label_map);
    let norm = NormSpec::weighted(action.exponent, Arc::new(weights));
    (CocycleSpace { action, norm }, tau)
}

impl<S: Scalar> CocycleSpace<S> {
    pub fn cocycle(&self) -> &CocycleAction<S> {
        &self.action
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for CocycleSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        self.action.group().contains(p)
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        let (bx, by) = (self.action.b(x)?, self.action.b(y)?);
        let mut v = SparseFunctional::new();
        for (k, (a, b)) in bx.into_iter().zip(by).enumerate() {
            let d = a - b;
            v.add_at(coordinate_label(k, true), -d.clone());
            v.add_at(coordinate_label(k, false), d);
        }
        Ok(v)
    }

    fn norm(&self) -> &NormSpec<S> {
        &self.norm
    }

    fn description(&self) -> String {
        format!("cocycle structure in dimension {}", self.action.dim)
    }

    fn points(&self) -> Option<Vec<Point>> {
        self.action.group().elements()
    }
}

/// `b(g) = c(g·x₀, x₀)` and `π(g) = ` relabelling by `Φ_{τ(g)}`, checked on
/// sampled pairs: the cocycle identity `b(gh) = π(g)b(h) + b(g)` and
/// `‖π(g)ξ‖ = ‖ξ‖` for `ξ = b(h)`.
pub fn cocycle_from_space<S: Scalar>(
    space: &dyn LabelledPartitionSpace<S>,
    action: &dyn AutomorphismAction,
    basepoint: &Point,
    pairs: &[(Point, Point)],
) -> Vec<CheckReport> {
    let grp = action.group();
    let b = |g: &Point| -> Result<SparseFunctional<S>> { sep(space, &action.act(g, basepoint)?, basepoint) };
    let mut identity = CheckReport::new("cocycle identity b(gh) = pi(g)b(h) + b(g)");
    let mut isometry = CheckReport::new("pi(g) preserves the norm");
    for (g, h) in pairs {
        let outcome = (|| {
            let bh = b(h)?;
            let lhs = b(&grp.op(g, h)?)?;
            let moved = transport(action, g, &bh)?;
            let rhs = moved.clone() + b(g)?;
            if lhs != rhs {
                return Ok((Some(format!("{:?}", rhs)), None));
            }
            let (e1, e2) = (q_energy(space.norm(), &moved)?, q_energy(space.norm(), &bh)?);
            let same = crate::norm::energies_agree(&e1, &e2, crate::checks::FLOAT_TOL);
            Ok((None, (!same).then(|| (e2.to_text(), e1.to_text()))))
        })();
        match outcome {
            Ok((None, iso)) => {
                identity.pass();
                isometry.record(&[g, h], Ok(iso));
            }
            Ok((Some(rhs), _)) => identity.fail(&[g, h], rhs, "b(gh) differs"),
            Err(e) => identity.record(&[g, h], Err(e)),
        }
    }
    vec![identity, isometry]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{dist, energy};
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn translation_cocycle_on_integers() {
        let z = CocycleGroup::Lattice(Arc::new(IntegerLattice::new(1).unwrap()));
        let a = CocycleAction::new(z, 1, Exponent::integer(1).unwrap(), vec![(Isometry::identity(1), vec![r(1)])]).unwrap();
        let (s, _) = cocycle_space(a);
        assert_eq!(dist(&s, &Point::Int(-2), &Point::Int(5)).unwrap(), 7.0);
    }

    #[test]
    fn linear_action_gives_zero_metric() {
        let text = "group cyclic 4\ndim 2\nq 3\ngen 0 perm 1 0 sign - + shift 0 0\n";
        let a = CocycleAction::<Rational>::from_text(text).unwrap();
        let (s, _) = cocycle_space(a);
        for i in 0..4 {
            assert!(energy(&s, &Point::Index(i), &Point::Index(0)).unwrap().is_zero());
        }
    }

    #[test]
    fn broken_cocycle_rejected() {
        // b(s) = 1 with trivial π on Z/2 would need b(s²) = 2 ≠ 0
        let text = "group cyclic 2\ndim 1\nq 1\ngen 0 perm 0 sign + shift 1\n";
        assert!(CocycleAction::<Rational>::from_text(text).is_err());
        let ok = "group cyclic 2\ndim 1\nq 1\ngen 0 perm 0 sign - shift 1\n";
        assert!(CocycleAction::<Rational>::from_text(ok).is_ok());
    }

    #[test]
    fn matrices_need_q_two() {
        let text = "group lattice 1\ndim 2\nq 1\ngen 0 matrix 0 1 -1 0 shift 1 0\n";
        assert!(CocycleAction::<Rational>::from_text(text).is_err());
        let text = "group lattice 1\ndim 2\nq 2\ngen 0 matrix 0 1 -1 0 shift 1 0\n";
        assert!(CocycleAction::<Rational>::from_text(text).is_ok());
    }

    #[test]
    fn isometry_algebra() {
        let a = Isometry::<Rational>::Signed { perm: vec![1, 2, 0], negate: vec![true, false, false] };
        let v = vec![r(1), r(2), r(3)];
        assert_eq!(a.apply(&a.inverse().apply(&v)), v);
        assert_eq!(a.compose(&a).apply(&v), a.apply(&a.apply(&v)));
    }
}
