use serde::Serialize;

use super::{CosetTable, FiniteGroup, Group};
use crate::error::{Error, Result};
use crate::point::Point;

/// Which factor of `G ∗_C H` a letter comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    /// `G`
    Left,
    /// `H`
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub side: Side,
    /// Element index in the factor on `side`.
    pub elem: usize,
}

/// Reduced word: alternating non-trivial coset representatives followed by
/// a tail in `C` (index into the common subgroup, `0` is the identity).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmalgamWord {
    pub letters: Vec<Letter>,
    pub tail: usize,
}

impl AmalgamWord {
    pub fn identity() -> Self {
        AmalgamWord::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word with its tail dropped (a canonical `C`-coset representative).
    pub fn coset_rep(&self) -> AmalgamWord {
        AmalgamWord { letters: self.letters.clone(), tail: 0 }
    }

    /// Prefix of the first `k` letters with trivial tail.
    pub fn prefix(&self, k: usize) -> AmalgamWord {
        AmalgamWord { letters: self.letters[..k].to_vec(), tail: 0 }
    }
}

/// `G ∗_C H` for finite `G`, `H`.
#[derive(Clone, Debug)]
pub struct AmalgamGroup {
    left: FiniteGroup,
    right: FiniteGroup,
    common: FiniteGroup,
    common_left: Vec<usize>,
    common_right: Vec<usize>,
    left_to_c: Vec<Option<usize>>,
    right_to_c: Vec<Option<usize>>,
    left_cosets: CosetTable,
    right_cosets: CosetTable,
    generators: Vec<Letter>,
}

impl AmalgamGroup {
    /// `common_left[k]` and `common_right[k]` are the images of the same
    /// element of `C`.
    pub fn new(left: FiniteGroup, right: FiniteGroup, common_left: Vec<usize>, common_right: Vec<usize>) -> Result<Self> {
        if common_left.len() != common_right.len() {
            return Err(Error::invalid("common subgroup images have different sizes"));
        }
        let mut pairs: Vec<(usize, usize)> = common_left.into_iter().zip(common_right).collect();
        let e = pairs
            .iter()
            .position(|&(a, b)| a == left.identity_index() && b == right.identity_index())
            .ok_or_else(|| Error::invalid("identities of G and H are not paired in C"))?;
        let first = pairs.remove(e);
        pairs.insert(0, first);
        let (common_left, common_right): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
        let m = common_left.len();

        let inverse_map = |images: &[usize], n: usize, label: &str| -> Result<Vec<Option<usize>>> {
            let mut back = vec![None; n];
            for (k, &x) in images.iter().enumerate() {
                if x >= n {
                    return Err(Error::invalid(format!("{label} image {x} out of range")));
                }
                if back[x].replace(k).is_some() {
                    return Err(Error::invalid(format!("{label} embedding is not injective")));
                }
            }
            Ok(back)
        };
        let left_to_c = inverse_map(&common_left, left.order(), "left")?;
        let right_to_c = inverse_map(&common_right, right.order(), "right")?;
        if !left.is_subgroup(&common_left) || !right.is_subgroup(&common_right) {
            return Err(Error::invalid("common subgroup images are not subgroups"));
        }
        let mut table = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..m {
                let k = left_to_c[left.mul(common_left[i], common_left[j])].expect("closed subgroup");
                if right.mul(common_right[i], common_right[j]) != common_right[k] {
                    return Err(Error::invalid(format!(
                        "embeddings disagree on the product of common elements {i} and {j}"
                    )));
                }
                table[i][j] = k;
            }
        }
        let common = FiniteGroup::new("C", table, (1..m).collect())?;
        let left_cosets = CosetTable::new(&left, &common_left)?;
        let right_cosets = CosetTable::new(&right, &common_right)?;
        let mut generators: Vec<Letter> = left
            .generator_indices()
            .iter()
            .map(|&g| Letter { side: Side::Left, elem: g })
            .collect();
        generators.extend(right.generator_indices().iter().map(|&h| Letter { side: Side::Right, elem: h }));
        Ok(AmalgamGroup {
            left,
            right,
            common,
            common_left,
            common_right,
            left_to_c,
            right_to_c,
            left_cosets,
            right_cosets,
            generators,
        })
    }

    /// Replaces the default generating set (factor generators).
    pub fn with_generators(mut self, generators: Vec<Letter>) -> Result<Self> {
        for l in &generators {
            if l.elem >= self.factor(l.side).order() {
                return Err(Error::invalid(format!("generator {l:?} out of range")));
            }
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn factor(&self, side: Side) -> &FiniteGroup {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn cosets(&self, side: Side) -> &CosetTable {
        match side {
            Side::Left => &self.left_cosets,
            Side::Right => &self.right_cosets,
        }
    }

    pub fn common(&self) -> &FiniteGroup {
        &self.common
    }

    /// Image of `c ∈ C` in the factor on `side`.
    pub fn embed(&self, side: Side, c: usize) -> usize {
        match side {
            Side::Left => self.common_left[c],
            Side::Right => self.common_right[c],
        }
    }

    pub fn common_images(&self, side: Side) -> &[usize] {
        match side {
            Side::Left => &self.common_left,
            Side::Right => &self.common_right,
        }
    }

    /// Index in `C` of a factor element lying in the common subgroup.
    pub fn to_common(&self, side: Side, x: usize) -> Option<usize> {
        match side {
            Side::Left => self.left_to_c[x],
            Side::Right => self.right_to_c[x],
        }
    }

    /// `x = rep · ι(c)`.
    fn split(&self, side: Side, x: usize) -> (usize, usize) {
        let t = self.cosets(side);
        let c = self.to_common(side, t.factor(x)).expect("coset factor lies in C");
        (t.rep(x), c)
    }

    /// Pushes `ι(c)` through `letters[start..]` into the tail.
    fn propagate(&self, mut c: usize, letters: &mut [Letter], tail: usize) -> usize {
        for letter in letters.iter_mut() {
            let g = self.factor(letter.side);
            let y = g.mul(self.embed(letter.side, c), letter.elem);
            let (r, c2) = self.split(letter.side, y);
            letter.elem = r;
            c = c2;
        }
        self.common.mul(c, tail)
    }

    /// Normal form of `x · word` for a factor element `x`.
    pub fn left_mul(&self, side: Side, x: usize, word: &AmalgamWord) -> AmalgamWord {
        let mut letters = word.letters.clone();
        let e = self.factor(side).identity_index();
        let (start, c) = match letters.first() {
            Some(first) if first.side == side => {
                let (r, c) = self.split(side, self.factor(side).mul(x, first.elem));
                if r == e {
                    letters.remove(0);
                    (0, c)
                } else {
                    letters[0].elem = r;
                    (1, c)
                }
            }
            _ => {
                let (r, c) = self.split(side, x);
                if r == e {
                    (0, c)
                } else {
                    letters.insert(0, Letter { side, elem: r });
                    (1, c)
                }
            }
        };
        let tail = self.propagate(c, &mut letters[start..], word.tail);
        AmalgamWord { letters, tail }
    }

    /// The unique reduced word equal to the product of `letters`.
    pub fn normal_form(&self, letters: &[Letter]) -> Result<AmalgamWord> {
        let mut w = AmalgamWord::identity();
        for l in letters.iter().rev() {
            if l.elem >= self.factor(l.side).order() {
                return Err(Error::domain(format!("letter {l:?} out of range")));
            }
            w = self.left_mul(l.side, l.elem, &w);
        }
        Ok(w)
    }

    /// Letters of `w` with the tail written as a trailing `G` letter.
    pub fn expand(&self, w: &AmalgamWord) -> Vec<Letter> {
        let mut out = w.letters.clone();
        if w.tail != 0 {
            out.push(Letter { side: Side::Left, elem: self.embed(Side::Left, w.tail) });
        }
        out
    }

    pub fn multiply(&self, u: &AmalgamWord, v: &AmalgamWord) -> AmalgamWord {
        let mut w = v.clone();
        for l in self.expand(u).iter().rev() {
            w = self.left_mul(l.side, l.elem, &w);
        }
        w
    }

    pub fn inverse(&self, u: &AmalgamWord) -> AmalgamWord {
        let inv: Vec<Letter> = self
            .expand(u)
            .iter()
            .rev()
            .map(|l| Letter { side: l.side, elem: self.factor(l.side).inverse(l.elem) })
            .collect();
        self.normal_form(&inv).expect("inverse letters are in range")
    }

    pub fn letter_word(&self, l: Letter) -> AmalgamWord {
        self.left_mul(l.side, l.elem, &AmalgamWord::identity())
    }

    pub fn is_reduced(&self, w: &AmalgamWord) -> bool {
        w.tail < self.common.order()
            && w.letters.windows(2).all(|p| p[0].side != p[1].side)
            && w.letters.iter().all(|l| {
                let g = self.factor(l.side);
                l.elem < g.order() && l.elem != g.identity_index() && self.cosets(l.side).is_rep(l.elem)
            })
    }

    /// Pairs `(g_k, h_k)` with `γ = g₁h₁⋯g_nh_n·c`, padding the identity
    /// where the word starts with `H` or ends with `G`.
    pub fn syllable_pairs(&self, w: &AmalgamWord) -> Vec<(usize, usize)> {
        let eg = self.left.identity_index();
        let eh = self.right.identity_index();
        let mut out = Vec::new();
        let mut i = 0;
        while i < w.letters.len() {
            let l = w.letters[i];
            match l.side {
                Side::Right => {
                    out.push((eg, l.elem));
                    i += 1;
                }
                Side::Left => {
                    let h = match w.letters.get(i + 1) {
                        Some(next) => {
                            i += 1;
                            next.elem
                        }
                        None => eh,
                    };
                    out.push((l.elem, h));
                    i += 1;
                }
            }
        }
        out
    }
}

impl Group for AmalgamGroup {
    fn name(&self) -> String {
        format!("{} *_C {}", self.left.name(), self.right.name())
    }

    fn identity(&self) -> Point {
        Point::Word(AmalgamWord::identity())
    }

    fn op(&self, a: &Point, b: &Point) -> Result<Point> {
        Ok(Point::Word(self.multiply(self.word_of(a)?, self.word_of(b)?)))
    }

    fn inv(&self, a: &Point) -> Result<Point> {
        Ok(Point::Word(self.inverse(self.word_of(a)?)))
    }

    fn contains(&self, a: &Point) -> bool {
        matches!(a, Point::Word(w) if self.is_reduced(w))
    }

    fn generators(&self) -> Vec<Point> {
        self.generators.iter().map(|&l| Point::Word(self.letter_word(l))).collect()
    }
}

impl AmalgamGroup {
    pub fn word_of<'a>(&self, p: &'a Point) -> Result<&'a AmalgamWord> {
        match p {
            Point::Word(w) if self.is_reduced(w) => Ok(w),
            other => Err(Error::domain(format!("{other} is not a reduced word of {}", self.name()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ball_enumerate;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    pub(crate) fn z4_z6() -> AmalgamGroup {
        AmalgamGroup::new(FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), vec![0, 2], vec![0, 3]).unwrap()
    }

    fn g(e: usize) -> Letter {
        Letter { side: Side::Left, elem: e }
    }

    fn h(e: usize) -> Letter {
        Letter { side: Side::Right, elem: e }
    }

    #[test]
    fn normal_form_examples() {
        let a = z4_z6();
        assert_eq!(a.normal_form(&[]).unwrap(), AmalgamWord::identity());
        let w = a.normal_form(&[g(1), g(1)]).unwrap();
        assert!(w.letters.is_empty());
        assert_eq!(a.embed(Side::Left, w.tail), 2);
        let w = a.normal_form(&[h(2), h(2)]).unwrap();
        assert_eq!(w.letters, vec![h(1)]);
        assert_eq!(a.embed(Side::Right, w.tail), 3);
    }

    #[test]
    fn abab_does_not_cancel() {
        let a = z4_z6();
        let ab = a.normal_form(&[g(1), h(1)]).unwrap();
        let w = a.multiply(&ab, &ab);
        assert_eq!(w.letters, vec![g(1), h(1), g(1), h(1)]);
        assert_eq!(a.syllable_pairs(&w).len(), 2);
        assert!(a.multiply(&w, &a.inverse(&w)).letters.is_empty());
    }

    #[test]
    fn syllable_padding() {
        let a = z4_z6();
        let w = a.normal_form(&[h(1), g(1)]).unwrap();
        assert_eq!(a.syllable_pairs(&w), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn rejects_bad_common_subgroup() {
        assert!(AmalgamGroup::new(FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), vec![0, 1], vec![0, 3]).is_err());
        assert!(AmalgamGroup::new(FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), vec![0, 2], vec![0]).is_err());
    }

    #[test]
    fn radius_two_ball_matches_brute_force() {
        let a = z4_z6();
        let ball: BTreeSet<Point> = ball_enumerate(&a, 2, &a.generators())
            .unwrap()
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        let steps = [g(1), g(3), h(1), h(5)];
        let mut brute = BTreeSet::from([a.identity()]);
        for s in steps {
            brute.insert(Point::Word(a.normal_form(&[s]).unwrap()));
            for t in steps {
                brute.insert(Point::Word(a.normal_form(&[s, t]).unwrap()));
            }
        }
        assert_eq!(ball, brute);
    }

    fn letters() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(
            prop_oneof![(0usize..4).prop_map(g), (0usize..6).prop_map(h)],
            0..10,
        )
    }

    proptest! {
        #[test]
        fn normal_form_is_idempotent_and_reduced(ls in letters()) {
            let a = z4_z6();
            let w = a.normal_form(&ls).unwrap();
            prop_assert!(a.is_reduced(&w));
            prop_assert_eq!(a.normal_form(&a.expand(&w)).unwrap(), w);
        }

        #[test]
        fn multiplication_associative(x in letters(), y in letters(), z in letters()) {
            let a = z4_z6();
            let (x, y, z) = (a.normal_form(&x).unwrap(), a.normal_form(&y).unwrap(), a.normal_form(&z).unwrap());
            prop_assert_eq!(a.multiply(&a.multiply(&x, &y), &z), a.multiply(&x, &a.multiply(&y, &z)));
            prop_assert_eq!(a.multiply(&x, &AmalgamWord::identity()), x.clone());
            prop_assert!(a.multiply(&a.inverse(&x), &x) == AmalgamWord::identity());
        }

        #[test]
        fn concatenation_matches_multiplication(x in letters(), y in letters()) {
            let a = z4_z6();
            let joined: Vec<Letter> = x.iter().chain(y.iter()).copied().collect();
            prop_assert_eq!(
                a.normal_form(&joined).unwrap(),
                a.multiply(&a.normal_form(&x).unwrap(), &a.normal_form(&y).unwrap())
            );
        }
    }
}
