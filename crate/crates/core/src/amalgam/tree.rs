use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{AmalgamGroup, AmalgamWord, Letter, Side};
use crate::point::Point;

/// A vertex `γG` (`Left`) or `γH` (`Right`) of the Bass–Serre tree, named
/// by the canonical representative: a reduced word with trivial tail not
/// ending in a letter of its own side.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub side: Side,
    pub rep: AmalgamWord,
}

impl VertexId {
    /// `G` itself.
    pub fn base(side: Side) -> Self {
        VertexId { side, rep: AmalgamWord::identity() }
    }

    /// The vertex `γG` or `γH` containing `γ`.
    pub fn of_word(side: Side, gamma: &AmalgamWord) -> Self {
        let mut rep = gamma.coset_rep();
        if rep.letters.last().map(|l| l.side) == Some(side) {
            rep.letters.pop();
        }
        VertexId { side, rep }
    }
}

/// A point `γgC` of the vertex space `X_v`, stored through its canonical
/// `C`-coset representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TotalPoint {
    vertex: VertexId,
    coset: AmalgamWord,
}

impl TotalPoint {
    pub fn from_coset(side: Side, coset: AmalgamWord) -> Self {
        let coset = coset.coset_rep();
        TotalPoint { vertex: VertexId::of_word(side, &coset), coset }
    }

    /// The point `C` of `X_G`.
    pub fn base() -> Self {
        Self::from_coset(Side::Left, AmalgamWord::identity())
    }

    pub fn side(&self) -> Side {
        self.vertex.side
    }

    pub fn vertex(&self) -> &VertexId {
        &self.vertex
    }

    pub fn coset(&self) -> &AmalgamWord {
        &self.coset
    }
}

/// The tree of `C`-coset spaces of an amalgam.
#[derive(Clone)]
pub struct BassSerreTree {
    group: Arc<AmalgamGroup>,
}

impl BassSerreTree {
    pub fn new(group: Arc<AmalgamGroup>) -> Self {
        BassSerreTree { group }
    }

    pub fn group(&self) -> &Arc<AmalgamGroup> {
        &self.group
    }

    pub fn is_vertex(&self, v: &VertexId) -> bool {
        v.rep.tail == 0
            && self.group.is_reduced(&v.rep)
            && v.rep.letters.last().map(|l| l.side) != Some(v.side)
    }

    pub fn is_point(&self, x: &TotalPoint) -> bool {
        x.coset.tail == 0 && self.group.is_reduced(&x.coset)
    }

    pub fn vertex_point<'a>(&self, p: &'a Point) -> Result<&'a VertexId> {
        match p {
            Point::Vertex(v) if self.is_vertex(v) => Ok(v),
            other => Err(Error::domain(format!("{other} is not a tree vertex"))),
        }
    }

    pub fn total_point<'a>(&self, p: &'a Point) -> Result<&'a TotalPoint> {
        match p {
            Point::Total(x) if self.is_point(x) => Ok(x),
            other => Err(Error::domain(format!("{other} is not a point of the total space"))),
        }
    }

    /// Geodesic from `G` to `v`.
    pub fn root_path(&self, v: &VertexId) -> Vec<VertexId> {
        let letters = &v.rep.letters;
        let mut path = vec![VertexId::base(Side::Left)];
        if letters.first().map(|l| l.side) == Some(Side::Right)
            || (letters.is_empty() && v.side == Side::Right)
        {
            path.push(VertexId::base(Side::Right));
        }
        for (i, l) in letters.iter().enumerate() {
            path.push(VertexId { side: l.side.other(), rep: v.rep.prefix(i + 1) });
        }
        path
    }

    /// `d_T(G, v)`.
    pub fn depth(&self, v: &VertexId) -> usize {
        self.root_path(v).len() - 1
    }

    /// The unique edge path from `v` to `w`, endpoints included.
    pub fn vertex_path(&self, v: &VertexId, w: &VertexId) -> Vec<VertexId> {
        let pv = self.root_path(v);
        let pw = self.root_path(w);
        let k = pv.iter().zip(&pw).take_while(|(a, b)| a == b).count();
        let mut path: Vec<VertexId> = pv[k - 1..].iter().rev().cloned().collect();
        path.extend(pw[k..].iter().cloned());
        path
    }

    pub fn distance(&self, v: &VertexId, w: &VertexId) -> usize {
        self.vertex_path(v, w).len() - 1
    }

    /// The edge `γC` joining adjacent vertices.
    pub fn edge(&self, v: &VertexId, w: &VertexId) -> Result<AmalgamWord> {
        let e = if v.rep.len() >= w.rep.len() { &v.rep } else { &w.rep };
        let adjacent = v.side != w.side
            && VertexId::of_word(v.side, e) == *v
            && VertexId::of_word(w.side, e) == *w;
        if adjacent {
            Ok(e.clone())
        } else {
            Err(Error::domain("vertices are not adjacent"))
        }
    }

    /// `π_v(x)`: `x` if it lies in `X_v`, otherwise the edge point of the
    /// first edge from `v` toward `x`.
    pub fn project(&self, v: &VertexId, x: &TotalPoint) -> TotalPoint {
        if x.vertex == *v {
            return x.clone();
        }
        let path = self.vertex_path(v, &x.vertex);
        let e = self.edge(&path[0], &path[1]).expect("consecutive path vertices are adjacent");
        TotalPoint { vertex: v.clone(), coset: e }
    }

    /// `f_v : X_v → G/C` (or `H/C`), returning the coset representative index.
    pub fn local_coset(&self, x: &TotalPoint) -> usize {
        let side = x.side();
        match x.coset.letters.last() {
            Some(l) if l.side == side => l.elem,
            _ => self.group.factor(side).identity_index(),
        }
    }

    /// `γ·v`.
    pub fn act_vertex(&self, gamma: &AmalgamWord, v: &VertexId) -> VertexId {
        VertexId::of_word(v.side, &self.group.multiply(gamma, &v.rep))
    }

    /// `γ·x`.
    pub fn act_point(&self, gamma: &AmalgamWord, x: &TotalPoint) -> TotalPoint {
        TotalPoint::from_coset(x.side(), self.group.multiply(gamma, &x.coset))
    }

    /// The factor element `r_v⁻¹ γ r_u` for `u = γ⁻¹v`, which carries `X_u`
    /// onto `X_v` in local coordinates.
    pub fn local_element(&self, gamma: &AmalgamWord, u: &VertexId, v: &VertexId) -> Result<usize> {
        let grp = &self.group;
        let w = grp.multiply(&grp.multiply(&grp.inverse(&v.rep), gamma), &u.rep);
        let side = v.side;
        match w.letters.as_slice() {
            [] => Ok(grp.embed(side, w.tail)),
            [Letter { side: s, elem }] if *s == side => Ok(grp.factor(side).mul(*elem, grp.embed(side, w.tail))),
            _ => Err(Error::domain("element does not map the vertices onto each other")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    fn tree() -> BassSerreTree {
        let a = AmalgamGroup::new(FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), vec![0, 2], vec![0, 3]).unwrap();
        BassSerreTree::new(Arc::new(a))
    }

    fn word(t: &BassSerreTree, ls: &[(Side, usize)]) -> AmalgamWord {
        let ls: Vec<Letter> = ls.iter().map(|&(side, elem)| Letter { side, elem }).collect();
        t.group().normal_form(&ls).unwrap()
    }

    #[test]
    fn path_g_to_abg() {
        let t = tree();
        let ab = word(&t, &[(Side::Left, 1), (Side::Right, 1)]);
        let target = VertexId::of_word(Side::Left, &ab);
        let path = t.vertex_path(&VertexId::base(Side::Left), &target);
        let a = word(&t, &[(Side::Left, 1)]);
        assert_eq!(
            path,
            vec![VertexId::base(Side::Left), VertexId { side: Side::Right, rep: a }, target]
        );
        assert_eq!(t.distance(&VertexId::base(Side::Left), &VertexId::base(Side::Right)), 1);
        let v = VertexId::base(Side::Right);
        assert_eq!(t.vertex_path(&v, &v), vec![v]);
    }

    #[test]
    fn projection_to_neighbour() {
        let t = tree();
        let a = word(&t, &[(Side::Left, 1)]);
        let v = VertexId { side: Side::Right, rep: a.clone() };
        let p = t.project(&v, &TotalPoint::base());
        assert_eq!(p, TotalPoint::from_coset(Side::Right, a));
    }

    #[test]
    fn paths_are_geodesics_between_random_vertices() {
        let t = tree();
        let words = [
            word(&t, &[(Side::Left, 1), (Side::Right, 2), (Side::Left, 1)]),
            word(&t, &[(Side::Right, 1), (Side::Left, 1)]),
            word(&t, &[(Side::Left, 1), (Side::Right, 1)]),
        ];
        for u in &words {
            for w in &words {
                for su in [Side::Left, Side::Right] {
                    for sw in [Side::Left, Side::Right] {
                        let (a, b) = (VertexId::of_word(su, u), VertexId::of_word(sw, w));
                        let p = t.vertex_path(&a, &b);
                        assert_eq!(p.first(), Some(&a));
                        assert_eq!(p.last(), Some(&b));
                        for pair in p.windows(2) {
                            assert!(t.edge(&pair[0], &pair[1]).is_ok());
                        }
                        assert_eq!(p.len(), t.vertex_path(&b, &a).len());
                    }
                }
            }
        }
    }
}
