use std::sync::Arc;

use labpart::amalgam::*;
use labpart::checks::{check_equivariance, Sampler};
use labpart::groups::{ball_enumerate, AmalgamGroup, AmalgamWord, FiniteGroup, Group, Letter, Side};
use labpart::walls::{wall_distance, MeasuredWalls};
use labpart::{energy, sep, AutomorphismAction, Exponent, Point, Rational, Scalar};
use proptest::prelude::*;

fn q(n: u32) -> Exponent {
    Exponent::integer(n).unwrap()
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn z4_z6() -> Arc<AmalgamGroup> {
    Arc::new(AmalgamGroup::new(FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), vec![0, 2], vec![0, 3]).unwrap())
}

fn word(g: &AmalgamGroup, ls: &[(Side, usize)]) -> AmalgamWord {
    let ls: Vec<Letter> = ls.iter().map(|&(side, elem)| Letter { side, elem }).collect();
    g.normal_form(&ls).unwrap()
}

fn naive_amalgam(exp: Exponent) -> AmalgamSpace<Rational> {
    let g = z4_z6();
    let left = naive_cosets(&g, Side::Left, exp).unwrap();
    let right = naive_cosets(&g, Side::Right, exp).unwrap();
    amalgam_space(BassSerreTree::new(g), left, right).unwrap()
}

#[test]
fn energy_of_ab() {
    let s = naive_amalgam(q(1));
    let ab = word(s.group(), &[(Side::Left, 1), (Side::Right, 1)]);
    assert_eq!(s.oracle_energy(&ab).unwrap().exact().cloned(), Some(r(4)));
    assert_eq!(s.energy_formula(&ab, TreeTerm::Distance).unwrap(), r(4));
    assert_eq!(s.projection_energy(&ab).unwrap(), r(4));
}

#[test]
fn identity_and_tail_words_have_zero_energy() {
    let s = naive_amalgam(q(2));
    let e = AmalgamWord::identity();
    assert_eq!(s.energy_formula(&e, TreeTerm::Distance).unwrap(), r(0));
    // the generator of C, written in G
    let c = word(s.group(), &[(Side::Left, 2)]);
    assert!(c.letters.is_empty());
    assert_eq!(s.oracle_energy(&c).unwrap().exact().cloned(), Some(r(0)));
    assert_eq!(s.energy_formula(&c, TreeTerm::Distance).unwrap(), r(0));
}

#[test]
fn tree_structure_energy_is_tree_distance() {
    for exp in [q(1), q(2), q(3)] {
        let s = naive_amalgam(exp);
        let g = s.group().clone();
        let ab = word(&g, &[(Side::Left, 1), (Side::Right, 1)]);
        let x = s.orbit_point(&ab);
        let e = energy(s.tree_space.as_ref(), &x, &s.basepoint()).unwrap();
        assert_eq!(e.exact().cloned(), Some(r(2)));
    }
}

#[test]
fn half_tree_membership_matches_separation() {
    let g = z4_z6();
    let tree = BassSerreTree::new(g.clone());
    let walls = TreeWalls::new(tree.clone());
    let ball = ball_enumerate(g.as_ref(), 4, &g.generators()).unwrap();
    let verts: Vec<Point> = ball
        .iter()
        .flat_map(|(w, _)| {
            let w = g.word_of(w).unwrap().clone();
            [Point::Vertex(VertexId::of_word(Side::Left, &w)), Point::Vertex(VertexId::of_word(Side::Right, &w))]
        })
        .take(40)
        .collect();
    for x in &verts {
        for y in &verts {
            let seps = MeasuredWalls::<Rational>::separating(&walls, x, y).unwrap();
            for h in &seps {
                let (a, b) = (
                    MeasuredWalls::<Rational>::holds(&walls, h, x).unwrap(),
                    MeasuredWalls::<Rational>::holds(&walls, h, y).unwrap(),
                );
                assert_ne!(a, b, "{h} should separate {x} and {y}");
            }
            let d = wall_distance::<Rational>(&walls, x, y).unwrap();
            let tv = |p: &Point| match p {
                Point::Vertex(v) => v.clone(),
                _ => unreachable!(),
            };
            assert_eq!(d, r(tree.distance(&tv(x), &tv(y)) as i64));
        }
    }
}

#[test]
fn formula_matches_oracle_on_ball() {
    for exp in [q(1), q(2)] {
        let s = naive_amalgam(exp);
        let report = s.formula_report(4, TreeTerm::Distance).unwrap();
        assert!(report.passed, "{report:?}");
        let g = s.group().clone();
        assert_eq!(report.checked, ball_enumerate(g.as_ref(), 4, &g.generators()).unwrap().len());
    }
}

#[test]
fn wrong_tree_exponent_is_detected() {
    let s = naive_amalgam(q(2));
    let report = s.formula_report(3, TreeTerm::DistancePowQ).unwrap();
    assert!(!report.passed);
    assert!(!report.counterexamples.is_empty());
    let q1 = naive_amalgam(q(1));
    assert!(q1.formula_report(3, TreeTerm::DistancePowQ).unwrap().passed);
}

#[test]
fn amalgam_action_is_equivariant() {
    for exp in [q(1), q(2)] {
        let s = naive_amalgam(exp);
        let g = s.group().clone();
        let mut sampler = Sampler::new(3);
        let samples: Vec<_> = (0..150)
            .map(|_| {
                let a = sampler.element(g.as_ref(), 6).unwrap();
                let x = sampler.element(g.as_ref(), 6).unwrap();
                let y = sampler.element(g.as_ref(), 6).unwrap();
                let side = if sampler.element(g.as_ref(), 1).unwrap() == g.identity() { Side::Left } else { Side::Right };
                let yw = g.word_of(&y).unwrap().clone();
                let py = Point::Total(TotalPoint::from_coset(side, yw));
                (a, s.action.act(&x, &s.basepoint()).unwrap(), py)
            })
            .collect();
        let report = check_equivariance(s.space.as_ref(), s.action.as_ref(), &samples);
        assert!(report.passed, "{report:?}");
    }
}

#[test]
fn projections_and_cosets_commute_with_the_action() {
    let s = naive_amalgam(q(1));
    let g = s.group().clone();
    let ball: Vec<AmalgamWord> = ball_enumerate(g.as_ref(), 4, &g.generators())
        .unwrap()
        .into_iter()
        .map(|(p, _)| g.word_of(&p).unwrap().clone())
        .collect();
    let mut samples = Vec::new();
    let mut pairs = Vec::new();
    let mut probe = Vec::new();
    for (i, w) in ball.iter().enumerate().step_by(7) {
        let v = VertexId::of_word(if i % 2 == 0 { Side::Left } else { Side::Right }, w);
        let x = TotalPoint::from_coset(if i % 3 == 0 { Side::Right } else { Side::Left }, ball[(i * 5) % ball.len()].clone());
        samples.push((ball[(i * 11) % ball.len()].clone(), v.clone(), x.clone()));
        pairs.push((Point::Total(x), s.orbit_point(&ball[(i * 13) % ball.len()])));
        probe.push(v);
    }
    assert!(s.tree_action_report(&samples).unwrap().passed);
    assert!(s.support_bound_report(&pairs, &probe).unwrap().passed);
}

#[test]
fn proper_amalgam_from_naive_factors() {
    let g = z4_z6();
    for exp in [q(1), q(2)] {
        let [left, right] = naive_factors::<Rational>(&g, exp).unwrap();
        let s = proper_amalgam_from_factors(g.clone(), left, right).unwrap();
        assert!(s.formula_report(3, TreeTerm::Distance).unwrap().passed);
        let ab = word(&g, &[(Side::Left, 1), (Side::Right, 1)]);
        let e = s.oracle_energy(&ab).unwrap().exact().cloned().unwrap();
        if exp == q(1) {
            assert_eq!(e, r(4));
        }
    }
}

#[test]
fn trivial_common_subgroup() {
    let g = Arc::new(AmalgamGroup::new(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), vec![0], vec![0]).unwrap());
    let [left, right] = naive_factors::<Rational>(&g, q(1)).unwrap();
    let s = proper_amalgam_from_factors(g.clone(), left, right).unwrap();
    for (p, _) in ball_enumerate(g.as_ref(), 5, &g.generators()).unwrap() {
        let w = g.word_of(&p).unwrap();
        // one unit per non-trivial letter, plus the tree distance
        let d = BassSerreTree::new(g.clone()).depth(&VertexId::of_word(Side::Left, w));
        let expected = r((w.letters.len() + d) as i64);
        assert_eq!(s.oracle_energy(w).unwrap().exact().cloned(), Some(expected));
    }
}

#[test]
fn mismatched_exponents_rejected() {
    let g = z4_z6();
    let left = naive_cosets::<Rational>(&g, Side::Left, q(1)).unwrap();
    let right = naive_cosets::<Rational>(&g, Side::Right, q(2)).unwrap();
    assert!(amalgam_space(BassSerreTree::new(g), left, right).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn chasles_on_total_space(
        a in prop::collection::vec((any::<bool>(), 1usize..6), 0..6),
        b in prop::collection::vec((any::<bool>(), 1usize..6), 0..6),
        c in prop::collection::vec((any::<bool>(), 1usize..6), 0..6),
    ) {
        let s = naive_amalgam(q(2));
        let g = s.group().clone();
        let to = |ls: &[(bool, usize)]| {
            let letters: Vec<Letter> = ls.iter().map(|&(l, e)| if l { Letter { side: Side::Left, elem: e % 4 } } else { Letter { side: Side::Right, elem: e } }).collect();
            s.orbit_point(&g.normal_form(&letters).unwrap())
        };
        let (x, y, z) = (to(&a), to(&b), to(&c));
        let lhs = sep(s.space.as_ref(), &x, &z).unwrap();
        let rhs = sep(s.space.as_ref(), &x, &y).unwrap() + sep(s.space.as_ref(), &y, &z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
