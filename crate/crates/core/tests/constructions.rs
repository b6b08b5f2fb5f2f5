use std::collections::BTreeMap;
use std::sync::Arc;

use labpart::checks::{check_equivariance, Sampler};
use labpart::constructions::*;
use labpart::groups::{ball_enumerate, FiniteGroup, Group, GroupRef, IndexSet};
use labpart::walls::{walls_to_labelled, WallsRef, ZnHalfSpaceWalls};
use labpart::{energy, sep, AutomorphismAction, Energy, Exponent, LabelledPartitionSpace, Point, Rational, Scalar, SpaceRef};
use num_traits::Zero;

fn q(n: u32) -> Exponent {
    Exponent::integer(n).unwrap()
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn exact(e: Energy<Rational>) -> Rational {
    e.exact().cloned().expect("exact energy")
}

fn z_walls(exp: Exponent) -> SpaceRef<Rational> {
    let w: WallsRef<Rational> = Arc::new(ZnHalfSpaceWalls::new(1).unwrap());
    Arc::new(walls_to_labelled(w, exp))
}

fn sparse(entries: &[(i64, Point)]) -> Point {
    Point::Sparse(entries.iter().cloned().collect::<BTreeMap<_, _>>())
}

#[test]
fn pullback_along_doubling() {
    let base = z_walls(q(1));
    let doubled = pullback(
        base.clone(),
        Arc::new(|p: &Point| Ok(Point::Int(2 * p.as_int()?))),
        Arc::new(|p: &Point| matches!(p, Point::Int(_))),
        "n -> 2n",
    );
    let a = energy(&doubled, &Point::Int(0), &Point::Int(3)).unwrap();
    assert_eq!(a, energy(base.as_ref(), &Point::Int(0), &Point::Int(6)).unwrap());
    assert_eq!(exact(a), r(6));

    let constant = pullback(base, Arc::new(|_: &Point| Ok(Point::Int(7))), Arc::new(|_: &Point| true), "const");
    assert!(sep(&constant, &Point::Int(1), &Point::Int(-4)).unwrap().is_empty());
}

#[test]
fn weighted_naive_energies() {
    let pts: Vec<Point> = (0..4).map(Point::Index).collect();
    let three = NaiveSpace::weighted(pts.clone(), r(3), q(2)).unwrap();
    assert_eq!(exact(energy(&three, &pts[0], &pts[2]).unwrap()), r(9));
    let zero = NaiveSpace::weighted(pts.clone(), r(0), q(2)).unwrap();
    assert!(sep(&zero, &pts[0], &pts[1]).unwrap().is_empty());
    assert!(NaiveSpace::weighted(pts, r(-1), q(1)).is_err());
}

#[test]
fn product_of_two_naive_factors() {
    let pts: Vec<Point> = (0..3).map(Point::Index).collect();
    let f: SpaceRef<Rational> = Arc::new(NaiveSpace::new(pts.clone(), q(2)));
    let prod = product_space(vec![f.clone(), f]).unwrap();
    let x = Point::pair(pts[0].clone(), pts[1].clone());
    let y = Point::pair(pts[2].clone(), pts[0].clone());
    assert_eq!(exact(energy(&prod, &x, &y).unwrap()), r(2));
    assert!((labpart::dist(&prod, &x, &y).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    assert!(sep(&prod, &x, &x).unwrap().is_empty());

    let mixed: SpaceRef<Rational> = Arc::new(NaiveSpace::new(pts, q(1)));
    assert!(product_space(vec![mixed, z_walls(q(2))]).is_err());
}

#[test]
fn single_factor_product_is_isometric() {
    let base = z_walls(q(2));
    let prod = product_space(vec![base.clone()]).unwrap();
    for (a, b) in [(0, 4), (-3, 2), (5, 5)] {
        let lhs = energy(&prod, &Point::Tuple(vec![Point::Int(a)]), &Point::Tuple(vec![Point::Int(b)])).unwrap();
        assert_eq!(lhs, energy(base.as_ref(), &Point::Int(a), &Point::Int(b)).unwrap());
    }
}

#[test]
fn proper_sum_two_lamps() {
    let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2));
    let factor = naive_factor::<Rational>(z2.clone(), q(2)).unwrap();
    let sum = proper_sum_space(IndexSet::Integers, factor.clone(), IndexWeight::OnePlusAbs, q(2), vec![-1, 0, 1]).unwrap();
    assert!(sum.warnings.is_empty());
    let w = sparse(&[(-1, Point::Index(1)), (2, Point::Index(1))]);
    let y0 = sum.basepoint();
    let moved = sum.action.act(&w, &y0).unwrap();
    let oracle = exact(energy(sum.space.as_ref(), &moved, &y0).unwrap());
    // naive factor energy 1 at each lamp, plus φ(-1)² = 4 and φ(2)² = 9
    assert_eq!(oracle, r(1 + 4) + r(1 + 9));
    assert_eq!(sum.energy_formula(&w, factor.as_ref()).unwrap(), oracle);
    assert!(exact(energy(sum.space.as_ref(), &y0, &y0).unwrap()).is_zero());
}

#[test]
fn proper_sum_constant_weight_warns() {
    let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2));
    let factor = naive_factor::<Rational>(z2, q(1)).unwrap();
    let sum = proper_sum_space(IndexSet::Integers, factor, IndexWeight::Constant(r(1)), q(1), vec![0]).unwrap();
    assert_eq!(sum.warnings.len(), 1);
}

#[test]
fn infinite_dihedral_orbit_energies() {
    for exp in [q(1), q(2), q(3)] {
        let (space, action) = infinite_dihedral::<Rational>(exp).unwrap();
        let x0 = Point::pair(Point::Int(0), Point::Index(0));
        for n in -4i64..=4 {
            for s in 0..2 {
                let g = Point::pair(Point::Int(n), Point::Index(s));
                let moved = action.act(&g, &x0).unwrap();
                let e = exact(energy(&space, &moved, &x0).unwrap());
                assert_eq!(e, r(n.abs() + s as i64), "n={n} s={s} q={exp}");
            }
        }
        let group = action.group();
        let mut sampler = Sampler::new(11);
        let samples: Vec<_> = (0..60)
            .map(|_| {
                let g = sampler.element(group.as_ref(), 4).unwrap();
                let x = sampler.element(group.as_ref(), 4).unwrap();
                let y = sampler.element(group.as_ref(), 4).unwrap();
                (g, action.act(&x, &x0).unwrap(), action.act(&y, &x0).unwrap())
            })
            .collect();
        let report = check_equivariance(&space, &action, &samples);
        assert!(report.passed, "{report:?}");
    }
}

#[test]
fn semidirect_action_is_an_action() {
    let (_, action) = infinite_dihedral::<Rational>(q(1)).unwrap();
    let group = action.group();
    let x = Point::pair(Point::Int(3), Point::Index(1));
    for a in ball_enumerate(group.as_ref(), 3, &group.generators()).unwrap() {
        for b in ball_enumerate(group.as_ref(), 2, &group.generators()).unwrap() {
            let ab = group.op(&a.0, &b.0).unwrap();
            let lhs = action.act(&a.0, &action.act(&b.0, &x).unwrap()).unwrap();
            assert_eq!(lhs, action.act(&ab, &x).unwrap());
        }
    }
}

#[test]
fn quotient_of_z4_by_order_two() {
    let z4 = Arc::new(FiniteGroup::cyclic(4));
    let g: GroupRef = z4.clone();
    let base: SpaceRef<Rational> = Arc::new(NaiveSpace::on_group(g.clone(), r(1), q(1)).unwrap());
    let quot = quotient_average(base, g, vec![Point::Index(0), Point::Index(2)]).unwrap();
    let e = exact(energy(&quot, &Point::Index(1), &Point::Index(0)).unwrap());
    // four Dirac labels at value ±1/2, weight 1/2
    assert_eq!(e, r(1));
    assert_eq!(quot.k_bound_exact().unwrap(), Some(r(1)));
    assert_eq!(quot.points().unwrap(), vec![Point::Index(0), Point::Index(1)]);
    let all: Vec<Point> = (0..4).map(Point::Index).collect();
    assert!(quotient_bound_report(&quot, &all).unwrap().passed);
}

#[test]
fn trivial_quotient_is_the_base() {
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let g: GroupRef = s3.clone();
    let base: SpaceRef<Rational> = Arc::new(NaiveSpace::on_group(g.clone(), r(1), q(2)).unwrap());
    let quot = quotient_average(base.clone(), g, vec![Point::Index(0)]).unwrap();
    for a in 0..6 {
        for b in 0..6 {
            let (x, y) = (Point::Index(a), Point::Index(b));
            assert_eq!(sep(&quot, &x, &y).unwrap(), sep(base.as_ref(), &x, &y).unwrap());
        }
    }
}

#[test]
fn quotient_rejects_non_subgroup() {
    let z4: GroupRef = Arc::new(FiniteGroup::cyclic(4));
    let base: SpaceRef<Rational> = Arc::new(NaiveSpace::on_group(z4.clone(), r(1), q(1)).unwrap());
    assert!(quotient_average(base, z4, vec![Point::Index(0), Point::Index(1)]).is_err());
}

#[test]
fn lamplighter_on_cycle() {
    let h = Arc::new(FiniteGroup::cyclic(2));
    let glue = lamplighter::<Rational>(h, IndexShift::Cyclic(5), q(2), 0).unwrap();
    let w = sparse(&[(0, Point::Index(1)), (3, Point::Index(1))]);
    let oracle = exact(glue.orbit_energy(&w).unwrap());
    // two differing lamps: wall term 2, naive term 1 per lamp
    assert_eq!(oracle, r(4));
    assert_eq!(glue.energy_formula(&w).unwrap(), oracle);
    assert!(exact(glue.orbit_energy(&sparse(&[])).unwrap()).is_zero());
    assert!(glue.j_r_report(3, 3).unwrap().passed);
}

#[test]
fn lamplighter_actions_are_equivariant() {
    let h = Arc::new(FiniteGroup::cyclic(3));
    let glue = lamplighter::<Rational>(h, IndexShift::Integers, q(1), 0).unwrap();
    let x0 = glue.basepoint();
    let group = glue.group.clone();
    let mut sampler = Sampler::new(5);
    let samples: Vec<_> = (0..80)
        .map(|_| {
            let g = sampler.element(group.as_ref(), 5).unwrap();
            let a = sampler.element(group.as_ref(), 5).unwrap();
            let b = sampler.element(group.as_ref(), 5).unwrap();
            (g, glue.action.act(&a, &x0).unwrap(), glue.action.act(&b, &x0).unwrap())
        })
        .collect();
    assert!(check_equivariance(glue.space.as_ref(), glue.action.as_ref(), &samples).passed);
    for (w, _) in ball_enumerate(glue.lamps.as_ref(), 3, &glue.lamps.generators()).unwrap() {
        assert_eq!(exact(glue.orbit_energy(&w).unwrap()), glue.energy_formula(&w).unwrap());
    }
    let lamp = glue.action.lamp_action();
    let shift = glue.action.shift_action();
    let x = samples[0].1.clone();
    let w = sparse(&[(1, Point::Index(2))]);
    let direct = glue.action.act(&Point::pair(w.clone(), Point::Int(2)), &x).unwrap();
    let composed = lamp.act(&w, &shift.act(&Point::Int(2), &x).unwrap()).unwrap();
    assert_eq!(direct, composed);
}

#[test]
fn lamp_walls_on_integers_fail_the_finiteness_check() {
    let h = Arc::new(FiniteGroup::cyclic(2));
    let glue = lamplighter::<Rational>(h, IndexShift::Integers, q(1), 0).unwrap();
    assert!(!glue.j_r_report(3, 2).unwrap().passed);
}

#[test]
fn direct_sum_action_on_lattice_factors() {
    let walls = Arc::new(ZnHalfSpaceWalls::new(1).unwrap());
    let action: labpart::ActionRef = Arc::new(walls.translation_action());
    let space: SpaceRef<Rational> = {
        let w: WallsRef<Rational> = walls;
        Arc::new(walls_to_labelled(w, q(2)))
    };
    let factor = uniform_factor(space, action, Point::Int(0));
    let sum = proper_sum_space(IndexSet::Finite(vec![0, 1, 2]), factor.clone(), IndexWeight::EnumerationRank, q(2), vec![0, 1, 2]).unwrap();
    let w = sparse(&[(0, Point::Int(3)), (2, Point::Int(-2))]);
    let y0 = sum.basepoint();
    let moved = sum.action.act(&w, &y0).unwrap();
    let oracle = exact(energy(sum.space.as_ref(), &moved, &y0).unwrap());
    // walls energy |n| per factor, φ = 1 + rank: 1 at index 0 and 3 at index 2
    assert_eq!(oracle, r(3 + 1) + r(2 + 9));
    assert_eq!(sum.energy_formula(&w, factor.as_ref()).unwrap(), oracle);
}
