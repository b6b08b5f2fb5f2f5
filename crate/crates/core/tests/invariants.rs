use std::sync::Arc;

use labpart::structures::{cocycle_space, free_tree_mineyev, CocycleAction};
use labpart::walls::{walls_to_labelled, WallsRef, ZnHalfSpaceWalls};
use labpart::{dist, energy, sep, AutomorphismAction, Energy, Exponent, Point, Rational, Scalar};
use proptest::prelude::*;

fn plane(q: u32) -> (labpart::SpaceRef<Rational>, labpart::ActionRef) {
    let walls = Arc::new(ZnHalfSpaceWalls::new(2).unwrap());
    let action: labpart::ActionRef = Arc::new(walls.translation_action());
    let w: WallsRef<Rational> = walls;
    (Arc::new(walls_to_labelled(w, Exponent::integer(q).unwrap())), action)
}

fn lattice() -> impl Strategy<Value = Point> {
    (-6i64..=6, -6i64..=6).prop_map(|(a, b)| Point::Lattice(vec![a, b]))
}

fn coords(p: &Point) -> Vec<i64> {
    match p {
        Point::Lattice(v) => v.clone(),
        _ => unreachable!(),
    }
}

proptest! {
    #[test]
    fn plane_energy_is_taxicab(x in lattice(), y in lattice(), q in 1u32..=3) {
        let (space, _) = plane(q);
        let l1: i64 = coords(&x).iter().zip(coords(&y)).map(|(a, b)| (a - b).abs()).sum();
        prop_assert_eq!(energy(space.as_ref(), &x, &y).unwrap(), Energy::Exact(Rational::from_int(l1)));
    }

    #[test]
    fn separation_is_additive_and_antisymmetric(x in lattice(), y in lattice(), z in lattice()) {
        let (space, _) = plane(2);
        let s = |a: &Point, b: &Point| sep(space.as_ref(), a, b).unwrap();
        prop_assert_eq!(s(&x, &y) + s(&y, &z), s(&x, &z));
        prop_assert_eq!(-s(&x, &y), s(&y, &x));
    }

    #[test]
    fn triangle_inequality(x in lattice(), y in lattice(), z in lattice(), q in 1u32..=3) {
        let (space, _) = plane(q);
        let d = |a: &Point, b: &Point| dist(space.as_ref(), a, b).unwrap();
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-9);
    }

    #[test]
    fn translations_are_isometries(g in lattice(), x in lattice(), y in lattice()) {
        let (space, action) = plane(2);
        let (gx, gy) = (action.act(&g, &x).unwrap(), action.act(&g, &y).unwrap());
        prop_assert_eq!(energy(space.as_ref(), &gx, &gy).unwrap(), energy(space.as_ref(), &x, &y).unwrap());
    }

    #[test]
    fn lattice_cocycle_identity(g in lattice(), h in lattice()) {
        let text = "group lattice 2\ndim 2\nq 1\ngen 0 perm 0 1 sign + + shift 2 0\ngen 1 perm 0 1 sign + + shift 1 3\n";
        let cocycle = CocycleAction::<Rational>::from_text(text).unwrap();
        prop_assert!(cocycle.identity_report(&[(g.clone(), h.clone())]).passed);
        let (space, _) = cocycle_space(cocycle);
        let (a, b) = (coords(&g), coords(&h));
        // b(m, n) = (2m + n, 3n)
        let l1 = (2 * (a[0] - b[0]) + a[1] - b[1]).abs() + 3 * (a[1] - b[1]).abs();
        prop_assert_eq!(energy(&space, &g, &h).unwrap(), Energy::Exact(Rational::from_int(l1)));
    }

    #[test]
    fn mineyev_energy_grows_with_distance(steps in prop::collection::vec(0usize..4, 0..8)) {
        let (space, action) = free_tree_mineyev::<Rational>(2, Exponent::integer(1).unwrap()).unwrap();
        let group = action.group();
        let gens = group.generators();
        let letter = |k: usize| if k < 2 { gens[k].clone() } else { group.inv(&gens[k - 2]).unwrap() };
        let g = steps.iter().fold(group.identity(), |acc, &k| group.op(&acc, &letter(k)).unwrap());
        let len = match &g {
            Point::Free(w) => w.len() as i64,
            _ => unreachable!(),
        };
        let want = if len == 0 { 0 } else { 2 * (len + 1) };
        prop_assert_eq!(energy(&space, &g, &group.identity()).unwrap(), Energy::Exact(Rational::from_int(want)));
    }
}
