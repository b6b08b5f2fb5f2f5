//! Acceptance criteria, one line of output per criterion.
//!
//! Run with `cargo test -p labpart --test acceptance -- --nocapture` to see
//! the report.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use labpart::amalgam::*;
use labpart::checks::{check_equivariance, CheckReport, Sampler};
use labpart::constructions::*;
use labpart::groups::{ball_enumerate, AmalgamGroup, FiniteGroup, Group, GroupRef, IndexSet, Letter, Side};
use labpart::profile::growth_profile;
use labpart::structures::*;
use labpart::walls::{walls_to_labelled, FiniteWalls, WallsRef, ZnHalfSpaceWalls};
use labpart::{energy, ActionRef, AutomorphismAction, Energy, Exponent, Point, Rational, Scalar, SpaceRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q(n: u32) -> Exponent {
    Exponent::integer(n).unwrap()
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn exact(e: &Energy<Rational>) -> Rational {
    e.exact().cloned().expect("exact energy")
}

fn require(report: &CheckReport) -> Result<usize, String> {
    if report.passed {
        Ok(report.checked)
    } else {
        Err(format!("{}: {} of {} failed, e.g. {:?}", report.name, report.failures, report.checked, report.counterexamples.first()))
    }
}

fn lattice_walls(dim: usize, exp: Exponent) -> (SpaceRef<Rational>, ActionRef) {
    let walls = Arc::new(ZnHalfSpaceWalls::new(dim).unwrap());
    let action: ActionRef = Arc::new(walls.translation_action());
    let w: WallsRef<Rational> = walls;
    (Arc::new(walls_to_labelled(w, exp)), action)
}

fn z4_z6() -> Arc<AmalgamGroup> {
    Arc::new(AmalgamGroup::new(FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), vec![0, 2], vec![0, 3]).unwrap())
}

fn naive_amalgam(exp: Exponent) -> AmalgamSpace<Rational> {
    let g = z4_z6();
    let left = naive_cosets(&g, Side::Left, exp).unwrap();
    let right = naive_cosets(&g, Side::Right, exp).unwrap();
    amalgam_space(BassSerreTree::new(g), left, right).unwrap()
}

fn lamps(entries: impl IntoIterator<Item = i64>) -> Point {
    Point::Sparse(entries.into_iter().map(|i| (i, Point::Index(1))).collect::<BTreeMap<_, _>>())
}

fn orbit_samples(
    action: &dyn AutomorphismAction,
    basepoint: &Point,
    n: usize,
    max_len: usize,
    seed: u64,
) -> Vec<(Point, Point, Point)> {
    let group = action.group();
    let mut sampler = Sampler::new(seed);
    (0..n)
        .map(|_| {
            let g = sampler.element(group.as_ref(), max_len).unwrap();
            let a = sampler.element(group.as_ref(), max_len).unwrap();
            let b = sampler.element(group.as_ref(), max_len).unwrap();
            (g, action.act(&a, basepoint).unwrap(), action.act(&b, basepoint).unwrap())
        })
        .collect()
}

fn element_pairs(group: &dyn Group, n: usize, max_len: usize, seed: u64) -> Vec<(Point, Point)> {
    let mut sampler = Sampler::new(seed);
    (0..n)
        .map(|_| (sampler.element(group, max_len).unwrap(), sampler.element(group, max_len).unwrap()))
        .collect()
}

fn naive_identity() -> Outcome {
    let pts: Vec<Point> = (0..6).map(Point::Index).collect();
    let mut pairs = 0;
    for exp in [q(1), q(2), q(3)] {
        let space = NaiveSpace::<Rational>::new(pts.clone(), exp);
        for x in &pts {
            for y in pts.iter().filter(|y| *y != x) {
                let e = energy(&space, x, y).map_err(|e| e.to_string())?;
                if e != Energy::Exact(r(1)) {
                    return Err(format!("q={exp}: energy({x},{y}) = {e}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs"))
}

fn walls_identity() -> Outcome {
    let mut pairs = 0;
    let grid: Vec<(i64, i64)> = (0..7).flat_map(|a| (0..7).map(move |b| (a, b))).collect();
    for exp in [q(1), q(2)] {
        let (space, _) = lattice_walls(2, exp);
        for &(a, b) in &grid {
            for &(c, d) in &grid {
                let l1 = (a - c).abs() + (b - d).abs();
                let e = energy(space.as_ref(), &Point::Lattice(vec![a, b]), &Point::Lattice(vec![c, d])).map_err(|e| e.to_string())?;
                if e != Energy::Exact(r(l1)) {
                    return Err(format!("q={exp}: ({a},{b}) to ({c},{d}) gave {e}, expected {l1}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn metric_realization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pairs = 0;
    for _ in 0..5 {
        let n = rng.gen_range(2..=8);
        let metric = FiniteMetric::<Rational>::random(n, &mut rng);
        let space = metric_realization_space(metric.clone());
        for i in 0..n {
            for j in 0..n {
                let e = energy(&space, &Point::Index(i), &Point::Index(j)).map_err(|e| e.to_string())?;
                if e != Energy::Exact(metric.d(i, j).clone()) {
                    return Err(format!("d({i},{j}) = {} but SUP energy is {e}", metric.d(i, j)));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("5 metrics, {pairs} pairs"))
}

fn product_additivity() -> Outcome {
    let exp = q(2);
    let pts: Vec<Point> = (0..5).map(Point::Index).collect();
    let naive: SpaceRef<Rational> = Arc::new(NaiveSpace::new(pts.clone(), exp));
    let (line, _) = lattice_walls(1, exp);
    let (plane, _) = lattice_walls(2, exp);
    let factors = vec![naive, line, plane];
    let prod = product_space(factors.clone()).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let random_point = |rng: &mut ChaCha8Rng| {
        vec![
            pts[rng.gen_range(0..5)].clone(),
            Point::Int(rng.gen_range(-6..=6)),
            Point::Lattice(vec![rng.gen_range(-6..=6), rng.gen_range(-6..=6)]),
        ]
    };
    for _ in 0..100 {
        let (x, y) = (random_point(&mut rng), random_point(&mut rng));
        let mut total = r(0);
        for (k, f) in factors.iter().enumerate() {
            total += exact(&energy(f.as_ref(), &x[k], &y[k]).map_err(|e| e.to_string())?);
        }
        let e = energy(&prod, &Point::Tuple(x.clone()), &Point::Tuple(y.clone())).map_err(|e| e.to_string())?;
        if e != Energy::Exact(total.clone()) {
            return Err(format!("product energy {e}, factor sum {total}"));
        }
    }
    Ok("100 pairs".into())
}

fn weighted_naive_growth() -> Outcome {
    let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2));
    let idx: Vec<i64> = (-3..=3).collect();
    let factor = naive_factor::<Rational>(z2, q(2)).map_err(|e| e.to_string())?;
    let sum = proper_sum_space(IndexSet::Finite(idx.clone()), factor, IndexWeight::OnePlusAbs, q(2), idx.clone())
        .map_err(|e| e.to_string())?;
    let e = sum.weighted.origin();
    for mask in 0u32..128 {
        let supp: Vec<i64> = idx.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
        let expected: i64 = supp.iter().map(|i| (1 + i.abs()).pow(2)).sum();
        let w = lamps(supp);
        let got = energy(sum.weighted.as_ref(), &w, &e).map_err(|e| e.to_string())?;
        if got != Energy::Exact(r(expected)) {
            return Err(format!("{w}: energy {got}, expected {expected}"));
        }
    }
    Ok("128 elements".into())
}

fn quotient_bound() -> Outcome {
    let mut checked = 0;
    let z4 = Arc::new(FiniteGroup::cyclic(4));
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    // F = {0, 2} in ℤ/4 and the subgroup generated by a transposition in S₃
    let cases = [(z4.clone(), vec![0, 2]), (s3.clone(), s3.generated_subgroup(&[s3.generator_indices()[0]]))];
    for (group, f) in cases {
        let g: GroupRef = group.clone();
        let subgroup: Vec<Point> = f.into_iter().map(Point::Index).collect();
        let elements: Vec<Point> = (0..group.order()).map(Point::Index).collect();
        for exp in [q(1), q(2)] {
            let naive: SpaceRef<Rational> = Arc::new(NaiveSpace::on_group(g.clone(), r(1), exp).map_err(|e| e.to_string())?);
            let walls: WallsRef<Rational> = Arc::new(FiniteWalls::<Rational>::cayley_cycle(&group).map_err(|e| e.to_string())?);
            let walls: SpaceRef<Rational> = Arc::new(walls_to_labelled(walls, exp));
            for base in [naive, walls] {
                let quot = quotient_average(base, g.clone(), subgroup.clone()).map_err(|e| e.to_string())?;
                checked += require(&quotient_bound_report(&quot, &elements).map_err(|e| e.to_string())?)?;
            }
        }
    }
    Ok(format!("{checked} elements over 8 structures"))
}

fn amalgam_formula() -> Outcome {
    let mut checked = 0;
    for exp in [q(1), q(2)] {
        let s = naive_amalgam(exp);
        checked += require(&s.formula_report(5, TreeTerm::Distance).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{checked} ball elements"))
}

fn equivariance_suite() -> Outcome {
    const N: usize = 500;
    let mut lines = Vec::new();

    let s3: GroupRef = Arc::new(FiniteGroup::symmetric(3));
    let naive = NaiveSpace::<Rational>::on_group(s3.clone(), r(1), q(2)).map_err(|e| e.to_string())?;
    let action = naive_translation(s3.clone());
    require(&check_equivariance(&naive, &action, &orbit_samples(&action, &s3.identity(), N, 6, 1)))?;
    lines.push("naive");

    let (walls, action) = lattice_walls(2, q(2));
    let origin = Point::Lattice(vec![0, 0]);
    require(&check_equivariance(walls.as_ref(), action.as_ref(), &orbit_samples(action.as_ref(), &origin, N, 8, 2)))?;
    lines.push("walls");

    let am = naive_amalgam(q(2));
    require(&check_equivariance(am.space.as_ref(), am.action.as_ref(), &orbit_samples(am.action.as_ref(), &am.basepoint(), N, 6, 3)))?;
    lines.push("amalgam");

    let (mineyev, action) = free_tree_mineyev::<Rational>(2, q(1)).map_err(|e| e.to_string())?;
    let root = action.group().identity();
    require(&check_equivariance(&mineyev, &action, &orbit_samples(&action, &root, N, 5, 4)))?;
    lines.push("mineyev");

    let (dihedral, action) = infinite_dihedral::<Rational>(q(2)).map_err(|e| e.to_string())?;
    let x0 = Point::pair(Point::Int(0), Point::Index(0));
    require(&check_equivariance(&dihedral, &action, &orbit_samples(&action, &x0, N, 8, 5)))?;
    lines.push("infinite dihedral");

    Ok(format!("{N} samples each on {}", lines.join(", ")))
}

fn cocycle_identity() -> Outcome {
    let mut checked = 0;
    let am = naive_amalgam(q(2));
    let group = am.action.group();
    for report in cocycle_from_space(am.space.as_ref(), am.action.as_ref(), &am.basepoint(), &element_pairs(group.as_ref(), 200, 6, 7)) {
        checked += require(&report)?;
    }
    let s3: GroupRef = Arc::new(FiniteGroup::symmetric(3));
    let naive = NaiveSpace::<Rational>::on_group(s3.clone(), r(1), q(2)).map_err(|e| e.to_string())?;
    let action = naive_translation(s3.clone());
    for report in cocycle_from_space(&naive, &action, &s3.identity(), &element_pairs(s3.as_ref(), 200, 6, 8)) {
        checked += require(&report)?;
    }
    Ok(format!("{checked} checks over 400 pairs"))
}

fn mineyev_clauses() -> Outcome {
    let (space, _) = free_tree_mineyev::<Rational>(2, q(1)).map_err(|e| e.to_string())?;
    let reports = space.clause_reports(4).map_err(|e| e.to_string())?;
    let mut names = Vec::new();
    for report in &reports {
        require(report)?;
        names.push(format!("{} ({})", report.name, report.checked));
    }
    Ok(names.join("; "))
}

fn negative_control() -> Outcome {
    let s = naive_amalgam(q(2));
    let grp = s.group().clone();
    let base = VertexId::base(Side::Left);
    for (g, _) in ball_enumerate(grp.as_ref(), 5, &grp.generators()).map_err(|e| e.to_string())? {
        let gamma = grp.word_of(&g).map_err(|e| e.to_string())?;
        let oracle = exact(&s.oracle_energy(gamma).map_err(|e| e.to_string())?);
        let wrong = s.energy_formula(gamma, TreeTerm::DistancePowQ).map_err(|e| e.to_string())?;
        let d_t = s.tree.distance(&base, &VertexId::of_word(Side::Left, gamma));
        if wrong != oracle && d_t >= 2 {
            return Ok(format!("mismatch at {g}: d_T = {d_t}, d_T^2 formula {wrong}, oracle {oracle}"));
        }
    }
    Err("no mismatch with d_T >= 2 on the ball of radius 5".into())
}

fn properness_profiles() -> Outcome {
    for exp in [q(1), q(2)] {
        let (space, action) = lattice_walls(1, exp);
        let gens = action.group().generators();
        let profile = growth_profile(space.as_ref(), action.as_ref(), &Point::Int(0), 6, &gens, 10_000).map_err(|e| e.to_string())?;
        for (radius, e) in profile.min_energies().iter().enumerate() {
            if *e != Energy::Exact(r(radius as i64)) {
                return Err(format!("Z walls q={exp}: min({radius}) = {e}"));
            }
        }
    }

    let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2));
    let window: Vec<i64> = (-3..=3).collect();
    let factor = naive_factor::<Rational>(z2, q(2)).map_err(|e| e.to_string())?;
    let sum = proper_sum_space(IndexSet::Integers, factor, IndexWeight::OnePlusAbs, q(2), window.clone()).map_err(|e| e.to_string())?;
    let y0 = sum.basepoint();
    let ball = ball_enumerate(sum.group.as_ref(), 3, &sum.group.generators()).map_err(|e| e.to_string())?;
    let mut min_reaching: BTreeMap<i64, Rational> = BTreeMap::new();
    for (w, _) in &ball {
        let e = exact(&energy(sum.space.as_ref(), &sum.action.act(w, &y0).map_err(|e| e.to_string())?, &y0).map_err(|e| e.to_string())?);
        for &j in sum.group.coords(w).map_err(|e| e.to_string())?.keys() {
            let slot = min_reaching.entry(j).or_insert_with(|| e.clone());
            if e < *slot {
                *slot = e.clone();
            }
        }
    }
    for &j in &window {
        let phi = r(1 + j.abs());
        let min = min_reaching.get(&j).ok_or_else(|| format!("no element reaches {j}"))?;
        if *min < phi.clone() * phi.clone() {
            return Err(format!("weighted sum: min energy {min} reaching {j} is below phi(j)^2"));
        }
    }

    // syllable generators: every nontrivial element of either factor
    let am = naive_amalgam(q(1));
    let grp = am.group().clone();
    let gens: Vec<Point> = [(Side::Left, 4), (Side::Right, 6)]
        .into_iter()
        .flat_map(|(side, n)| (1..n).map(move |elem| Letter { side, elem }))
        .map(|l| Point::Word(grp.letter_word(l)))
        .collect();
    let profile = growth_profile(am.space.as_ref(), am.action.as_ref(), &am.basepoint(), 5, &gens, 100_000).map_err(|e| e.to_string())?;
    let mins: Vec<Rational> = profile.min_energies().iter().map(exact).collect();
    if mins.windows(2).any(|w| w[1] < w[0]) || mins[5] <= mins[1] {
        return Err(format!("amalgam minima {}", mins.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")));
    }
    let shown: Vec<String> = mins.iter().map(|m| m.to_string()).collect();
    Ok(format!("Z walls min(r) = r; weighted sum over {} elements; amalgam minima [{}]", ball.len(), shown.join(", ")))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "naive identity", limit: secs(1), run: naive_identity },
        Criterion { id: 2, name: "walls identity on Z^2", limit: secs(1), run: walls_identity },
        Criterion { id: 3, name: "metric realization", limit: secs(1), run: metric_realization },
        Criterion { id: 4, name: "direct-sum additivity", limit: secs(1), run: product_additivity },
        Criterion { id: 5, name: "weighted-naive growth", limit: secs(1), run: weighted_naive_growth },
        Criterion { id: 6, name: "quotient-averaging bound", limit: secs(1), run: quotient_bound },
        Criterion { id: 7, name: "amalgam formula/oracle", limit: secs(30), run: amalgam_formula },
        Criterion { id: 8, name: "equivariance suite", limit: secs(10), run: equivariance_suite },
        Criterion { id: 9, name: "cocycle identity", limit: secs(5), run: cocycle_identity },
        Criterion { id: 10, name: "free-tree Mineyev clauses", limit: secs(30), run: mineyev_clauses },
        Criterion { id: 11, name: "negative control d_T^q", limit: None, run: negative_control },
        Criterion { id: 12, name: "properness profiles", limit: None, run: properness_profiles },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("runtime {:.2}s exceeds {}s", elapsed.as_secs_f64(), limit.as_secs()));
            }
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("criterion {:>2} {tag} {} [{:.3}s] {detail}", c.id, c.name, elapsed.as_secs_f64());
        if outcome.is_err() {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
