use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Group;
use crate::error::{Error, Result};
use crate::point::Point;

/// Finite group given by its multiplication table over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
}

const FULL_ASSOCIATIVITY_LIMIT: usize = 64;

impl FiniteGroup {
    /// Validates `table` as a group law and `generators` as a generating set.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("group table is empty"));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::invalid(format!("row {i} has out-of-range entry {bad}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::invalid("table has no identity element"))?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let mut col = vec![false; n];
            let mut row = vec![false; n];
            for b in 0..n {
                row[table[a][b]] = true;
                col[table[b][a]] = true;
                if table[a][b] == identity {
                    inverse[a] = b;
                }
            }
            if row.iter().any(|x| !x) || col.iter().any(|x| !x) {
                return Err(Error::invalid(format!("element {a} does not permute the group")));
            }
            if table[inverse[a]][a] != identity {
                return Err(Error::invalid(format!("element {a} has no two-sided inverse")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::invalid(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::invalid(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= n) {
            return Err(Error::invalid(format!("generator {g} out of range")));
        }
        let group = FiniteGroup { name: name.into(), table, inverse, identity, generators };
        let span = group.generated_subgroup(&group.generators);
        if span.len() != n {
            return Err(Error::invalid(format!(
                "generators span {} of {n} elements",
                span.len()
            )));
        }
        Ok(group)
    }

    /// `ℤ/n` with `k ↦ a^k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup::new(format!("Z/{n}"), table, gens).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n`: `r^k ↦ k`, `s r^k ↦ n + k`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let decode = |x: usize| if x < n { (0, x) } else { (1, x - n) };
        let table = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let (a, k) = decode(x);
                        let (b, l) = decode(y);
                        let k = if b == 1 { (n - k) % n } else { k };
                        (a + b) % 2 * n + (k + l) % n
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(format!("D_{n}"), table, vec![1 % (2 * n), n]).expect("dihedral table is a group")
    }

    /// `S_n` on lexicographically ordered permutations, generated by the
    /// adjacent transpositions.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=6).contains(&n), "symmetric group degree out of desk range");
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            perms.push(current.clone());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index(&t.iter().map(|&k| s[k]).collect())).collect())
            .collect();
        let gens = (0..n.saturating_sub(1))
            .map(|i| {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(i, i + 1);
                index(&p)
            })
            .collect();
        FiniteGroup::new(format!("S_{n}"), table, gens).expect("symmetric table is a group")
    }

    /// `G × H` with `(g, h) ↦ g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.order();
        let table = (0..g.order() * m)
            .map(|x| {
                (0..g.order() * m)
                    .map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        let mut gens: Vec<usize> = g.generators.iter().map(|&a| a * m + h.identity).collect();
        gens.extend(h.generators.iter().map(|&b| g.identity * m + b));
        FiniteGroup::new(format!("{}x{}", g.name, h.name), table, gens).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Closure of `gens` under multiplication, as a sorted list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| a < self.order())
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Text form: order, table rows, generator line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        let gens: Vec<String> = self.generators.iter().map(|x| x.to_string()).collect();
        out.push_str(&gens.join(" "));
        out.push('\n');
        out
    }

    pub fn from_text(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let n: usize = lines
            .next()
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| Error::parse("first line must be the element count"))?;
        let parse_row = |line: &str| -> Result<Vec<usize>> {
            line.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(format!("bad table entry '{t}'"))))
                .collect()
        };
        let mut table = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines.next().ok_or_else(|| Error::parse(format!("missing table row {i}")))?;
            table.push(parse_row(line)?);
        }
        let generators = parse_row(lines.next().unwrap_or(""))?;
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::parse("trailing content after generator line"));
        }
        FiniteGroup::new(name, table, generators)
    }
}

impl Group for FiniteGroup {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn identity(&self) -> Point {
        Point::Index(self.identity)
    }

    fn op(&self, a: &Point, b: &Point) -> Result<Point> {
        let (a, b) = (self.index_of(a)?, self.index_of(b)?);
        Ok(Point::Index(self.mul(a, b)))
    }

    fn inv(&self, a: &Point) -> Result<Point> {
        Ok(Point::Index(self.inverse(self.index_of(a)?)))
    }

    fn contains(&self, a: &Point) -> bool {
        matches!(a, Point::Index(i) if *i < self.order())
    }

    fn generators(&self) -> Vec<Point> {
        self.generators.iter().map(|&g| Point::Index(g)).collect()
    }

    fn elements(&self) -> Option<Vec<Point>> {
        Some((0..self.order()).map(Point::Index).collect())
    }
}

impl FiniteGroup {
    pub fn index_of(&self, p: &Point) -> Result<usize> {
        match p {
            Point::Index(i) if *i < self.order() => Ok(*i),
            other => Err(Error::domain(format!("{other} is not an element of {}", self.name))),
        }
    }
}

/// Left cosets `gC` of a subgroup, with representatives minimal in index
/// order except that the identity represents `C` itself.
#[derive(Clone, Debug)]
pub struct CosetTable {
    subgroup: Vec<usize>,
    reps: Vec<usize>,
    rep_of: Vec<usize>,
    factor_of: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetTable {
    pub fn new(group: &FiniteGroup, subgroup: &[usize]) -> Result<Self> {
        if !group.is_subgroup(subgroup) {
            return Err(Error::invalid(format!("{subgroup:?} is not a subgroup of {}", group.name)));
        }
        let sub: Vec<usize> = subgroup.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let n = group.order();
        let mut rep_of = vec![usize::MAX; n];
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let order = std::iter::once(group.identity).chain((0..n).filter(|&g| g != group.identity));
        for g in order {
            if rep_of[g] != usize::MAX {
                continue;
            }
            let k = reps.len();
            reps.push(g);
            for &c in &sub {
                let x = group.mul(g, c);
                rep_of[x] = g;
                coset_of[x] = k;
            }
        }
        let factor_of = (0..n).map(|g| group.mul(group.inverse(rep_of[g]), g)).collect();
        Ok(CosetTable { subgroup: sub, reps, rep_of, factor_of, coset_of })
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    /// Representatives, identity first.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn rep(&self, g: usize) -> usize {
        self.rep_of[g]
    }

    /// The `c ∈ C` with `g = rep(g)·c`.
    pub fn factor(&self, g: usize) -> usize {
        self.factor_of[g]
    }

    /// Position of `g`'s coset in [`representatives`](Self::representatives).
    pub fn coset_index(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn is_rep(&self, g: usize) -> bool {
        self.rep_of.get(g) == Some(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_groups_validate() {
        assert_eq!(FiniteGroup::cyclic(6).order(), 6);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity_index(), 0);
        assert_eq!(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3)).order(), 6);
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        for g in [FiniteGroup::cyclic(5), FiniteGroup::symmetric(3), FiniteGroup::dihedral(3)] {
            let text = g.to_text();
            let back = FiniteGroup::from_text("g", &text).unwrap();
            assert_eq!(back.to_text(), text);
        }
    }

    #[test]
    fn rejects_non_groups() {
        // identity present but not associative / not latin
        let bad = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::new("bad", bad, vec![1]).is_err());
        let table = FiniteGroup::cyclic(4).to_text();
        let short_gens = table.replace("\n1\n", "\n2\n");
        assert!(FiniteGroup::from_text("z4", &short_gens).is_err());
    }

    #[test]
    fn coset_examples() {
        let z4 = FiniteGroup::cyclic(4);
        let t = CosetTable::new(&z4, &[0, 2]).unwrap();
        assert_eq!(t.representatives(), &[0, 1]);
        let z6 = FiniteGroup::cyclic(6);
        let t = CosetTable::new(&z6, &[0, 3]).unwrap();
        assert_eq!(t.representatives(), &[0, 1, 2]);
        assert_eq!(t.rep(4), 1);
        assert_eq!(t.factor(4), 3);
        let full = CosetTable::new(&z6, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(full.representatives(), &[0]);
        assert!(CosetTable::new(&z6, &[0, 1]).is_err());
    }

    #[test]
    fn rep_times_factor() {
        let s3 = FiniteGroup::symmetric(3);
        let c = s3.generated_subgroup(&[1]);
        let t = CosetTable::new(&s3, &c).unwrap();
        for g in 0..6 {
            assert_eq!(s3.mul(t.rep(g), t.factor(g)), g);
            assert!(c.contains(&t.factor(g)));
        }
    }
}
