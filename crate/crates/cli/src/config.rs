//! JSON configuration trees and their construction into spaces.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use labpart::amalgam::{amalgam_space, naive_cosets, naive_factors, proper_amalgam_from_factors, AmalgamSpace, BassSerreTree, CosetStructure};
use labpart::constructions::*;
use labpart::groups::{AmalgamGroup, FiniteGroup, GroupRef, IndexSet, Side};
use labpart::structures::*;
use labpart::walls::{walls_to_labelled, FiniteWalls, WallsRef, ZnHalfSpaceWalls};
use labpart::{ActionRef, Exponent, Point, Rational, Scalar, SpaceRef};
use serde_json::Value;

pub const KINDS: [&str; 14] = [
    "naive",
    "weighted_naive",
    "walls_zn",
    "walls_custom",
    "metric_linf",
    "pullback",
    "product",
    "proper_sum",
    "semidirect",
    "quotient_average",
    "wreath_glue",
    "amalgam",
    "free_tree_mineyev",
    "cocycle",
];

/// A configuration problem, located by its JSON path.
#[derive(Debug)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for ConfigError {}

type Result<T> = std::result::Result<T, ConfigError>;

/// Structure-specific handles used by the check suites.
#[derive(Clone)]
pub enum Extra {
    None,
    Amalgam(Arc<AmalgamSpace<Rational>>),
    Mineyev(Arc<MineyevSpace<Rational>>),
    Quotient(Arc<QuotientSpace<Rational>>),
    Cocycle(Arc<CocycleSpace<Rational>>),
    Wreath(Arc<WreathGlue<Rational>>),
    ProperSum(Arc<ProperSum<Rational>>, Arc<dyn Fn(i64) -> ProperFactor<Rational> + Send + Sync>),
}

/// A constructed space with its optional action and basepoint.
#[derive(Clone)]
pub struct Built {
    pub kind: String,
    pub space: SpaceRef<Rational>,
    pub action: Option<ActionRef>,
    pub basepoint: Option<Point>,
    /// The finite group the points live in, when there is one.
    pub finite_group: Option<Arc<FiniteGroup>>,
    pub extra: Extra,
}

impl Built {
    fn plain(kind: &str, space: SpaceRef<Rational>) -> Self {
        Built { kind: kind.into(), space, action: None, basepoint: None, finite_group: None, extra: Extra::None }
    }

    fn acted(kind: &str, space: SpaceRef<Rational>, action: ActionRef, basepoint: Point) -> Self {
        Built { action: Some(action), basepoint: Some(basepoint), ..Self::plain(kind, space) }
    }
}

/// Reads and builds the configuration at `path`; relative file references
/// resolve against its directory.
pub fn load(path: &Path) -> Result<Built> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError { path: "$".into(), message: format!("cannot read {}: {e}", path.display()) })?;
    let value: Value = serde_json::from_str(&text).map_err(|e| ConfigError { path: "$".into(), message: format!("invalid JSON: {e}") })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    build_value(&value, &dir)
}

pub fn build_value(value: &Value, dir: &Path) -> Result<Built> {
    build(&Node { value, path: "$".into(), dir })
}

struct Node<'a> {
    value: &'a Value,
    path: String,
    dir: &'a Path,
}

impl<'a> Node<'a> {
    fn err<T>(&self, message: impl fmt::Display) -> Result<T> {
        Err(ConfigError { path: self.path.clone(), message: message.to_string() })
    }

    fn wrap<T, E: fmt::Display>(&self, r: std::result::Result<T, E>) -> Result<T> {
        r.or_else(|e| self.err(e))
    }

    fn opt(&self, key: &str) -> Option<Node<'a>> {
        self.value.get(key).map(|value| Node { value, path: format!("{}.{key}", self.path), dir: self.dir })
    }

    fn field(&self, key: &str) -> Result<Node<'a>> {
        match self.opt(key) {
            Some(n) => Ok(n),
            None => self.err(format!("missing field '{key}'")),
        }
    }

    fn items(&self) -> Result<Vec<Node<'a>>> {
        match self.value.as_array() {
            Some(a) => Ok(a
                .iter()
                .enumerate()
                .map(|(k, value)| Node { value, path: format!("{}[{k}]", self.path), dir: self.dir })
                .collect()),
            None => self.err("expected an array"),
        }
    }

    fn str(&self) -> Result<&'a str> {
        match self.value.as_str() {
            Some(s) => Ok(s),
            None => self.err("expected a string"),
        }
    }

    fn int(&self) -> Result<i64> {
        match self.value.as_i64() {
            Some(n) => Ok(n),
            None => self.err("expected an integer"),
        }
    }

    fn count(&self) -> Result<usize> {
        match self.value.as_u64() {
            Some(n) => Ok(n as usize),
            None => self.err("expected a nonnegative integer"),
        }
    }

    fn scalar(&self) -> Result<Rational> {
        let text = match self.value {
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            _ => return self.err("expected a number or a string such as \"3/2\""),
        };
        match Rational::parse_scalar(&text) {
            Some(x) => Ok(x),
            None => self.err(format!("cannot read '{text}' as an exact number")),
        }
    }

    fn point(&self) -> Result<Point> {
        let text = match self.value {
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            _ => return self.err("expected a point literal"),
        };
        self.wrap(text.parse::<Point>())
    }

    fn exponent(&self) -> Result<Exponent> {
        let q = self.field("q")?;
        let text = match q.value {
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            _ => return q.err("expected an exponent such as 2, \"3/2\" or \"sup\""),
        };
        q.wrap(Exponent::parse(&text))
    }

    fn read_file(&self) -> Result<String> {
        let name = self.str()?;
        let path = self.dir.join(name);
        self.wrap(std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display())))
    }

    /// Inline `text` or a `file` reference.
    fn text_or_file(&self) -> Result<String> {
        match (self.opt("text"), self.opt("file")) {
            (Some(t), None) => Ok(t.str()?.to_string()),
            (None, Some(f)) => f.read_file(),
            _ => self.err("give exactly one of 'text' and 'file'"),
        }
    }

    fn group(&self) -> Result<Arc<FiniteGroup>> {
        if let Some(file) = self.opt("file") {
            let text = file.read_file()?;
            return file.wrap(FiniteGroup::from_text(file.str()?, &text)).map(Arc::new);
        }
        let spec = self.str()?;
        if spec.ends_with(".tbl") || spec.contains('/') {
            let text = self.read_file()?;
            return self.wrap(FiniteGroup::from_text(spec.trim_end_matches(".tbl"), &text)).map(Arc::new);
        }
        let (family, n) = match spec.split_once(':') {
            Some((f, n)) => (f, n),
            None if spec.starts_with('Z') => ("cyclic", &spec[1..]),
            None => return self.err(format!("unknown group '{spec}'; use cyclic:n, dihedral:n, symmetric:n or {{\"file\": ...}}")),
        };
        let n: usize = match n.parse() {
            Ok(n) if n >= 1 => n,
            _ => return self.err(format!("bad group size in '{spec}'")),
        };
        Ok(Arc::new(match family {
            "cyclic" => FiniteGroup::cyclic(n),
            "dihedral" if n >= 2 => FiniteGroup::dihedral(n),
            "symmetric" if n <= 6 => FiniteGroup::symmetric(n),
            _ => return self.err(format!("unsupported group '{spec}'")),
        }))
    }

    fn indices(&self) -> Result<Vec<usize>> {
        self.items()?.iter().map(Node::count).collect()
    }
}

fn build(node: &Node) -> Result<Built> {
    let kind = node.field("kind")?;
    let k = kind.str()?;
    match k {
        "naive" | "weighted_naive" => build_naive(node, k),
        "walls_zn" => build_walls_zn(node),
        "walls_custom" => build_walls_custom(node),
        "metric_linf" => build_metric(node),
        "pullback" => build_pullback(node),
        "product" => build_product(node),
        "proper_sum" => build_proper_sum(node),
        "semidirect" => build_semidirect(node),
        "quotient_average" => build_quotient(node),
        "wreath_glue" => build_wreath(node),
        "amalgam" => build_amalgam(node),
        "free_tree_mineyev" => build_mineyev(node),
        "cocycle" => build_cocycle(node),
        other => kind.err(format!("unknown kind '{other}'; expected one of {}", KINDS.join(", "))),
    }
}

fn build_naive(node: &Node, kind: &str) -> Result<Built> {
    let q = node.exponent()?;
    let weight = match (kind, node.opt("weight")) {
        ("weighted_naive", Some(w)) => w.scalar()?,
        ("weighted_naive", None) => return node.err("missing field 'weight'"),
        (_, Some(w)) => return w.err("plain naive spaces take no weight; use kind weighted_naive"),
        (_, None) => Rational::from_int(1),
    };
    match (node.opt("points"), node.opt("group")) {
        (Some(p), None) => {
            let pts: Vec<Point> = (0..p.count()?).map(Point::Index).collect();
            let space = node.wrap(NaiveSpace::weighted(pts, weight, q))?;
            Ok(Built::plain(kind, Arc::new(space)))
        }
        (None, Some(g)) => {
            let group = g.group()?;
            let gref: GroupRef = group.clone();
            let space = node.wrap(NaiveSpace::on_group(gref.clone(), weight, q))?;
            let mut built = Built::acted(kind, Arc::new(space), Arc::new(naive_translation(gref.clone())), gref.identity());
            built.finite_group = Some(group);
            Ok(built)
        }
        _ => node.err("give exactly one of 'points' and 'group'"),
    }
}

fn build_walls_zn(node: &Node) -> Result<Built> {
    let q = node.exponent()?;
    let dim = node.field("dim")?;
    let walls = Arc::new(dim.wrap(ZnHalfSpaceWalls::new(dim.count()?))?);
    let action: ActionRef = Arc::new(walls.translation_action());
    let origin = walls.lattice().point(vec![0; walls.lattice().dim()]);
    let w: WallsRef<Rational> = walls;
    Ok(Built::acted("walls_zn", Arc::new(walls_to_labelled(w, q)), action, origin))
}

fn build_walls_custom(node: &Node) -> Result<Built> {
    let q = node.exponent()?;
    let walls = match node.opt("cayley_cycle") {
        Some(g) => g.wrap(FiniteWalls::<Rational>::cayley_cycle(g.group()?.as_ref()))?,
        None => node.wrap(FiniteWalls::<Rational>::from_text(&node.text_or_file()?))?,
    };
    let walls = Arc::new(walls);
    let group = match (node.opt("group"), node.opt("cayley_cycle")) {
        (Some(g), _) | (None, Some(g)) => Some((g.group()?, g)),
        (None, None) => None,
    };
    let w: WallsRef<Rational> = walls.clone();
    let space: SpaceRef<Rational> = Arc::new(walls_to_labelled(w, q));
    match group {
        Some((g, gnode)) => {
            let action = gnode.wrap(walls.translation_action(g.clone()))?;
            let identity = Point::Index(g.identity_index());
            let mut built = Built::acted("walls_custom", space, Arc::new(action), identity);
            built.finite_group = Some(g);
            Ok(built)
        }
        None => Ok(Built::plain("walls_custom", space)),
    }
}

fn build_metric(node: &Node) -> Result<Built> {
    let metric = match node.opt("matrix") {
        Some(m) => {
            let rows = m
                .items()?
                .iter()
                .map(|row| row.items()?.iter().map(Node::scalar).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            m.wrap(FiniteMetric::new(rows))?
        }
        None => {
            let file = node.field("file")?;
            file.wrap(FiniteMetric::from_csv(&file.read_file()?))?
        }
    };
    Ok(Built::plain("metric_linf", Arc::new(metric_realization_space(metric))))
}

fn build_pullback(node: &Node) -> Result<Built> {
    let base = build(&node.field("base")?)?;
    let map = node.field("map")?;
    let (f, domain, name, points): (PointMap, Membership, String, Option<Vec<Point>>) = if let Some(s) = map.opt("scale") {
        let k = s.int()?;
        (
            Arc::new(move |p: &Point| Ok(Point::Int(k * p.as_int()?))),
            Arc::new(|p: &Point| matches!(p, Point::Int(_))),
            format!("n -> {k}n"),
            None,
        )
    } else if let Some(c) = map.opt("coordinate") {
        let i = c.count()?;
        (
            Arc::new(move |p: &Point| match p {
                Point::Tuple(items) if i < items.len() => Ok(items[i].clone()),
                Point::Lattice(v) if i < v.len() => Ok(Point::Int(v[i])),
                other => Err(labpart::Error::Domain(format!("{other} has no coordinate {i}"))),
            }),
            Arc::new(move |p: &Point| matches!(p, Point::Tuple(items) if i < items.len()) || matches!(p, Point::Lattice(v) if i < v.len())),
            format!("coordinate {i}"),
            None,
        )
    } else if let Some(t) = map.opt("table") {
        let Some(obj) = t.value.as_object() else {
            return t.err("expected an object from point literals to point literals");
        };
        let mut table = BTreeMap::new();
        for (key, value) in obj {
            let entry = Node { value, path: format!("{}.{key}", t.path), dir: t.dir };
            let src = entry.wrap(key.parse::<Point>())?;
            let dst = entry.point()?;
            if !base.space.contains(&dst) {
                return entry.err(format!("{dst} is not a point of the base space"));
            }
            table.insert(src, dst);
        }
        let keys: Vec<Point> = table.keys().cloned().collect();
        let table = Arc::new(table);
        let t2 = table.clone();
        (
            Arc::new(move |p: &Point| table.get(p).cloned().ok_or_else(|| labpart::Error::Domain(format!("{p} is not in the table")))),
            Arc::new(move |p: &Point| t2.contains_key(p)),
            "table".into(),
            Some(keys),
        )
    } else {
        return map.err("expected one of 'scale', 'coordinate', 'table'");
    };
    let mut space = pullback(base.space.clone(), f, domain, name);
    if let Some(p) = points {
        space = space.with_points(p);
    }
    Ok(Built::plain("pullback", Arc::new(space)))
}

fn build_product(node: &Node) -> Result<Built> {
    let factors = node.field("factors")?;
    let built = factors.items()?.iter().map(build).collect::<Result<Vec<_>>>()?;
    if built.is_empty() {
        return factors.err("a product needs at least one factor");
    }
    let space = factors.wrap(product_space(built.iter().map(|b| b.space.clone()).collect()))?;
    let actions: Option<Vec<ActionRef>> = built.iter().map(|b| b.action.clone()).collect();
    let basepoints: Option<Vec<Point>> = built.iter().map(|b| b.basepoint.clone()).collect();
    match (actions, basepoints) {
        (Some(a), Some(b)) => Ok(Built::acted("product", Arc::new(space), Arc::new(ProductAction::new(a)), Point::Tuple(b))),
        _ => Ok(Built::plain("product", Arc::new(space))),
    }
}

fn index_set(node: &Node) -> Result<IndexSet> {
    match node.value {
        Value::String(s) if s == "integers" => Ok(IndexSet::Integers),
        Value::Array(_) => {
            let idx = node.items()?.iter().map(Node::int).collect::<Result<Vec<_>>>()?;
            if idx.is_empty() {
                return node.err("the index set is empty");
            }
            Ok(IndexSet::Finite(idx))
        }
        _ => node.err("expected \"integers\" or an array of integers"),
    }
}

fn build_proper_sum(node: &Node) -> Result<Built> {
    let q = node.exponent()?;
    let fnode = node.field("factor")?;
    let factor = build(&fnode)?;
    let (Some(action), Some(basepoint)) = (factor.action.clone(), factor.basepoint.clone()) else {
        return fnode.err("the factor needs a group action");
    };
    let indices = index_set(&node.field("indices")?)?;
    let phi = match node.opt("phi") {
        None => IndexWeight::EnumerationRank,
        Some(p) => match p.value {
            Value::String(s) if s == "rank" => IndexWeight::EnumerationRank,
            Value::String(s) if s == "one_plus_abs" => IndexWeight::OnePlusAbs,
            _ => IndexWeight::Constant(p.scalar()?),
        },
    };
    let window = match node.opt("window") {
        Some(w) => w.items()?.iter().map(Node::int).collect::<Result<Vec<_>>>()?,
        None => indices.first(5),
    };
    let f = uniform_factor(factor.space.clone(), action, basepoint);
    let sum = node.wrap(proper_sum_space(indices, f.clone(), phi, q, window))?;
    for w in &sum.warnings {
        eprintln!("warning: {}: {w}", node.path);
    }
    let sum = Arc::new(sum);
    let mut built = Built::acted("proper_sum", sum.space.clone(), sum.action.clone(), sum.basepoint());
    built.extra = Extra::ProperSum(sum, f);
    Ok(built)
}

fn build_semidirect(node: &Node) -> Result<Built> {
    let q = node.exponent()?;
    let example = node.field("example")?;
    match example.str()? {
        "infinite_dihedral" => {
            let (space, action) = node.wrap(infinite_dihedral::<Rational>(q))?;
            let x0 = Point::pair(Point::Int(0), Point::Index(0));
            Ok(Built::acted("semidirect", Arc::new(space), Arc::new(action), x0))
        }
        other => example.err(format!("unknown semidirect example '{other}'; available: infinite_dihedral")),
    }
}

fn build_quotient(node: &Node) -> Result<Built> {
    let bnode = node.field("base")?;
    let base = build(&bnode)?;
    let (Some(group), Some(action)) = (base.finite_group.clone(), base.action.clone()) else {
        return bnode.err("the base must be a structure on a finite group with its translation action");
    };
    let snode = node.field("subgroup")?;
    let subgroup: Vec<Point> = snode.indices()?.into_iter().map(Point::Index).collect();
    let quot = Arc::new(snode.wrap(quotient_average(base.space.clone(), group.clone() as GroupRef, subgroup))?);
    let qaction = quot.action(action);
    let mut built = Built::acted("quotient_average", quot.clone(), qaction, Point::Index(group.identity_index()));
    built.finite_group = Some(group);
    built.extra = Extra::Quotient(quot);
    Ok(built)
}

fn build_wreath(node: &Node) -> Result<Built> {
    let q = node.exponent()?;
    let lamp = node.field("lamp")?.group()?;
    let shift_node = node.field("shift")?;
    let shift = match shift_node.value {
        Value::String(s) if s == "integers" => IndexShift::Integers,
        _ => match shift_node.opt("cyclic") {
            Some(m) => match m.count()? {
                0 => return m.err("the cycle length must be positive"),
                m => IndexShift::Cyclic(m),
            },
            None => return shift_node.err("expected \"integers\" or {\"cyclic\": m}"),
        },
    };
    let window = match node.opt("window") {
        Some(w) => w.int()?,
        None => 0,
    };
    let glue = Arc::new(node.wrap(lamplighter::<Rational>(lamp, shift, q, window))?);
    let mut built = Built::acted("wreath_glue", glue.space.clone(), glue.action.clone(), glue.basepoint());
    built.extra = Extra::Wreath(glue);
    Ok(built)
}

fn factor_structure(node: &Node, group: &Arc<AmalgamGroup>, side: Side) -> Result<CosetStructure<Rational>> {
    let built = build(node)?;
    let Some(action) = built.action else {
        return node.err("a factor structure needs the translation action of the factor group");
    };
    if action.group().elements().map(|e| e.len()) != Some(group.factor(side).order()) {
        return node.err("the structure's group does not match the factor");
    }
    Ok(CosetStructure { space: built.space, action })
}

fn build_amalgam(node: &Node) -> Result<Built> {
    let q = node.exponent()?;
    let left = node.field("left")?.group()?;
    let right = node.field("right")?.group()?;
    let (cl, cr) = match node.opt("common") {
        Some(c) => {
            let m = c.group()?;
            if m.generator_indices().len() > 1 || m.generated_subgroup(m.generator_indices()).len() != m.order() {
                return c.err("'common' must be cyclic; give common_left and common_right for other subgroups");
            }
            (cyclic_subgroup(&c, &left, m.order())?, cyclic_subgroup(&c, &right, m.order())?)
        }
        None => (node.field("common_left")?.indices()?, node.field("common_right")?.indices()?),
    };
    let group = Arc::new(node.wrap(AmalgamGroup::new((*left).clone(), (*right).clone(), cl, cr))?);
    let factors = node.opt("factors");
    let space = match factors.as_ref().map(|f| f.value) {
        None => {
            let [l, r] = node.wrap(naive_factors(&group, q))?;
            node.wrap(proper_amalgam_from_factors(group, l, r))?
        }
        Some(Value::String(s)) if s == "naive" => {
            let [l, r] = node.wrap(naive_factors(&group, q))?;
            node.wrap(proper_amalgam_from_factors(group, l, r))?
        }
        Some(Value::String(s)) if s == "naive_cosets" => {
            let l = node.wrap(naive_cosets(&group, Side::Left, q))?;
            let r = node.wrap(naive_cosets(&group, Side::Right, q))?;
            node.wrap(amalgam_space(BassSerreTree::new(group), l, r))?
        }
        Some(Value::Object(_)) => {
            let f = factors.expect("present");
            let l = factor_structure(&f.field("left")?, &group, Side::Left)?;
            let r = factor_structure(&f.field("right")?, &group, Side::Right)?;
            f.wrap(proper_amalgam_from_factors(group, l, r))?
        }
        Some(_) => return factors.expect("present").err("expected \"naive\", \"naive_cosets\" or {\"left\": ..., \"right\": ...}"),
    };
    let space = Arc::new(space);
    let mut built = Built::acted("amalgam", space.space.clone(), space.action.clone(), space.basepoint());
    built.extra = Extra::Amalgam(space);
    Ok(built)
}

/// Powers `1, g, g², …` of the first element of order `m`.
fn cyclic_subgroup(node: &Node, group: &FiniteGroup, m: usize) -> Result<Vec<usize>> {
    let e = group.identity_index();
    for g in 0..group.order() {
        let mut powers = vec![e];
        let mut x = g;
        while x != e && powers.len() <= m {
            powers.push(x);
            x = group.mul(x, g);
        }
        if powers.len() == m && (m == 1 || x == e) {
            return Ok(powers);
        }
    }
    node.err(format!("{} has no element of order {m}", labpart::Group::name(group)))
}

fn build_mineyev(node: &Node) -> Result<Built> {
    let q = node.exponent()?;
    let rank = node.field("rank")?;
    let (space, action) = rank.wrap(free_tree_mineyev::<Rational>(rank.count()?, q))?;
    let space = Arc::new(space);
    let mut built = Built::acted("free_tree_mineyev", space.clone(), Arc::new(action), Point::Free(Vec::new()));
    built.extra = Extra::Mineyev(space);
    Ok(built)
}

fn build_cocycle(node: &Node) -> Result<Built> {
    let cocycle = node.wrap(CocycleAction::<Rational>::from_text(&node.text_or_file()?))?;
    let identity = cocycle.group().identity();
    let (space, action) = cocycle_space(cocycle);
    let space = Arc::new(space);
    let mut built = Built::acted("cocycle", space.clone(), Arc::new(action), identity);
    built.extra = Extra::Cocycle(space);
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn build_json(v: Value) -> Result<Built> {
        build_value(&v, Path::new("."))
    }

    #[test]
    fn naive_on_points() {
        let b = build_json(json!({"kind": "naive", "points": 4, "q": 1})).unwrap();
        assert_eq!(b.space.points().unwrap().len(), 4);
        assert!(b.action.is_none());
    }

    #[test]
    fn error_paths_name_the_node() {
        let e = build_json(json!({"kind": "product", "factors": [{"kind": "walls_zn", "dim": 1, "q": 1}, {"kind": "naive", "points": 3, "q": 0}]}))
            .err()
            .unwrap();
        assert_eq!(e.path, "$.factors[1].q");
        let e = build_json(json!({"kind": "teapot"})).err().unwrap();
        assert_eq!(e.path, "$.kind");
        let e = build_json(json!({"kind": "quotient_average", "base": {"kind": "naive", "group": "Z4", "q": 1}, "subgroup": [0, 1]}))
            .err()
            .unwrap();
        assert_eq!(e.path, "$.subgroup");
    }

    #[test]
    fn every_kind_builds() {
        let configs = [
            json!({"kind": "naive", "group": "symmetric:3", "q": 2}),
            json!({"kind": "weighted_naive", "points": 3, "weight": "3/2", "q": 2}),
            json!({"kind": "walls_zn", "dim": 2, "q": 1}),
            json!({"kind": "walls_custom", "cayley_cycle": "Z6", "q": 1}),
            json!({"kind": "metric_linf", "matrix": [[0, 1], [1, 0]]}),
            json!({"kind": "pullback", "base": {"kind": "walls_zn", "dim": 1, "q": 1}, "map": {"scale": 2}}),
            json!({"kind": "product", "factors": [{"kind": "walls_zn", "dim": 1, "q": 2}, {"kind": "naive", "group": "Z3", "q": 2}]}),
            json!({"kind": "proper_sum", "factor": {"kind": "naive", "group": "Z2", "q": 2}, "indices": "integers", "phi": "one_plus_abs", "q": 2}),
            json!({"kind": "semidirect", "example": "infinite_dihedral", "q": 1}),
            json!({"kind": "quotient_average", "base": {"kind": "naive", "group": "Z4", "q": 1}, "subgroup": [0, 2]}),
            json!({"kind": "wreath_glue", "lamp": "Z2", "shift": {"cyclic": 5}, "q": 1}),
            json!({"kind": "amalgam", "left": "Z4", "right": "Z6", "common_left": [0, 2], "common_right": [0, 3], "q": 1}),
            json!({"kind": "free_tree_mineyev", "rank": 2, "q": 1}),
            json!({"kind": "cocycle", "text": "group lattice 1\ndim 1\nq 1\ngen 0 perm 0 sign + shift 1\n"}),
        ];
        let mut seen: Vec<String> = configs.iter().map(|c| build_json(c.clone()).unwrap().kind).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), KINDS.len());
    }
}
