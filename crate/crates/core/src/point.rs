//! Opaque point identifiers shared by every space and group in the crate.
//!
//! Text syntax (used by the CLI and by serialized reports):
//!
//! | variant  | example            |
//! |----------|--------------------|
//! | `Int`    | `-3`               |
//! | `Index`  | `#2`               |
//! | `Lattice`| `(1,-2)`           |
//! | `Tuple`  | `[#1, 4]`          |
//! | `Sparse` | `{-1: #1, 2: #1}`  |
//! | `Free`   | `f[abA]`           |
//! | `Word`   | `w[g1.h2|1]`       |
//! | `Vertex` | `vg[g1.h2]`        |
//! | `Total`  | `xh[g1.h2]`        |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::amalgam::{TotalPoint, VertexId};
use crate::error::{Error, Result};
use crate::groups::{AmalgamWord, Letter, Side};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Int(i64),
    /// Element of an enumerated finite set, e.g. a finite group element.
    Index(usize),
    Lattice(Vec<i64>),
    Tuple(Vec<Point>),
    /// Finitely supported family; absent keys sit at the basepoint.
    Sparse(BTreeMap<i64, Point>),
    /// Reduced free-group word; generator `k` is `k+1`, its inverse `-(k+1)`.
    Free(Vec<i32>),
    Word(AmalgamWord),
    Vertex(VertexId),
    Total(TotalPoint),
}

impl Point {
    pub fn as_index(&self) -> Result<usize> {
        match self {
            Point::Index(i) => Ok(*i),
            other => Err(Error::domain(format!("expected an index point, got {other}"))),
        }
    }

    pub fn as_int(&self) -> Result<i64> {
        match self {
            Point::Int(i) => Ok(*i),
            other => Err(Error::domain(format!("expected an integer point, got {other}"))),
        }
    }

    pub fn as_tuple(&self, arity: usize) -> Result<&[Point]> {
        match self {
            Point::Tuple(items) if items.len() == arity => Ok(items),
            other => Err(Error::domain(format!("expected a {arity}-tuple, got {other}"))),
        }
    }

    pub fn as_sparse(&self) -> Result<&BTreeMap<i64, Point>> {
        match self {
            Point::Sparse(map) => Ok(map),
            other => Err(Error::domain(format!("expected a finitely supported point, got {other}"))),
        }
    }

    pub fn as_word(&self) -> Result<&AmalgamWord> {
        match self {
            Point::Word(w) => Ok(w),
            other => Err(Error::domain(format!("expected an amalgam word, got {other}"))),
        }
    }

    pub fn pair(a: Point, b: Point) -> Point {
        Point::Tuple(vec![a, b])
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for (k, letter) in letters.iter().enumerate() {
        if k > 0 {
            f.write_str(".")?;
        }
        let tag = match letter.side {
            Side::Left => 'g',
            Side::Right => 'h',
        };
        write!(f, "{tag}{}", letter.elem)?;
    }
    Ok(())
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Int(i) => write!(f, "{i}"),
            Point::Index(i) => write!(f, "#{i}"),
            Point::Lattice(v) => {
                f.write_str("(")?;
                for (k, x) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Point::Tuple(items) => {
                f.write_str("[")?;
                for (k, x) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            Point::Sparse(map) => {
                f.write_str("{")?;
                for (k, (i, x)) in map.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{i}: {x}")?;
                }
                f.write_str("}")
            }
            Point::Free(letters) => {
                f.write_str("f[")?;
                for &l in letters {
                    let k = (l.unsigned_abs() - 1) as u8;
                    let c = if l > 0 { b'a' + k } else { b'A' + k };
                    write!(f, "{}", c as char)?;
                }
                f.write_str("]")
            }
            Point::Word(w) => {
                f.write_str("w[")?;
                write_letters(f, &w.letters)?;
                if w.tail != 0 {
                    write!(f, "|{}", w.tail)?;
                }
                f.write_str("]")
            }
            Point::Vertex(v) => {
                let tag = match v.side {
                    Side::Left => "vg[",
                    Side::Right => "vh[",
                };
                f.write_str(tag)?;
                write_letters(f, &v.rep.letters)?;
                f.write_str("]")
            }
            Point::Total(x) => {
                let tag = match x.side() {
                    Side::Left => "xg[",
                    Side::Right => "xh[",
                };
                f.write_str(tag)?;
                write_letters(f, &x.coset().letters)?;
                f.write_str("]")
            }
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(format!(
                "expected '{}' at offset {} in point literal",
                c as char, self.pos
            )))
        }
    }

    fn eat_prefix(&mut self, prefix: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(prefix.as_bytes()) {
            self.pos += prefix.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.text.len() && (self.text[self.pos] == b'-' || self.text[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(format!("expected an integer at offset {start}")))
    }

    fn letters(&mut self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            let side = match self.peek() {
                Some(b'g') => Side::Left,
                Some(b'h') => Side::Right,
                _ => break,
            };
            self.pos += 1;
            let elem = self.integer()?;
            if elem < 0 {
                return Err(Error::parse("negative letter index"));
            }
            out.push(Letter { side, elem: elem as usize });
            if self.peek() == Some(b'.') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn point(&mut self) -> Result<Point> {
        match self.peek() {
            Some(b'#') => {
                self.pos += 1;
                let i = self.integer()?;
                usize::try_from(i)
                    .map(Point::Index)
                    .map_err(|_| Error::parse("negative index"))
            }
            Some(b'(') => {
                self.pos += 1;
                let mut v = Vec::new();
                if self.peek() != Some(b')') {
                    loop {
                        v.push(self.integer()?);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b')')?;
                Ok(Point::Lattice(v))
            }
            Some(b'[') => {
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() != Some(b']') {
                    loop {
                        items.push(self.point()?);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b']')?;
                Ok(Point::Tuple(items))
            }
            Some(b'{') => {
                self.pos += 1;
                let mut map = BTreeMap::new();
                if self.peek() != Some(b'}') {
                    loop {
                        let key = self.integer()?;
                        self.expect(b':')?;
                        let value = self.point()?;
                        if map.insert(key, value).is_some() {
                            return Err(Error::parse(format!("duplicate key {key}")));
                        }
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b'}')?;
                Ok(Point::Sparse(map))
            }
            Some(b'f') if self.eat_prefix("f[") => {
                let mut letters = Vec::new();
                while let Some(c) = self.peek() {
                    let l = match c {
                        b'a'..=b'z' => (c - b'a') as i32 + 1,
                        b'A'..=b'Z' => -((c - b'A') as i32 + 1),
                        _ => break,
                    };
                    letters.push(l);
                    self.pos += 1;
                }
                self.expect(b']')?;
                Ok(Point::Free(letters))
            }
            Some(b'w') if self.eat_prefix("w[") => {
                let letters = self.letters()?;
                let mut tail = 0;
                if self.peek() == Some(b'|') {
                    self.pos += 1;
                    tail = usize::try_from(self.integer()?).map_err(|_| Error::parse("negative tail"))?;
                }
                self.expect(b']')?;
                Ok(Point::Word(AmalgamWord { letters, tail }))
            }
            Some(b'v') | Some(b'x') => {
                let kind = self.text[self.pos];
                self.pos += 1;
                let side = match self.text.get(self.pos) {
                    Some(b'g') => Side::Left,
                    Some(b'h') => Side::Right,
                    _ => return Err(Error::parse("expected 'g' or 'h' after vertex/point tag")),
                };
                self.pos += 1;
                self.expect(b'[')?;
                let letters = self.letters()?;
                self.expect(b']')?;
                let word = AmalgamWord { letters, tail: 0 };
                if kind == b'v' {
                    Ok(Point::Vertex(VertexId { side, rep: word }))
                } else {
                    Ok(Point::Total(TotalPoint::from_coset(side, word)))
                }
            }
            Some(_) => Ok(Point::Int(self.integer()?)),
            None => Err(Error::parse("empty point literal")),
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut parser = Parser { text: text.as_bytes(), pos: 0 };
        let p = parser.point()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(Error::parse(format!("trailing input in point literal '{text}'")));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn leaf() -> impl Strategy<Value = Point> {
        prop_oneof![
            any::<i32>().prop_map(|i| Point::Int(i as i64)),
            (0usize..50).prop_map(Point::Index),
            prop::collection::vec(-9i64..9, 1..4).prop_map(Point::Lattice),
            prop::collection::vec(prop_oneof![1i32..4, -3i32..0], 0..5).prop_map(Point::Free),
        ]
    }

    fn point() -> impl Strategy<Value = Point> {
        leaf().prop_recursive(3, 16, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..3).prop_map(Point::Tuple),
                prop::collection::btree_map(-5i64..5, inner, 0..3).prop_map(Point::Sparse),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(p in point()) {
            let text = p.to_string();
            prop_assert_eq!(text.parse::<Point>().unwrap(), p);
        }
    }

    #[test]
    fn parses_amalgam_forms() {
        let w: Point = "w[g1.h2|1]".parse().unwrap();
        assert_eq!(w.to_string(), "w[g1.h2|1]");
        let v: Point = "vg[g1.h1]".parse().unwrap();
        assert_eq!(v.to_string(), "vg[g1.h1]");
        let x: Point = "xh[g1]".parse().unwrap();
        assert_eq!(x.to_string(), "xh[g1]");
        assert_eq!("w[]".parse::<Point>().unwrap().to_string(), "w[]");
    }

    #[test]
    fn rejects_garbage() {
        assert!("[1, 2".parse::<Point>().is_err());
        assert!("#-1".parse::<Point>().is_err());
        assert!("3 4".parse::<Point>().is_err());
    }
}
