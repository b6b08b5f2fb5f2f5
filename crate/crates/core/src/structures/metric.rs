use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::label::{LabelComponent, LabelId};
use crate::norm::{Exponent, NormSpec};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::space::LabelledPartitionSpace;
use crate::sparse::SparseFunctional;

/// A metric on the points `#0 … #(n−1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetric<S> {
    d: Vec<Vec<S>>,
}

impl<S: Scalar> FiniteMetric<S> {
    /// Checks symmetry, zero diagonal, nonnegativity and the triangle
    /// inequality (exactly for exact scalars).
    pub fn new(d: Vec<Vec<S>>) -> Result<Self> {
        let n = d.len();
        if n == 0 || d.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("distance matrix must be square and nonempty"));
        }
        let slack = if S::is_exact() { 0.0 } else { 1e-9 };
        for i in 0..n {
            if !d[i][i].is_zero() {
                return Err(Error::invalid(format!("d(#{i}, #{i}) is not zero")));
            }
            for j in 0..n {
                if d[i][j].is_negative() {
                    return Err(Error::invalid(format!("d(#{i}, #{j}) is negative")));
                }
                if d[i][j] != d[j][i] {
                    return Err(Error::invalid(format!("d is not symmetric at (#{i}, #{j})")));
                }
                for k in 0..n {
                    let via = d[i][k].clone() + d[k][j].clone();
                    if d[i][j].to_f64() - via.to_f64() > slack || (S::is_exact() && d[i][j] > via) {
                        return Err(Error::invalid(format!("triangle inequality fails at (#{i}, #{k}, #{j})")));
                    }
                }
            }
        }
        Ok(FiniteMetric { d })
    }

    /// Square matrix, one row per line, comma separated; entries may be
    /// written `a/b`.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for (r, rec) in reader.records().enumerate() {
            let rec = rec.map_err(|e| Error::parse(format!("row {r}: {e}")))?;
            let row = rec
                .iter()
                .enumerate()
                .map(|(c, field)| S::parse_scalar(field).ok_or_else(|| Error::parse(format!("row {r}, column {c}: bad number '{field}'"))))
                .collect::<Result<Vec<S>>>()?;
            rows.push(row);
        }
        Self::new(rows)
    }

    pub fn to_csv(&self) -> String {
        self.d
            .iter()
            .map(|row| row.iter().map(|x| x.to_exact_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }

    /// Shortest-path metric of the complete graph with random edge lengths
    /// `a/b`, `1 ≤ a ≤ 9`, `1 ≤ b ≤ 4`.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut d = vec![vec![S::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let w = S::ratio(rng.gen_range(1..=9), rng.gen_range(1..=4));
                d[i][j] = w.clone();
                d[j][i] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k].clone() + d[k][j].clone();
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        FiniteMetric { d }
    }

    pub fn size(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self, i: usize, j: usize) -> &S {
        &self.d[i][j]
    }

    pub fn points(&self) -> Vec<Point> {
        (0..self.size()).map(Point::Index).collect()
    }
}

/// Labels `Dirac(z)`, `c(x, y)(z) = d(x, z) − d(y, z)`, supremum norm.
pub struct MetricSpace<S> {
    metric: FiniteMetric<S>,
    norm: NormSpec<S>,
}

pub fn metric_realization_space<S: Scalar>(metric: FiniteMetric<S>) -> MetricSpace<S> {
    let n = metric.size();
    let weights = move |l: &LabelId| match l.0.as_slice() {
        [LabelComponent::Dirac(Point::Index(z))] if *z < n => S::one(),
        _ => S::zero(),
    };
    MetricSpace { metric, norm: NormSpec::weighted(Exponent::Sup, Arc::new(weights)) }
}

impl<S: Scalar> MetricSpace<S> {
    pub fn metric(&self) -> &FiniteMetric<S> {
        &self.metric
    }
}

impl<S: Scalar> LabelledPartitionSpace<S> for MetricSpace<S> {
    fn contains(&self, p: &Point) -> bool {
        matches!(p, Point::Index(i) if *i < self.metric.size())
    }

    fn separation(&self, x: &Point, y: &Point) -> Result<SparseFunctional<S>> {
        let (x, y) = (x.as_index()?, y.as_index()?);
        Ok((0..self.metric.size())
            .map(|z| (LabelId::dirac(Point::Index(z)), self.metric.d[x][z].clone() - self.metric.d[y][z].clone()))
            .collect())
    }

    fn norm(&self) -> &NormSpec<S> {
        &self.norm
    }

    fn description(&self) -> String {
        format!("sup-norm realization of a metric on {} points", self.metric.size())
    }

    fn points(&self) -> Option<Vec<Point>> {
        Some(self.metric.points())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::dist;
    use crate::Rational;
    use rand::SeedableRng;

    #[test]
    fn segment_metric() {
        let d: Vec<Vec<Rational>> = (0..6i64).map(|i| (0..6i64).map(|j| Rational::from_int((i - j).abs())).collect()).collect();
        let s = metric_realization_space(FiniteMetric::new(d).unwrap());
        assert_eq!(dist(&s, &Point::Index(1), &Point::Index(4)).unwrap(), 3.0);
        assert_eq!(dist(&s, &Point::Index(2), &Point::Index(2)).unwrap(), 0.0);
    }

    #[test]
    fn two_points_from_csv() {
        let m = FiniteMetric::<Rational>::from_csv("0, 5\n5, 0\n").unwrap();
        let s = metric_realization_space(m);
        assert_eq!(dist(&s, &Point::Index(0), &Point::Index(1)).unwrap(), 5.0);
    }

    #[test]
    fn rejects_non_metrics() {
        assert!(FiniteMetric::<Rational>::from_csv("0,1,5\n1,0,1\n5,1,0").is_err());
        assert!(FiniteMetric::<Rational>::from_csv("0,1\n2,0").is_err());
        assert!(FiniteMetric::<Rational>::from_csv("1,1\n1,0").is_err());
        assert!(FiniteMetric::<Rational>::from_csv("0,x\nx,0").is_err());
    }

    #[test]
    fn random_metrics_round_trip_through_csv() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let m = FiniteMetric::<Rational>::random(6, &mut rng);
        let again = FiniteMetric::<Rational>::from_csv(&m.to_csv()).unwrap();
        assert_eq!(m, again);
    }
}
