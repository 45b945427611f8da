use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;
use rand::Rng;
use serde::{Serialize, Serializer};

use super::rational::{format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// A point of `Q^d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// `X^e` for every coordinate and every `e ≤ max_exp`.
    pub(crate) fn power_table(&self, max_exp: u32) -> Vec<Vec<Rational>> {
        self.0
            .iter()
            .map(|c| {
                let mut row = Vec::with_capacity(max_exp as usize + 1);
                let mut acc = int(1);
                row.push(acc.clone());
                for _ in 0..max_exp {
                    acc = &acc * c;
                    row.push(acc.clone());
                }
                row
            })
            .collect()
    }
}

impl fmt::Display for Point {
    /// Whitespace-separated coordinates, the node file line format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        parts.serialize(serializer)
    }
}

/// A nonempty list of pairwise distinct points of a common dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NodeSet {
    dim: usize,
    points: Vec<Point>,
}

impl NodeSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or_else(|| Error::InvalidArgument("node set is empty".into()))?;
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::InvalidArgument("nodes must have at least one coordinate".into()));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            if !seen.insert(p) {
                return Err(Error::InvalidArgument(format!("node {i} repeats an earlier node")));
            }
        }
        Ok(NodeSet { dim, points })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        NodeSet::new(rows.iter().map(|r| Point::from_integers(r)).collect())
    }

    /// Parses the node file format: one node per line, coordinates as
    /// whitespace-separated rationals. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let coords = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            points.push(Point::new(coords));
        }
        NodeSet::new(points)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    /// Draws `count` distinct nodes with integer coordinates uniform in
    /// `[-bound, bound]`. A node that coincides with an earlier one is
    /// redrawn; after `max_retries` consecutive collisions this gives up.
    pub fn random_integer<R: Rng + ?Sized>(
        count: usize,
        dim: usize,
        bound: i64,
        rng: &mut R,
        max_retries: usize,
    ) -> Result<Self> {
        if bound < 0 {
            return Err(Error::InvalidArgument("coordinate bound must be nonnegative".into()));
        }
        let side = (2 * bound + 1) as f64;
        if side.powi(dim as i32) < count as f64 {
            return Err(Error::InvalidArgument(format!(
                "cannot place {count} distinct nodes in a grid of side {side}"
            )));
        }
        let mut points: Vec<Point> = Vec::with_capacity(count);
        while points.len() < count {
            let mut placed = false;
            for _ in 0..=max_retries {
                let coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
                let candidate = Point::from_integers(&coords);
                if !points.contains(&candidate) {
                    points.push(candidate);
                    placed = true;
                    break;
                }
            }
            if !placed {
                return Err(Error::Resource(format!(
                    "could not draw a distinct node after {max_retries} retries"
                )));
            }
        }
        NodeSet::new(points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, index: usize) -> &Point {
        &self.points[index]
    }

    /// The nodes at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        NodeSet::new(indices.iter().map(|&i| self.points[i].clone()).collect())
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(serializer)
    }
}
