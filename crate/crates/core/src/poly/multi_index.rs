use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{check_dim, Result};

/// Exponent vector `α = (α_1, …, α_d)` of a monomial `x^α`.
///
/// `Ord` is graded lexicographic: total degree first, then lexicographic on
/// the exponents ((1,0,0) > (0,0,1)). Comparing indices of different
/// lengths is a logic error; use [`grlex_compare`] for a checked comparison.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The exponent of `x_{axis+1}`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[axis] = 1;
        MultiIndex(exps)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `|α|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self ≤ other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other − self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.divides(other).then(|| MultiIndex(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    /// Indices obtained by lowering one positive exponent by one.
    pub fn immediate_divisors(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| {
            let mut exps = self.0.clone();
            exps[i] -= 1;
            MultiIndex(exps)
        })
    }

    /// Indices obtained by raising one exponent by one.
    pub fn immediate_multiples(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        (0..self.dim()).map(|i| {
            let mut exps = self.0.clone();
            exps[i] += 1;
            MultiIndex(exps)
        })
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }
}

/// Graded lexicographic comparison of two indices of equal length.
pub fn grlex_compare(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    check_dim(a.dim(), b.dim())?;
    Ok(a.cmp(b))
}

/// All indices of total degree exactly `degree` in `dim` variables,
/// ascending in grlex (equivalently, lex within the degree).
pub fn monomials_of_degree(dim: usize, degree: u32) -> Vec<MultiIndex> {
    fn fill(prefix: &mut Vec<u32>, remaining_vars: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
        if remaining_vars == 1 {
            prefix.push(remaining);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first);
            fill(prefix, remaining_vars - 1, remaining - first, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if degree == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(dim), dim, degree, &mut out);
    out
}

/// All indices with `|α| ≤ degree`, ascending grlex. This is the monomial
/// basis of the polynomials of total degree at most `degree`.
pub fn monomials_up_to(dim: usize, degree: u32) -> Vec<MultiIndex> {
    (0..=degree).flat_map(|k| monomials_of_degree(dim, k)).collect()
}
