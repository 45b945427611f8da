//! Hermite functionals, generalized Vandermonde matrices and regularity sampling.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::exec::Execution;
use crate::linalg::{exact_rank, solve, ExactMatrix};
use crate::poly::{monomials_up_to, MultiIndex, NodeSet, Point, Polynomial, Rational};
use crate::scheme::{poly_space_dim, Scheme};

/// Redraw limit for coincident random nodes.
pub const MAX_NODE_RETRIES: usize = 1000;

/// The functionals `f ↦ ∂^α f(X_q)` with `|α| ≤ p_q`, ordered by node and
/// then ascending grlex `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalList {
    dim: usize,
    entries: Vec<(usize, MultiIndex)>,
}

impl FunctionalList {
    pub fn new(dim: usize, p: &[u32]) -> Self {
        let entries = p
            .iter()
            .enumerate()
            .flat_map(|(q, &pq)| monomials_up_to(dim, pq).into_iter().map(move |a| (q, a)))
            .collect();
        FunctionalList { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, MultiIndex)] {
        &self.entries
    }

    /// All functionals applied to `x^β`.
    pub fn apply_monomial(&self, powers: &[Vec<Vec<Rational>>], beta: &MultiIndex) -> Vec<Rational> {
        self.entries.iter().map(|(q, alpha)| monomial_functional(&powers[*q], alpha, beta)).collect()
    }

    /// All functionals applied to `f`.
    pub fn apply(&self, nodes: &NodeSet, f: &Polynomial) -> Result<Vec<Rational>> {
        check_dim(self.dim, f.dim())?;
        self.entries.iter().map(|(q, alpha)| f.derivative_at(alpha, nodes.get(*q))).collect()
    }
}

/// `∂^α x^β` at the point whose power table is `powers`:
/// `Π (β_i)_{α_i} X_i^{β_i − α_i}`.
pub fn monomial_functional(powers: &[Vec<Rational>], alpha: &MultiIndex, beta: &MultiIndex) -> Rational {
    if !alpha.divides(beta) {
        return Rational::zero();
    }
    let mut factor = BigInt::one();
    let mut value = Rational::one();
    for (axis, (&a, &b)) in alpha.exponents().iter().zip(beta.exponents()).enumerate() {
        for i in 0..a {
            factor *= b - i;
        }
        value *= &powers[axis][(b - a) as usize];
    }
    value * Rational::from_integer(factor)
}

pub(crate) fn power_tables(nodes: &NodeSet, max_exp: u32) -> Vec<Vec<Vec<Rational>>> {
    nodes.points().iter().map(|x| power_table(x, max_exp)).collect()
}

fn power_table(x: &Point, max_exp: u32) -> Vec<Vec<Rational>> {
    x.power_table(max_exp)
}

/// Rows are the Hermite functionals, columns the basis monomials.
pub fn build_matrix(nodes: &NodeSet, p: &[u32], basis: &[MultiIndex]) -> Result<ExactMatrix> {
    check_dim(nodes.len(), p.len())?;
    if basis.is_empty() {
        return Err(Error::InvalidArgument("monomial basis is empty".into()));
    }
    for b in basis {
        check_dim(nodes.dim(), b.dim())?;
    }
    let list = FunctionalList::new(nodes.dim(), p);
    let max_exp = basis.iter().flat_map(|b| b.exponents().iter().copied()).max().unwrap_or(0);
    let powers = power_tables(nodes, max_exp);
    let columns: Vec<Vec<Rational>> = basis.iter().map(|b| list.apply_monomial(&powers, b)).collect();
    let rows = (0..list.len()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    ExactMatrix::from_rows(rows)
}

/// Prescribed values `c_{q,α}`, keyed by functional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InterpolationData {
    values: BTreeMap<(usize, MultiIndex), Rational>,
}

impl InterpolationData {
    pub fn new() -> Self {
        InterpolationData::default()
    }

    pub fn insert(&mut self, node: usize, alpha: MultiIndex, value: Rational) {
        self.values.insert((node, alpha), value);
    }

    pub fn get(&self, node: usize, alpha: &MultiIndex) -> Option<&Rational> {
        self.values.get(&(node, alpha.clone()))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Zero data for every functional of `list`.
    pub fn zeros(list: &FunctionalList) -> Self {
        let mut data = InterpolationData::new();
        for (q, a) in list.entries() {
            data.insert(*q, a.clone(), Rational::zero());
        }
        data
    }

    /// The Hermite data of `f`.
    pub fn of_polynomial(nodes: &NodeSet, p: &[u32], f: &Polynomial) -> Result<Self> {
        let list = FunctionalList::new(nodes.dim(), p);
        let mut data = InterpolationData::new();
        for ((q, a), v) in list.entries().iter().zip(list.apply(nodes, f)?) {
            data.insert(*q, a.clone(), v);
        }
        Ok(data)
    }

    /// Values in the order of `list`; every functional must be present and
    /// nothing else.
    pub fn to_vector(&self, list: &FunctionalList) -> Result<Vec<Rational>> {
        check_dim(list.len(), self.values.len())?;
        list.entries()
            .iter()
            .map(|(q, a)| {
                self.get(*q, a)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument(format!("no value for node {q} derivative {a}")))
            })
            .collect()
    }
}

/// The unique interpolant in the span of `basis`; `None` if the square
/// functional matrix is singular.
pub fn solve_interpolation(
    nodes: &NodeSet,
    p: &[u32],
    data: &InterpolationData,
    basis: &[MultiIndex],
) -> Result<Option<Polynomial>> {
    let list = FunctionalList::new(nodes.dim(), p);
    check_dim(list.len(), basis.len())?;
    let rhs = data.to_vector(&list)?;
    let matrix = build_matrix(nodes, p, basis)?;
    let Some(c) = solve(&matrix, &rhs)? else {
        return Ok(None);
    };
    Polynomial::from_terms(nodes.dim(), basis.iter().cloned().zip(c)).map(Some)
}

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `m` distinct integer nodes in `[−bound, bound]^d` for one trial.
pub fn random_nodes(m: usize, d: usize, bound: i64, seed: u64, trial: u64) -> Result<NodeSet> {
    NodeSet::random_integer(m, d, bound, &mut trial_rng(seed, trial), MAX_NODE_RETRIES)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankDeficientDraw {
    pub trial: u64,
    pub rank: usize,
    pub nodes: NodeSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingReport {
    pub d: u32,
    pub p: Vec<u32>,
    pub n: u32,
    /// Number of conditions, equal to `dim Π_n^d`.
    pub conditions: usize,
    pub trials: u64,
    pub bound: i64,
    pub seed: u64,
    pub full_rank_count: u64,
    pub ranks: Vec<usize>,
    pub failing: Vec<RankDeficientDraw>,
}

impl SamplingReport {
    pub fn full_rank_fraction(&self) -> f64 {
        self.full_rank_count as f64 / self.trials as f64
    }
}

pub fn sample_regularity(scheme: &Scheme, trials: u64, bound: i64, seed: u64) -> Result<SamplingReport> {
    sample_regularity_with(scheme, trials, bound, seed, Execution::default())
}

/// Exact rank of the square functional matrix over `Π_n^d` on `trials`
/// random node sets. Trial `t` uses `trial_rng(seed, t)`, so the report
/// does not depend on `exec`.
pub fn sample_regularity_with(
    scheme: &Scheme,
    trials: u64,
    bound: i64,
    seed: u64,
    exec: Execution,
) -> Result<SamplingReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let n = scheme.n().ok_or_else(|| {
        Error::Contract(format!("{scheme}: condition count is not the dimension of any Π_n^d"))
    })?;
    let d = scheme.d();
    let conditions = scheme.condition_count();
    if poly_space_dim(d, n) != Some(conditions) {
        return Err(Error::Contract(format!("{scheme}: condition count differs from dim Π_n^d")));
    }
    let basis = monomials_up_to(d as usize, n);
    let outcomes = exec.map_range(trials as usize, |t| -> Result<(usize, NodeSet)> {
        let nodes = random_nodes(scheme.m(), d as usize, bound, seed, t as u64)?;
        let rank = exact_rank(&build_matrix(&nodes, scheme.p(), &basis)?);
        Ok((rank, nodes))
    });
    let mut report = SamplingReport {
        d,
        p: scheme.p().to_vec(),
        n,
        conditions: conditions as usize,
        trials,
        bound,
        seed,
        full_rank_count: 0,
        ranks: Vec::with_capacity(trials as usize),
        failing: Vec::new(),
    };
    for (t, outcome) in outcomes.into_iter().enumerate() {
        let (rank, nodes) = outcome?;
        report.ranks.push(rank);
        if rank == basis.len() {
            report.full_rank_count += 1;
        } else {
            report.failing.push(RankDeficientDraw { trial: t as u64, rank, nodes });
        }
    }
    Ok(report)
}
