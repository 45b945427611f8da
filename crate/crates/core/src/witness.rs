//! Constructive singularity witnesses.
//!
//! A witness is a nonzero polynomial of degree at most `n` that vanishes to
//! order `p_q` at every node `X_q`. Its existence shows that the Hermite
//! conditions cannot determine an interpolant from `Π_n^d` uniquely.

use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::functional::build_matrix;
use crate::linalg::canonical_null_vector;
use crate::poly::{hyperplane_through, monomials_up_to, LinearForm, NodeSet, Point, Polynomial};
use crate::scheme::{five_point_budget, five_point_reduced, four_point_degree, solve_degree, WitnessRecipe};

/// Nodes, aligned multiplicities and a degree budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessProblem {
    nodes: NodeSet,
    multiplicities: Vec<u32>,
    degree_budget: u32,
}

impl WitnessProblem {
    pub fn new(nodes: NodeSet, multiplicities: Vec<u32>, degree_budget: u32) -> Result<Self> {
        check_dim(nodes.len(), multiplicities.len())?;
        Ok(WitnessProblem { nodes, multiplicities, degree_budget })
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn degree_budget(&self) -> u32 {
        self.degree_budget
    }

    pub fn dim(&self) -> usize {
        self.nodes.dim()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Linear(LinearForm),
    Polynomial(Polynomial),
}

impl Factor {
    pub fn to_polynomial(&self) -> Polynomial {
        match self {
            Factor::Linear(l) => l.to_polynomial(),
            Factor::Polynomial(p) => p.clone(),
        }
    }
}

impl Serialize for Factor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_polynomial().to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub factor: Factor,
    pub exponent: u32,
    /// Node indices (0-based) the factor was built through.
    pub through_nodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    polynomial: Polynomial,
    trace: Vec<TraceEntry>,
}

impl Witness {
    /// Expands the product of the trace factors.
    pub fn from_trace(dim: usize, trace: Vec<TraceEntry>) -> Result<Self> {
        let mut polynomial = Polynomial::one(dim);
        for e in &trace {
            polynomial = polynomial.try_mul(&e.factor.to_polynomial().pow(e.exponent))?;
        }
        Ok(Witness { polynomial, trace })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.polynomial
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    pub fn degree(&self) -> i64 {
        self.polynomial.degree()
    }
}

/// The hyperplane choices of the general algorithm, independent of the nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPlan {
    /// Node sets of the step-3 hyperplanes, each ascending, in loop order.
    pub steps: Vec<Vec<usize>>,
    /// Nodes still carrying a nonzero entry when the loop stops.
    pub final_nodes: Vec<usize>,
    /// Exponent of the closing hyperplane, the largest remaining entry.
    pub final_exponent: u32,
    pub degree: u32,
}

/// Runs the loop on `p̃ = p + 1`: while more than `d` entries are nonzero,
/// decrement the `d` largest (ties to the lower index) and record the
/// hyperplane through them.
pub fn general_plan(d: usize, p: &[u32]) -> GeneralPlan {
    let mut pt: Vec<u32> = p.iter().map(|&q| q + 1).collect();
    let mut steps = Vec::new();
    loop {
        let nonzero: Vec<usize> = (0..pt.len()).filter(|&i| pt[i] > 0).collect();
        if nonzero.len() <= d {
            let final_exponent = pt.iter().copied().max().unwrap_or(0);
            let t = steps.len() as u32;
            return GeneralPlan { steps, final_nodes: nonzero, final_exponent, degree: t + final_exponent };
        }
        let mut order: Vec<usize> = (0..pt.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(pt[i]), i));
        let mut chosen: Vec<usize> = order[..d].to_vec();
        for &i in &chosen {
            pt[i] -= 1;
        }
        chosen.sort_unstable();
        steps.push(chosen);
    }
}

fn hyperplane_entry(nodes: &NodeSet, through: &[usize], exponent: u32) -> Result<TraceEntry> {
    let points: Vec<Point> = through.iter().map(|&i| nodes.get(i).clone()).collect();
    let form = hyperplane_through(&points, nodes.dim())?;
    Ok(TraceEntry { factor: Factor::Linear(form), exponent, through_nodes: through.to_vec() })
}

/// Trace of the general algorithm on the nodes at `index`, with node
/// numbers reported through `index`.
fn general_trace(nodes: &NodeSet, index: &[usize], p: &[u32]) -> Result<(GeneralPlan, Vec<TraceEntry>)> {
    let plan = general_plan(nodes.dim(), p);
    let entry = |set: &[usize], exponent| -> Result<TraceEntry> {
        let mut e = hyperplane_entry(nodes, set, exponent)?;
        e.through_nodes = set.iter().map(|&i| index[i]).collect();
        Ok(e)
    };
    let mut trace = Vec::with_capacity(plan.steps.len() + 1);
    for step in &plan.steps {
        trace.push(entry(step, 1)?);
    }
    if plan.final_exponent > 0 {
        trace.push(entry(&plan.final_nodes, plan.final_exponent)?);
    }
    Ok((plan, trace))
}

fn checked(w: Witness, problem: &WitnessProblem, what: &str) -> Result<Witness> {
    if verify_witness(&w, problem) {
        Ok(w)
    } else {
        Err(Error::Verification(format!("{what} witness failed its own check")))
    }
}

/// The hyperplane-product witness, valid when `Σ p_q + m ≤ n d`.
pub fn construct_general(problem: &WitnessProblem) -> Result<Witness> {
    let m = problem.len();
    let d = problem.dim();
    let p = problem.multiplicities();
    let lhs: u64 = p.iter().map(|&q| u64::from(q)).sum::<u64>() + m as u64;
    if m < 2 || lhs > u64::from(problem.degree_budget) * d as u64 {
        return Err(Error::Contract(format!(
            "general construction needs m >= 2 and sum(p) + m <= n d; got m={m}, sum(p)+m={lhs}, n={}, d={d}",
            problem.degree_budget
        )));
    }
    let all: Vec<usize> = (0..m).collect();
    let (plan, trace) = general_trace(problem.nodes(), &all, p)?;
    if plan.final_exponent > 1 {
        let max_p = p.iter().copied().max().unwrap_or(0);
        assert_eq!(
            plan.final_exponent + plan.steps.len() as u32,
            max_p + 1,
            "closing exponent plus step count must equal max(p) + 1"
        );
    }
    checked(Witness::from_trace(d, trace)?, problem, "general")
}

fn require_sorted(p: &[u32], what: &str) -> Result<()> {
    if p.windows(2).all(|w| w[0] <= w[1]) {
        Ok(())
    } else {
        Err(Error::Contract(format!("{what} expects ascending multiplicities, got {p:?}")))
    }
}

/// `l_12^{p_1+1} l_34^{p_3+1} l_24^{max(p_4−p_3, p_2−p_1)}` for four planar nodes.
pub fn construct_four_point_planar(problem: &WitnessProblem) -> Result<Witness> {
    let p = problem.multiplicities();
    if problem.dim() != 2 || p.len() != 4 {
        return Err(Error::Contract("four-point construction needs 4 planar nodes".into()));
    }
    require_sorted(p, "four-point construction")?;
    if !(p[3] > p[1] && p[2] > p[0]) {
        return Err(Error::Contract(format!("four-point construction needs p4 > p2 and p3 > p1, got {p:?}")));
    }
    if four_point_degree(p) > problem.degree_budget {
        return Err(Error::Contract(format!(
            "four-point product has degree {} > n = {}",
            four_point_degree(p),
            problem.degree_budget
        )));
    }
    let nodes = problem.nodes();
    let mut trace =
        vec![hyperplane_entry(nodes, &[0, 1], p[0] + 1)?, hyperplane_entry(nodes, &[2, 3], p[2] + 1)?];
    let last = (p[3] - p[2]).max(p[1] - p[0]);
    if last > 0 {
        trace.push(hyperplane_entry(nodes, &[1, 3], last)?);
    }
    checked(Witness::from_trace(2, trace)?, problem, "four-point")
}

/// The canonical nonzero polynomial of degree `≤ degree` through `points`,
/// if the monomials of that degree admit one.
pub fn vanishing_polynomial(points: &[Point], dim: usize, degree: u32) -> Result<Option<Polynomial>> {
    let nodes = NodeSet::new(points.to_vec())?;
    check_dim(dim, nodes.dim())?;
    let basis = monomials_up_to(dim, degree);
    let matrix = build_matrix(&nodes, &vec![0; points.len()], &basis)?;
    let Some(v) = canonical_null_vector(&matrix) else {
        return Ok(None);
    };
    Polynomial::from_terms(dim, basis.into_iter().zip(v)).map(Some)
}

/// A nonzero conic through five planar points.
pub fn quadratic_through_five(points: &[Point]) -> Result<Polynomial> {
    if points.len() != 5 || points.iter().any(|x| x.dim() != 2) {
        return Err(Error::InvalidArgument("expected exactly five planar points".into()));
    }
    Ok(vanishing_polynomial(points, 2, 2)?.expect("six conic coefficients under five conditions"))
}

fn five_planar_nodes(problem: &WitnessProblem, what: &str) -> Result<()> {
    if problem.dim() != 2 || problem.len() != 5 {
        return Err(Error::Contract(format!("{what} needs 5 planar nodes")));
    }
    require_sorted(problem.multiplicities(), what)
}

fn conic_entry(problem: &WitnessProblem, exponent: u32) -> Result<TraceEntry> {
    let q = quadratic_through_five(problem.nodes().points())?;
    Ok(TraceEntry { factor: Factor::Polynomial(q), exponent, through_nodes: (0..5).collect() })
}

/// `Q^{p_1+1} f` where `f` is the general witness for `p_i − p_1 − 1` on nodes 2..5.
pub fn construct_five_point_planar(problem: &WitnessProblem) -> Result<Witness> {
    five_planar_nodes(problem, "five-point construction")?;
    let p = problem.multiplicities();
    let n = problem.degree_budget;
    if solve_degree(2, p) != Some(n) {
        return Err(Error::Contract(format!("multiplicities {p:?} do not pose a problem in degree {n}")));
    }
    let budget = five_point_budget(2, p, n)
        .ok_or_else(|| Error::Contract(format!("five-point construction does not cover {p:?}")))?;
    let reduced = five_point_reduced(p);
    let mut trace = vec![conic_entry(problem, p[0] + 1)?];
    if !reduced.is_empty() {
        let index: Vec<usize> = reduced.iter().map(|&(i, _)| i).collect();
        let orders: Vec<u32> = reduced.iter().map(|&(_, q)| q).collect();
        let sub = problem.nodes().subset(&index)?;
        let (plan, inner) = general_trace(&sub, &index, &orders)?;
        if i64::from(plan.degree) > budget || 2 * (p[0] + 1) + plan.degree > n {
            return Err(Error::Contract(format!(
                "reduced witness for {p:?} has degree {} above its budget {budget}",
                plan.degree
            )));
        }
        trace.extend(inner);
    }
    checked(Witness::from_trace(2, trace)?, problem, "five-point")
}

/// `Q^{p_5+1}` for the conic through the five nodes, when `n ≥ 2 p_5 + 2`.
pub fn construct_conic_power(problem: &WitnessProblem) -> Result<Witness> {
    five_planar_nodes(problem, "conic-power construction")?;
    let top = problem.multiplicities()[4];
    if problem.degree_budget < 2 * top + 2 {
        return Err(Error::Contract(format!(
            "conic power of degree {} exceeds n = {}",
            2 * top + 2,
            problem.degree_budget
        )));
    }
    let trace = vec![conic_entry(problem, top + 1)?];
    checked(Witness::from_trace(2, trace)?, problem, "conic-power")
}

pub fn construct(recipe: WitnessRecipe, problem: &WitnessProblem) -> Result<Witness> {
    match recipe {
        WitnessRecipe::General => construct_general(problem),
        WitnessRecipe::FourPoint => construct_four_point_planar(problem),
        WitnessRecipe::FivePoint => construct_five_point_planar(problem),
        WitnessRecipe::ConicPower => construct_conic_power(problem),
    }
}

/// Nonzero, degree within budget and vanishing to order `p_q` at each `X_q`.
pub fn verify_witness(witness: &Witness, problem: &WitnessProblem) -> bool {
    let f = witness.polynomial();
    if f.is_zero() || f.dim() != problem.dim() || f.degree() > i64::from(problem.degree_budget) {
        return false;
    }
    problem
        .nodes()
        .points()
        .iter()
        .zip(problem.multiplicities())
        .all(|(x, &q)| f.vanishes_to_order(x, q).unwrap_or(false))
}
