//! Interpolation schemes, the cardinality equation and the classifier.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::witness::general_plan;

/// `C(n + d, d)`, or `None` on `u128` overflow.
pub fn binomial(n: u64, d: u64) -> Option<u128> {
    let mut c: u128 = 1;
    for i in 1..=u128::from(d) {
        c = c.checked_mul(u128::from(n) + i)? / i;
    }
    Some(c)
}

/// `dim Π_n^d = C(n+d, d)`.
pub fn poly_space_dim(d: u32, n: u32) -> Option<u128> {
    binomial(u64::from(n), u64::from(d))
}

/// Number of Hermite conditions `N = Σ C(p_q + d, d)`.
pub fn condition_count(d: u32, p: &[u32]) -> Option<u128> {
    p.iter().try_fold(0u128, |acc, &q| acc.checked_add(poly_space_dim(d, q)?))
}

/// The unique `n` with `C(n+d, d) = Σ C(p_q+d, d)`, if any.
pub fn solve_degree(d: u32, p: &[u32]) -> Option<u32> {
    if d == 0 || p.is_empty() {
        return None;
    }
    let target = condition_count(d, p)?;
    let mut n = 0u32;
    loop {
        let v = poly_space_dim(d, n)?;
        if v >= target {
            return (v == target).then_some(n);
        }
        n += 1;
    }
}

/// Dimension `d`, multiplicities `p` sorted ascending and the derived degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Scheme {
    d: u32,
    p: Vec<u32>,
    n: Option<u32>,
}

impl Scheme {
    pub fn new(d: u32, mut p: Vec<u32>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if p.is_empty() {
            return Err(Error::InvalidArgument("at least one node is required".into()));
        }
        p.sort_unstable();
        let n = solve_degree(d, &p);
        Ok(Scheme { d, p, n })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn p(&self) -> &[u32] {
        &self.p
    }

    pub fn m(&self) -> usize {
        self.p.len()
    }

    /// `None` when the cardinality equation has no solution.
    pub fn n(&self) -> Option<u32> {
        self.n
    }

    pub fn is_feasible(&self) -> bool {
        self.n.is_some()
    }

    /// `k = m − d`, the number of nodes beyond `d`.
    pub fn extra_nodes(&self) -> i64 {
        self.m() as i64 - i64::from(self.d)
    }

    pub fn condition_count(&self) -> u128 {
        condition_count(self.d, &self.p).expect("condition count fits in u128")
    }

    fn feasible_degree(&self) -> Result<u32> {
        self.n.ok_or_else(|| Error::Contract(format!("scheme d={} p={:?} is infeasible", self.d, self.p)))
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.p.iter().map(u32::to_string).collect();
        write!(f, "d={} p=({})", self.d, p.join(","))?;
        match self.n {
            Some(n) => write!(f, " n={n}"),
            None => write!(f, " infeasible"),
        }
    }
}

/// `C(n+d̃, d̃) ≥` the sum of `C(p_q+d̃, d̃)` over the `d̃+1` largest `p_q`.
pub fn restriction_inequality_holds(scheme: &Scheme, d_tilde: u32) -> Result<bool> {
    if d_tilde == 0 || d_tilde > scheme.d {
        return Err(Error::InvalidArgument(format!(
            "restricted dimension {d_tilde} outside 1..={}",
            scheme.d
        )));
    }
    let n = scheme.feasible_degree()?;
    let take = (d_tilde as usize + 1).min(scheme.m());
    let top = &scheme.p[scheme.m() - take..];
    let lhs = poly_space_dim(d_tilde, n);
    let rhs = condition_count(d_tilde, top);
    match (lhs, rhs) {
        (Some(l), Some(r)) => Ok(l >= r),
        _ => Err(Error::Resource("binomial coefficient overflow".into())),
    }
}

/// `Σ p_q + m ≤ n·d`.
pub fn count_condition_holds(scheme: &Scheme) -> Result<bool> {
    let n = scheme.feasible_degree()?;
    let lhs: u64 = scheme.p.iter().map(|&q| u64::from(q)).sum::<u64>() + scheme.m() as u64;
    Ok(lhs <= u64::from(n) * u64::from(scheme.d))
}

/// Regularity verdict of the criterion for schemes where at most `d+1`
/// nodes carry derivatives: regular iff `p_q + p_r < n` for every pair.
/// `None` when more than `d+1` nodes have `p_q ≥ 1`.
pub fn sauer_xu_regular(scheme: &Scheme) -> Option<bool> {
    let n = scheme.n?;
    let carriers: Vec<u32> = scheme.p.iter().copied().filter(|&q| q >= 1).collect();
    if carriers.len() > scheme.d as usize + 1 {
        return None;
    }
    let m = carriers.len();
    // sorted, so the largest pair is the last two
    Some(m < 2 || carriers[m - 2] + carriers[m - 1] < n)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Status {
    Singular,
    AlmostRegular,
    Infeasible,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Singular => "Singular",
            Status::AlmostRegular => "AlmostRegular",
            Status::Infeasible => "Infeasible",
            Status::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// The result that decided (or corroborates) a classification.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    UnivariateOutOfPaper,
    TaylorOutOfPaper,
    LagrangeOutOfPaper,
    CardinalityEquation,
    RestrictionInequality,
    CountCondition,
    FewNodes,
    TwoExtraNodes,
    FourPointPlanar,
    PlanarPattern,
    ThreeExtraNodes,
    FivePointPlanar,
    UniformFivePointPlanar,
    NearUniformFivePoint,
    ConicPower,
    DimensionBound,
    DoubleDimensionBound,
    SauerXu,
    Unresolved,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::UnivariateOutOfPaper => "univariate-out-of-paper",
            Rule::TaylorOutOfPaper => "taylor-out-of-paper",
            Rule::LagrangeOutOfPaper => "lagrange-out-of-paper",
            Rule::CardinalityEquation => "cardinality-equation",
            Rule::RestrictionInequality => "restriction-inequality",
            Rule::CountCondition => "count-condition",
            Rule::FewNodes => "few-nodes",
            Rule::TwoExtraNodes => "two-extra-nodes",
            Rule::FourPointPlanar => "four-point-planar",
            Rule::PlanarPattern => "planar-pattern",
            Rule::ThreeExtraNodes => "three-extra-nodes",
            Rule::FivePointPlanar => "five-point-planar",
            Rule::UniformFivePointPlanar => "uniform-five-point-planar",
            Rule::NearUniformFivePoint => "near-uniform-five-point",
            Rule::ConicPower => "conic-power",
            Rule::DimensionBound => "dimension-bound",
            Rule::DoubleDimensionBound => "double-dimension-bound",
            Rule::SauerXu => "sauer-xu",
            Rule::Unresolved => "unresolved",
        }
    }

    /// Rules for cases the underlying theory explicitly sets aside.
    pub fn is_out_of_paper(self) -> bool {
        matches!(self, Rule::UnivariateOutOfPaper | Rule::TaylorOutOfPaper | Rule::LagrangeOutOfPaper)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Which explicit construction proves a singular verdict.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRecipe {
    General,
    FourPoint,
    FivePoint,
    ConicPower,
}

impl WitnessRecipe {
    pub fn id(self) -> &'static str {
        match self {
            WitnessRecipe::General => "general",
            WitnessRecipe::FourPoint => "four_point",
            WitnessRecipe::FivePoint => "five_point",
            WitnessRecipe::ConicPower => "conic_power",
        }
    }
}

impl fmt::Display for WitnessRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassificationResult {
    pub d: u32,
    pub p: Vec<u32>,
    pub m: usize,
    pub n: Option<u32>,
    pub status: Status,
    pub rule: Rule,
    pub corroborating: Vec<Rule>,
    pub witness_recipe: Option<WitnessRecipe>,
}

/// Degree of `l_12^{p_1+1} l_34^{p_3+1} l_24^{max(p_4−p_3, p_2−p_1)}`.
pub fn four_point_degree(p: &[u32]) -> u32 {
    (p[0] + p[3]).max(p[1] + p[2]) + 2
}

/// `d = 2, m = 4, p_4 > p_2, p_3 > p_1` with the product fitting degree `n`.
pub fn four_point_applies(d: u32, p: &[u32], n: u32) -> bool {
    d == 2 && p.len() == 4 && p[3] > p[1] && p[2] > p[0] && four_point_degree(p) <= n
}

/// `p_2 + p_3 + 2 ≤ p_4 + p_5` in the plane.
fn five_point_pattern(d: u32, p: &[u32]) -> bool {
    d == 2 && p.len() == 5 && p[1] + p[2] + 2 <= p[3] + p[4]
}

/// `p_1 ≤ p_2 = p_3 = p_4 = p_5 − 1` in the plane.
fn five_point_near_uniform(d: u32, p: &[u32]) -> bool {
    d == 2 && p.len() == 5 && p[1] == p[2] && p[2] == p[3] && p[4] == p[3] + 1
}

/// Budget for the reduced four-node problem of the five-point construction.
pub fn five_point_budget(d: u32, p: &[u32], n: u32) -> Option<i64> {
    let base = 2 * i64::from(p.first().copied()?);
    if five_point_pattern(d, p) {
        Some(i64::from(p[3]) + i64::from(p[4]) - base - 1)
    } else if five_point_near_uniform(d, p) {
        Some(i64::from(n) - base - 2)
    } else {
        None
    }
}

/// Reduced multiplicities `p_i − p_1 − 1` on nodes 2..5, negatives dropped,
/// paired with their original node index.
pub fn five_point_reduced(p: &[u32]) -> Vec<(usize, u32)> {
    (1..p.len()).filter(|&i| p[i] > p[0]).map(|i| (i, p[i] - p[0] - 1)).collect()
}

/// The five-point construction applies and its product fits both budgets.
pub fn five_point_applies(d: u32, p: &[u32], n: u32) -> bool {
    let Some(budget) = five_point_budget(d, p, n) else {
        return false;
    };
    let reduced: Vec<u32> = five_point_reduced(p).into_iter().map(|(_, q)| q).collect();
    let inner = if reduced.is_empty() { 0 } else { general_plan(d as usize, &reduced).degree };
    i64::from(inner) <= budget && 2 * (p[0] + 1) + inner <= n
}

/// `Q^{p_5+1}` for the conic `Q` through all five planar nodes.
pub fn conic_power_applies(d: u32, p: &[u32], n: u32) -> bool {
    d == 2 && p.len() == 5 && n >= 2 * p[4] + 2
}

/// The first construction that provably yields a witness for `scheme`.
pub fn witness_recipe_for(scheme: &Scheme) -> Option<WitnessRecipe> {
    let n = scheme.n?;
    let (d, p) = (scheme.d, scheme.p());
    if scheme.m() >= 2 && count_condition_holds(scheme).ok()? {
        Some(WitnessRecipe::General)
    } else if four_point_applies(d, p, n) {
        Some(WitnessRecipe::FourPoint)
    } else if five_point_applies(d, p, n) {
        Some(WitnessRecipe::FivePoint)
    } else if conic_power_applies(d, p, n) {
        Some(WitnessRecipe::ConicPower)
    } else {
        None
    }
}

fn two_extra_almost_regular(d: u32, p: &[u32]) -> bool {
    match d {
        2 => {
            (p[0] == p[1] && p[1] == p[2] && p[3] == p[2] + 1)
                || (p[0] + 1 == p[1] && p[1] == p[2] && p[2] == p[3])
        }
        3 => p.iter().all(|&q| q == 1),
        _ => false,
    }
}

fn three_extra_almost_regular(d: u32, p: &[u32]) -> bool {
    d == 3 && p.iter().all(|&q| q == 3)
}

/// Classifies a scheme; the multiplicities may be given in any order.
pub fn classify(d: u32, p: &[u32]) -> Result<ClassificationResult> {
    let scheme = Scheme::new(d, p.to_vec())?;
    Ok(classify_scheme(&scheme))
}

pub fn classify_scheme(scheme: &Scheme) -> ClassificationResult {
    let verdict = |status, rule, corroborating: Vec<Rule>, recipe| ClassificationResult {
        d: scheme.d,
        p: scheme.p.clone(),
        m: scheme.m(),
        n: scheme.n,
        status,
        rule,
        corroborating,
        witness_recipe: recipe,
    };
    let (d, p, m) = (scheme.d, scheme.p(), scheme.m());

    if d == 1 {
        return verdict(Status::AlmostRegular, Rule::UnivariateOutOfPaper, vec![], None);
    }
    if m == 1 {
        return verdict(Status::AlmostRegular, Rule::TaylorOutOfPaper, vec![], None);
    }
    let Some(n) = scheme.n else {
        return verdict(Status::Infeasible, Rule::CardinalityEquation, vec![], None);
    };
    if p.iter().all(|&q| q == 0) {
        return verdict(Status::AlmostRegular, Rule::LagrangeOutOfPaper, vec![], None);
    }

    let mut singular = Vec::new();
    let restriction_ok = (1..=d).all(|dt| restriction_inequality_holds(scheme, dt).unwrap_or(false));
    if !restriction_ok {
        singular.push(Rule::RestrictionInequality);
    }
    if count_condition_holds(scheme).unwrap_or(false) {
        singular.push(Rule::CountCondition);
    }
    if m <= d as usize + 1 {
        singular.push(Rule::FewNodes);
    }
    let sx = sauer_xu_regular(scheme);
    let k = scheme.extra_nodes();

    let almost_regular_rule = if !singular.is_empty() {
        None
    } else if k == 2 && two_extra_almost_regular(d, p) {
        Some(Rule::TwoExtraNodes)
    } else if k == 3 && three_extra_almost_regular(d, p) {
        Some(Rule::ThreeExtraNodes)
    } else if sx == Some(true) {
        Some(Rule::SauerXu)
    } else {
        None
    };
    if let Some(rule) = almost_regular_rule {
        return verdict(Status::AlmostRegular, rule, vec![], None);
    }

    match k {
        2 => {
            singular.push(Rule::TwoExtraNodes);
            if four_point_applies(d, p, n) {
                singular.push(Rule::FourPointPlanar);
            }
            let flat_low = p[0] == p[1] && p[1] == p[2];
            let flat_high = p[1] == p[2] && p[2] == p[3];
            if d == 2 && (flat_low || flat_high) && p[3] >= p[0] + 2 {
                singular.push(Rule::PlanarPattern);
            }
        }
        3 => {
            singular.push(Rule::ThreeExtraNodes);
            if five_point_pattern(d, p) && five_point_applies(d, p, n) {
                singular.push(Rule::FivePointPlanar);
            }
            if d == 2 && p.iter().all(|&q| q == p[0]) {
                singular.push(Rule::UniformFivePointPlanar);
            }
            if five_point_near_uniform(d, p) && five_point_applies(d, p, n) {
                singular.push(Rule::NearUniformFivePoint);
            }
            if conic_power_applies(d, p, n) {
                singular.push(Rule::ConicPower);
            }
        }
        k if k >= 4 => {
            let pm = u64::from(p[m - 1]);
            let (du, ku) = (u64::from(d), k as u64);
            if pm >= 1 && du * pm >= ku * (pm + 1) {
                singular.push(Rule::DimensionBound);
            }
            if du >= 2 * ku {
                singular.push(Rule::DoubleDimensionBound);
            }
        }
        _ => {}
    }
    if sx == Some(false) {
        singular.push(Rule::SauerXu);
    }

    if singular.is_empty() {
        return verdict(Status::Unknown, Rule::Unresolved, vec![], None);
    }
    let rule = singular.remove(0);
    verdict(Status::Singular, rule, singular, witness_recipe_for(scheme))
}

/// Bounds for [`enumerate_and_classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasBounds {
    pub d_min: u32,
    pub d_max: u32,
    pub m_max: usize,
    /// Optional cap on `m − d`.
    pub extra_nodes_max: Option<u32>,
    pub p_max: u32,
    /// Largest number of schemes allowed.
    pub cap: usize,
}

impl AtlasBounds {
    pub const DEFAULT_CAP: usize = 1_000_000;

    pub fn new(d_max: u32, p_max: u32, m_max: usize) -> Self {
        AtlasBounds { d_min: 2, d_max, m_max, extra_nodes_max: None, p_max, cap: Self::DEFAULT_CAP }
    }

    fn m_limit(&self, d: u32) -> usize {
        match self.extra_nodes_max {
            Some(k) => self.m_max.min((d + k) as usize),
            None => self.m_max,
        }
    }

    fn count(&self) -> Option<u128> {
        let mut total = 0u128;
        for d in self.d_min..=self.d_max {
            for m in 1..=self.m_limit(d) {
                // multisets of size m from p_max+1 values
                total = total.checked_add(binomial(u64::from(self.p_max), m as u64)?)?;
            }
        }
        Some(total)
    }
}

/// Non-decreasing sequences of length `m` with entries in `0..=max`, in
/// lexicographic order.
fn sorted_tuples(m: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..m).rev().find(|&i| cur[i] < max) else {
            return out;
        };
        let v = cur[i] + 1;
        cur[i..].iter_mut().for_each(|x| *x = v);
    }
}

/// Every scheme in range with its classification, ordered by `(d, m, p)`.
pub fn enumerate_and_classify(
    bounds: &AtlasBounds,
    exec: Execution,
) -> Result<Vec<(Scheme, ClassificationResult)>> {
    if bounds.d_min == 0 || bounds.d_max < bounds.d_min || bounds.m_max == 0 {
        return Err(Error::InvalidArgument(format!("empty atlas range {bounds:?}")));
    }
    match bounds.count() {
        Some(c) if c <= bounds.cap as u128 => {}
        other => {
            return Err(Error::Resource(format!(
                "atlas would contain {} schemes, cap is {}",
                other.map_or("too many".to_string(), |c| c.to_string()),
                bounds.cap
            )))
        }
    }
    let mut schemes = Vec::new();
    for d in bounds.d_min..=bounds.d_max {
        for m in 1..=bounds.m_limit(d) {
            for p in sorted_tuples(m, bounds.p_max) {
                schemes.push(Scheme::new(d, p)?);
            }
        }
    }
    let results = exec.map_slice(&schemes, classify_scheme);
    Ok(schemes.into_iter().zip(results).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn status(d: u32, p: &[u32]) -> (Status, Rule) {
        let r = classify(d, p).unwrap();
        (r.status, r.rule)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), Some(120));
        assert_eq!(binomial(0, 5), Some(1));
        assert_eq!(poly_space_dim(3, 3), Some(20));
    }

    #[test]
    fn degree_solver() {
        assert_eq!(solve_degree(3, &[1, 1, 1, 1, 1]), Some(3));
        assert_eq!(solve_degree(3, &[3; 6]), Some(7));
        assert_eq!(solve_degree(2, &[1, 1, 1, 1]), None);
        assert_eq!(solve_degree(2, &[3, 3, 3, 7]), Some(10));
        assert_eq!(solve_degree(2, &[0, 2, 2, 4]), Some(6));
    }

    #[test]
    fn restriction_examples() {
        let s = Scheme::new(2, vec![0, 1, 2]).unwrap();
        assert_eq!(s.n(), Some(3));
        assert!(!restriction_inequality_holds(&s, 1).unwrap());
        assert!(restriction_inequality_holds(&s, 2).unwrap());
        assert!(restriction_inequality_holds(&s, 3).is_err());
        assert!(restriction_inequality_holds(&s, 0).is_err());
    }

    #[test]
    fn count_condition_examples() {
        assert!(count_condition_holds(&Scheme::new(2, vec![0, 1, 2]).unwrap()).unwrap());
        assert!(!count_condition_holds(&Scheme::new(3, vec![1; 5]).unwrap()).unwrap());
        assert!(count_condition_holds(&Scheme::new(2, vec![3, 3, 3, 7]).unwrap()).unwrap());
        assert!(count_condition_holds(&Scheme::new(2, vec![1, 1, 1, 1]).unwrap()).is_err());
    }

    #[test]
    fn classifier_examples() {
        assert_eq!(status(3, &[1; 5]), (Status::AlmostRegular, Rule::TwoExtraNodes));
        assert_eq!(status(2, &[1, 1, 0, 1]), (Status::AlmostRegular, Rule::TwoExtraNodes));
        assert_eq!(status(2, &[2, 3, 3, 3]), (Status::AlmostRegular, Rule::TwoExtraNodes));
        assert_eq!(status(3, &[3; 6]), (Status::AlmostRegular, Rule::ThreeExtraNodes));
        let r = classify(4, &[0, 0, 0, 0, 0, 2, 2]).unwrap();
        assert_eq!(r.status, Status::Singular);
        assert!(r.rule == Rule::SauerXu || r.corroborating.contains(&Rule::SauerXu));
        assert_eq!(status(2, &[1, 1, 1, 1]), (Status::Infeasible, Rule::CardinalityEquation));
        assert_eq!(status(2, &[0, 0, 0]), (Status::AlmostRegular, Rule::LagrangeOutOfPaper));
        assert_eq!(status(3, &[4]), (Status::AlmostRegular, Rule::TaylorOutOfPaper));
        assert_eq!(status(1, &[2, 5]), (Status::AlmostRegular, Rule::UnivariateOutOfPaper));
    }

    #[test]
    fn singular_rules_and_recipes() {
        let r = classify(2, &[0, 1, 2]).unwrap();
        assert_eq!((r.status, r.rule), (Status::Singular, Rule::RestrictionInequality));
        assert_eq!(r.corroborating, vec![Rule::CountCondition, Rule::FewNodes, Rule::SauerXu]);
        assert_eq!(r.witness_recipe, Some(WitnessRecipe::General));

        let r = classify(2, &[0, 2, 2, 4]).unwrap();
        assert_eq!(r.status, Status::Singular);
        assert!(r.corroborating.contains(&Rule::FourPointPlanar) || r.rule == Rule::FourPointPlanar);

        let r = classify(2, &[2, 4, 4, 4, 4]).unwrap();
        assert_eq!(r.n, Some(10));
        assert_eq!(r.witness_recipe, Some(WitnessRecipe::ConicPower));
    }

    #[test]
    fn classification_ignores_input_order() {
        assert_eq!(classify(2, &[2, 0, 1]).unwrap(), classify(2, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn json_shape() {
        let r = classify(3, &[1; 5]).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "AlmostRegular");
        assert_eq!(v["rule"], "two-extra-nodes");
        assert_eq!(v["n"], 3);
        assert!(v["witness_recipe"].is_null());
        let r = classify(2, &[0, 1, 2]).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["witness_recipe"], "general");
        assert_eq!(v["corroborating"][0], "count-condition");
    }

    #[test]
    fn tuples_are_sorted_multisets() {
        let t = sorted_tuples(2, 2);
        assert_eq!(t, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(sorted_tuples(4, 1).len(), 5);
    }

    #[test]
    fn atlas_small_range() {
        let mut b = AtlasBounds::new(2, 1, 4);
        b.d_min = 2;
        let rows = enumerate_and_classify(&b, Execution::Sequential).unwrap();
        let m4: Vec<_> = rows.iter().filter(|(s, _)| s.m() == 4).collect();
        assert_eq!(m4.len(), 5);
        let feasible: Vec<_> = m4
            .iter()
            .filter(|(_, r)| r.status != Status::Infeasible)
            .map(|(s, r)| (s.p().to_vec(), r.status))
            .collect();
        assert_eq!(
            feasible,
            vec![(vec![0, 0, 0, 1], Status::AlmostRegular), (vec![0, 1, 1, 1], Status::AlmostRegular),]
        );
        // four Lagrange nodes: 4 is not C(n+2, 2)
        let lagrange = m4.iter().find(|(s, _)| s.p() == [0, 0, 0, 0]).unwrap();
        assert_eq!(lagrange.1.rule, Rule::CardinalityEquation);
        let mut tiny = AtlasBounds::new(5, 5, 9);
        tiny.cap = 10;
        assert!(matches!(enumerate_and_classify(&tiny, Execution::Sequential), Err(Error::Resource(_))));
    }
}
