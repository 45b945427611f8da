//! Minimal interpolation spaces from the dual description of the ideal.
//!
//! The ideal `I(X, p)` of polynomials vanishing to order `p_q` at every
//! `X_q` has codimension `N = Σ C(p_q + d, d)`. Scanning monomials in
//! ascending grlex and keeping those whose functional vectors are
//! independent of the kept ones yields the standard monomials of `I`, the
//! complement of its leading-term ideal.

use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::functional::{power_tables, FunctionalList};
use crate::linalg::{solve_many, ExactMatrix, IncrementalEchelon};
use crate::poly::{monomials_of_degree, monomials_up_to, MultiIndex, NodeSet, Point, Polynomial, Rational};
use crate::scheme::condition_count;

/// `(x − X)^α` for every `|α| = p + 1`; these generate `I(X, p)`.
pub fn point_ideal_generators(x: &Point, p: u32) -> Vec<Polynomial> {
    let d = x.dim();
    let shifted: Vec<Polynomial> = (0..d)
        .map(|i| {
            let var = Polynomial::variable(d, i);
            &var - &Polynomial::constant(d, x.coords()[i].clone())
        })
        .collect();
    monomials_of_degree(d, p + 1)
        .into_iter()
        .map(|alpha| {
            alpha.exponents().iter().zip(&shifted).fold(Polynomial::one(d), |acc, (&e, l)| &acc * &l.pow(e))
        })
        .collect()
}

/// Standard monomials, ascending grlex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientBasis {
    #[serde(skip)]
    dim: usize,
    monomials: Vec<MultiIndex>,
}

impl QuotientBasis {
    pub fn new(dim: usize, mut monomials: Vec<MultiIndex>) -> Result<Self> {
        for m in &monomials {
            check_dim(dim, m.dim())?;
        }
        monomials.sort();
        monomials.dedup();
        Ok(QuotientBasis { dim, monomials })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, alpha: &MultiIndex) -> bool {
        self.monomials.binary_search(alpha).is_ok()
    }

    /// Every divisor of a member is a member.
    pub fn is_downward_closed(&self) -> bool {
        self.monomials.iter().all(|m| m.immediate_divisors().all(|div| self.contains(&div)))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.monomials.last().map(MultiIndex::degree)
    }

    /// Monomials outside the basis all of whose immediate divisors are in it.
    pub fn minimal_complement(&self) -> Vec<MultiIndex> {
        let mut out = BTreeSet::new();
        if self.monomials.is_empty() {
            out.insert(MultiIndex::zero(self.dim));
        }
        for m in &self.monomials {
            for up in m.immediate_multiples() {
                if !self.contains(&up) && up.immediate_divisors().all(|v| self.contains(&v)) {
                    out.insert(up);
                }
            }
        }
        out.into_iter().collect()
    }
}

fn validate(nodes: &NodeSet, p: &[u32]) -> Result<FunctionalList> {
    check_dim(nodes.len(), p.len())?;
    Ok(FunctionalList::new(nodes.dim(), p))
}

/// Ascending grlex scan with divisor pruning. Stops at `N` accepted
/// monomials, or after a whole degree level is rejected.
pub fn compute_quotient_basis(nodes: &NodeSet, p: &[u32]) -> Result<QuotientBasis> {
    let list = validate(nodes, p)?;
    let d = nodes.dim();
    let target = list.len();
    let mut echelon = IncrementalEchelon::new();
    let mut accepted: BTreeSet<MultiIndex> = BTreeSet::new();
    let mut degree = 0u32;
    while accepted.len() < target {
        let powers = power_tables(nodes, degree);
        let mut level_accepted = false;
        for beta in monomials_of_degree(d, degree) {
            if accepted.len() == target {
                break;
            }
            if !beta.immediate_divisors().all(|v| accepted.contains(&v)) {
                continue;
            }
            if echelon.insert(&list.apply_monomial(&powers, &beta)) {
                accepted.insert(beta);
                level_accepted = true;
            }
        }
        if !level_accepted {
            break;
        }
        degree += 1;
    }
    QuotientBasis::new(d, accepted.into_iter().collect())
}

/// Functional matrix of `(X, p)` restricted to the quotient monomials.
fn quotient_matrix(nodes: &NodeSet, list: &FunctionalList, quotient: &QuotientBasis) -> Result<ExactMatrix> {
    check_dim(list.len(), quotient.len())?;
    check_dim(nodes.dim(), quotient.dim())?;
    let powers = power_tables(nodes, quotient.max_degree().unwrap_or(0));
    let columns: Vec<Vec<Rational>> =
        quotient.monomials().iter().map(|b| list.apply_monomial(&powers, b)).collect();
    ExactMatrix::from_rows((0..list.len()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect())
}

/// The representatives in the quotient span congruent to each input modulo `I(X, p)`.
pub fn normal_forms(
    nodes: &NodeSet,
    p: &[u32],
    quotient: &QuotientBasis,
    polys: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let list = validate(nodes, p)?;
    let matrix = quotient_matrix(nodes, &list, quotient)?;
    let rhs = polys.iter().map(|f| list.apply(nodes, f)).collect::<Result<Vec<_>>>()?;
    let coeffs = solve_many(&matrix, &rhs)?
        .ok_or_else(|| Error::Contract("quotient monomials do not separate the functionals".into()))?;
    coeffs
        .into_iter()
        .map(|c| Polynomial::from_terms(nodes.dim(), quotient.monomials().iter().cloned().zip(c)))
        .collect()
}

pub fn normal_form(
    nodes: &NodeSet,
    p: &[u32],
    quotient: &QuotientBasis,
    f: &Polynomial,
) -> Result<Polynomial> {
    Ok(normal_forms(nodes, p, quotient, std::slice::from_ref(f))?.remove(0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderElement {
    pub leading: MultiIndex,
    pub polynomial: Polynomial,
}

/// `x^β − NF(x^β)` for every minimal monomial `β` outside the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderBasis {
    pub elements: Vec<BorderElement>,
}

impl BorderBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial> {
        self.elements.iter().map(|e| &e.polynomial)
    }
}

/// Fails with a verification error if an element does not lie in `I(X, p)`.
pub fn border_basis(nodes: &NodeSet, p: &[u32], quotient: &QuotientBasis) -> Result<BorderBasis> {
    let d = nodes.dim();
    let leads = quotient.minimal_complement();
    let monos: Vec<Polynomial> =
        leads.iter().map(|b| Polynomial::monomial(b.clone(), Rational::one())).collect();
    let reduced = normal_forms(nodes, p, quotient, &monos)?;
    let mut elements = Vec::with_capacity(leads.len());
    for ((leading, mono), nf) in leads.into_iter().zip(&monos).zip(reduced) {
        let polynomial = mono.try_sub(&nf)?;
        let inside =
            nodes.points().iter().zip(p).all(|(x, &q)| polynomial.vanishes_to_order(x, q).unwrap_or(false));
        if !inside {
            return Err(Error::Verification(format!("border element for {leading} leaves the ideal")));
        }
        debug_assert_eq!(polynomial.dim(), d);
        elements.push(BorderElement { leading, polynomial });
    }
    Ok(BorderBasis { elements })
}

/// The basis is exactly the monomials of degree `≤ n` in `d` variables.
pub fn is_total_degree_space(quotient: &QuotientBasis, n: u32, d: usize) -> bool {
    quotient.dim() == d && quotient.monomials() == monomials_up_to(d, n).as_slice()
}

/// `codim I(X, p) = Σ C(p_q + d, d)`, with the left side from the quotient scan.
pub fn intersection_dimension_check(nodes: &NodeSet, p: &[u32]) -> Result<bool> {
    let quotient = compute_quotient_basis(nodes, p)?;
    let expected = condition_count(nodes.dim() as u32, p)
        .ok_or_else(|| Error::Resource("condition count overflow".into()))?;
    Ok(quotient.len() as u128 == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn generators_at_origin_and_shifted() {
        let g = point_ideal_generators(&Point::origin(2), 0);
        let texts: Vec<String> = g.iter().map(ToString::to_string).collect();
        assert_eq!(texts, vec!["x2", "x1"]);
        let g = point_ideal_generators(&Point::from_integers(&[1, 2]), 1);
        let texts: Vec<String> = g.iter().map(ToString::to_string).collect();
        assert_eq!(texts, vec!["x2^2 - 4*x2 + 4", "x1*x2 - 2*x1 - x2 + 2", "x1^2 - 2*x1 + 1"]);
        for f in &g {
            assert!(f.vanishes_to_order(&Point::from_integers(&[1, 2]), 1).unwrap());
        }
    }

    #[test]
    fn taylor_quotient() {
        let nodes = NodeSet::from_integers(&[&[4, -7]]).unwrap();
        let q = compute_quotient_basis(&nodes, &[1]).unwrap();
        assert_eq!(q.monomials(), &[mi(&[0, 0]), mi(&[0, 1]), mi(&[1, 0])]);
        let q2 = compute_quotient_basis(&nodes, &[2]).unwrap();
        assert!(is_total_degree_space(&q2, 2, 2));
    }

    #[test]
    fn single_origin_border() {
        let nodes = NodeSet::from_integers(&[&[0, 0]]).unwrap();
        let q = compute_quotient_basis(&nodes, &[0]).unwrap();
        let b = border_basis(&nodes, &[0], &q).unwrap();
        let texts: Vec<String> = b.polynomials().map(ToString::to_string).collect();
        assert_eq!(texts, vec!["x2", "x1"]);
    }

    #[test]
    fn two_point_lagrange_border() {
        let nodes = NodeSet::from_integers(&[&[0, 0], &[1, 0]]).unwrap();
        let q = compute_quotient_basis(&nodes, &[0, 0]).unwrap();
        assert_eq!(q.monomials(), &[mi(&[0, 0]), mi(&[1, 0])]);
        let b = border_basis(&nodes, &[0, 0], &q).unwrap();
        let texts: Vec<String> = b.polynomials().map(ToString::to_string).collect();
        assert!(texts.contains(&"x2".to_string()));
        assert!(texts.contains(&"x1^2 - x1".to_string()));
    }

    #[test]
    fn collinear_nodes_leave_total_degree() {
        let nodes = NodeSet::from_integers(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        let q = compute_quotient_basis(&nodes, &[0, 0, 0]).unwrap();
        assert_eq!(q.len(), 3);
        assert!(q.is_downward_closed());
        assert!(!is_total_degree_space(&q, 1, 2));
        assert!(intersection_dimension_check(&nodes, &[0, 0, 0]).unwrap());
    }

    #[test]
    fn normal_form_agrees_on_functionals() {
        let nodes = NodeSet::from_integers(&[&[0, 0], &[2, 1]]).unwrap();
        let p = [1, 0];
        let q = compute_quotient_basis(&nodes, &p).unwrap();
        let f = Polynomial::parse(2, "x1^3*x2 - 5*x2^2 + 7").unwrap();
        let r = normal_form(&nodes, &p, &q, &f).unwrap();
        let diff = f.try_sub(&r).unwrap();
        assert!(diff.vanishes_to_order(nodes.get(0), 1).unwrap());
        assert!(diff.evaluate(nodes.get(1)).unwrap().is_zero());
        assert!(r.terms().all(|(a, _)| q.contains(a)));
    }
}
