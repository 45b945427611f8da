use std::cmp::Ordering;

use hermite_core::functional::{build_matrix, random_nodes};
use hermite_core::linalg::{exact_rank, ExactMatrix};
use hermite_core::poly::{monomials_up_to, ratio};
use hermite_core::scheme::{binomial, count_condition_holds};
use hermite_core::witness::general_plan;
use hermite_core::{
    classify, grlex_compare, hyperplane_through, solve_degree, MultiIndex, Point, Polynomial, Scheme, Status,
};
use proptest::prelude::*;

fn index(dim: usize) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0u32..4, dim).prop_map(MultiIndex::new)
}

fn polynomial(dim: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, dim), -6i64..7, 1i64..4), 0..6).prop_map(
        move |terms| {
            let terms = terms.into_iter().map(|(e, a, b)| (MultiIndex::new(e), ratio(a, b)));
            Polynomial::from_terms(dim, terms).unwrap()
        },
    )
}

fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-4i64..5, dim).prop_map(|c| Point::from_integers(&c))
}

fn add(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.try_add(b).unwrap()
}

fn mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.try_mul(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grlex_refines_degree(a in index(3), b in index(3)) {
        let ord = grlex_compare(&a, &b).unwrap();
        if a.degree() != b.degree() {
            prop_assert_eq!(ord, a.degree().cmp(&b.degree()));
        }
        prop_assert_eq!(ord == Ordering::Equal, a == b);
        prop_assert_eq!(grlex_compare(&b, &a).unwrap(), ord.reverse());
    }

    #[test]
    fn grlex_is_multiplicative(a in index(3), b in index(3), g in index(3)) {
        let lhs = grlex_compare(&a.add(&g), &b.add(&g)).unwrap();
        prop_assert_eq!(lhs, grlex_compare(&a, &b).unwrap());
    }

    #[test]
    fn zero_index_is_minimal(a in index(3)) {
        prop_assert_ne!(grlex_compare(&MultiIndex::zero(3), &a).unwrap(), Ordering::Greater);
    }

    #[test]
    fn add_then_subtract_roundtrips(f in polynomial(3), g in polynomial(3)) {
        prop_assert_eq!(add(&f, &g).try_sub(&g).unwrap(), f);
    }

    #[test]
    fn multiplication_distributes(f in polynomial(2), g in polynomial(2), h in polynomial(2)) {
        prop_assert_eq!(mul(&f, &add(&g, &h)), add(&mul(&f, &g), &mul(&f, &h)));
    }

    #[test]
    fn differentiation_is_linear(f in polynomial(3), g in polynomial(3), a in index(3), c in -5i64..6) {
        let c = ratio(c, 1);
        let lhs = add(&f.scale(&c), &g).differentiate(&a).unwrap();
        let rhs = add(&f.differentiate(&a).unwrap().scale(&c), &g.differentiate(&a).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rule(f in polynomial(3), g in polynomial(3), axis in 0usize..3) {
        let e = MultiIndex::unit(3, axis);
        let lhs = mul(&f, &g).differentiate(&e).unwrap();
        let rhs = add(
            &mul(&f.differentiate(&e).unwrap(), &g),
            &mul(&f, &g.differentiate(&e).unwrap()),
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_at_matches_differentiate(f in polynomial(3), a in index(3), x in point(3)) {
        let direct = f.derivative_at(&a, &x).unwrap();
        prop_assert_eq!(direct, f.differentiate(&a).unwrap().evaluate(&x).unwrap());
    }

    #[test]
    fn product_vanishing_orders_add(
        f in polynomial(2), g in polynomial(2), x in point(2), p in 0u32..2, q in 0u32..2,
    ) {
        // shift so that f vanishes to order p+1 and g to order q+1 at x
        let lx = Polynomial::variable(2, 0)
            .try_sub(&Polynomial::constant(2, x.coords()[0].clone()))
            .unwrap();
        let fp = mul(&f, &lx.pow(p + 1));
        let gq = mul(&g, &lx.pow(q + 1));
        prop_assert!(fp.vanishes_to_order(&x, p).unwrap());
        prop_assert!(gq.vanishes_to_order(&x, q).unwrap());
        prop_assert!(mul(&fp, &gq).vanishes_to_order(&x, p + q + 1).unwrap());
    }

    #[test]
    fn display_parse_roundtrip(f in polynomial(3)) {
        let text = f.to_string();
        prop_assert_eq!(Polynomial::parse(3, &text).unwrap(), f);
    }

    #[test]
    fn hyperplane_vanishes_on_its_points(pts in prop::collection::vec(point(3), 1..4)) {
        let form = hyperplane_through(&pts, 3).unwrap();
        prop_assert!(!form.is_zero());
        for x in &pts {
            prop_assert_eq!(form.evaluate(x).unwrap(), ratio(0, 1));
        }
    }

    #[test]
    fn rank_is_transpose_invariant(
        rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..6),
    ) {
        let m = ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| ratio(v, 1)).collect()).collect(),
        ).unwrap();
        prop_assert_eq!(exact_rank(&m), exact_rank(&m.transpose()));
        prop_assert!(exact_rank(&m) <= m.rows().min(m.cols()));
    }

    #[test]
    fn poly_space_dimension_is_strictly_increasing(d in 1u64..6, n in 0u64..20) {
        prop_assert!(binomial(n + 1, d).unwrap() > binomial(n, d).unwrap());
    }

    #[test]
    fn solved_degree_satisfies_cardinality(d in 1u32..5, p in prop::collection::vec(0u32..5, 1..7)) {
        if let Some(n) = solve_degree(d, &p) {
            let conditions: u128 = p.iter().map(|&q| binomial(q as u64, d as u64).unwrap()).sum();
            prop_assert_eq!(binomial(n as u64, d as u64).unwrap(), conditions);
        }
    }

    #[test]
    fn classification_ignores_order(d in 2u32..5, mut p in prop::collection::vec(0u32..5, 2..8)) {
        let a = classify(d, &p).unwrap();
        p.reverse();
        let b = classify(d, &p).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a, classify(d, &p).unwrap());
    }

    #[test]
    fn count_condition_excludes_almost_regular(d in 2u32..5, p in prop::collection::vec(0u32..5, 2..8)) {
        let scheme = Scheme::new(d, p.clone()).unwrap();
        if scheme.is_feasible() && count_condition_holds(&scheme).unwrap() {
            prop_assert_ne!(classify(d, &p).unwrap().status, Status::AlmostRegular);
        }
    }

    #[test]
    fn general_plan_drops_by_d_per_step(d in 2usize..5, p in prop::collection::vec(0u32..5, 2..9)) {
        let plan = general_plan(d, &p);
        let start: u32 = p.iter().map(|&q| q + 1).sum();
        let left = start - d as u32 * plan.steps.len() as u32;
        prop_assert!(plan.final_nodes.len() <= d);
        prop_assert!(plan.final_exponent as usize * plan.final_nodes.len() >= left as usize);
        prop_assert_eq!(plan.degree, plan.steps.len() as u32 + plan.final_exponent);
        for step in &plan.steps {
            prop_assert_eq!(step.len(), d);
        }
    }

    #[test]
    fn random_nodes_are_deterministic(m in 1usize..6, d in 1usize..4, seed in any::<u64>(), trial in 0u64..50) {
        let a = random_nodes(m, d, 5, seed, trial).unwrap();
        prop_assert_eq!(&a, &random_nodes(m, d, 5, seed, trial).unwrap());
        prop_assert_eq!(a.len(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn functional_matrix_rank_bounded(seed in any::<u64>()) {
        let nodes = random_nodes(3, 2, 5, seed, 0).unwrap();
        let p = [1, 1, 0];
        let basis = monomials_up_to(2, 2);
        let m = build_matrix(&nodes, &p, &basis).unwrap();
        prop_assert_eq!(m.rows(), 7);
        prop_assert_eq!(exact_rank(&m), exact_rank(&m.transpose()));
    }
}
