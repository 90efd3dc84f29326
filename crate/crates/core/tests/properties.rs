//! Property tests for the algebraic invariants that the unit tests only
//! sample: ordering axioms, leading-monomial multiplicativity, division and
//! reduction contracts, text round-trips, and the weight-vector account of
//! possible leading monomials.

use std::cmp::Ordering;

use proptest::prelude::*;

use footprint::suites::exhaustive_reduced_corpus;
use footprint::{
    possible_leading_monomials, run_suite, Field, Grid, Monomial, MonomialOrder, Polynomial,
    SuiteParams,
};

/// The weight-vector account of possible leading monomials covers the
/// leading monomial of every built-in ordering, exhaustively over the small
/// corpora.
#[test]
fn possible_lms_cover_builtin_orderings_exhaustively() {
    let orders = MonomialOrder::builtin_orderings(2);
    assert_eq!(orders.len(), 6); // 2*m!+2 for m = 2
    for spec in ["2", "3"] {
        let field = Field::parse(spec).unwrap();
        let grid = Grid::full(&field, 2).unwrap();
        for f in exhaustive_reduced_corpus(&grid, 4) {
            let possible = possible_leading_monomials(&f).unwrap();
            for ord in &orders {
                let lm = f.leading_monomial(ord).unwrap();
                assert!(
                    possible.contains(&lm),
                    "{} leads {} under {} but is not a possible leading monomial",
                    lm,
                    f,
                    ord
                );
            }
        }
    }
}

/// The factor-splitting equivalence over 500 random products, checked
/// independently of the library's own splitting path.
#[test]
fn split_equivalence_full_budget() {
    let report = run_suite("split-equivalence", &SuiteParams::default()).unwrap();
    assert!(report.passed(), "violations: {:?}", report.violations);
    assert_eq!(report.checks, 500 * 6);
}

fn arb_monomial(num_vars: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, num_vars).prop_map(Monomial::new)
}

/// Term soup mapped into a canonical polynomial over the given field.
fn arb_poly(
    spec: &'static str,
    num_vars: usize,
    max_exp: u32,
    max_terms: usize,
) -> impl Strategy<Value = Polynomial> {
    let field = Field::parse(spec).unwrap();
    let order = field.order();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, num_vars), 0..order),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            &field,
            num_vars,
            terms.into_iter().map(|(exps, c)| {
                (
                    Monomial::new(exps),
                    field.element_from_index(c).expect("index in range"),
                )
            }),
        )
        .expect("same field")
    })
}

fn arb_builtin_order(num_vars: usize) -> impl Strategy<Value = MonomialOrder> {
    let orders = MonomialOrder::builtin_orderings(num_vars);
    prop::sample::select(orders)
}

proptest! {
    // Total order: antisymmetric comparisons, unit minimal, multiplicative.
    #[test]
    fn ordering_axioms(
        ord in arb_builtin_order(3),
        a in arb_monomial(3, 6),
        b in arb_monomial(3, 6),
        p in arb_monomial(3, 6),
    ) {
        prop_assert_eq!(
            ord.compare(&a, &b).unwrap(),
            ord.compare(&b, &a).unwrap().reverse()
        );
        let unit = Monomial::unit(3);
        prop_assert_ne!(ord.compare(&unit, &a).unwrap(), Ordering::Greater);
        if ord.compare(&a, &b).unwrap() == Ordering::Less {
            let ap = a.mul(&p).unwrap();
            let bp = b.mul(&p).unwrap();
            prop_assert_eq!(ord.compare(&ap, &bp).unwrap(), Ordering::Less);
        }
    }

    // Weighted orders obey the same axioms.
    #[test]
    fn weighted_ordering_axioms(
        w1 in 1i64..20, w2 in 1i64..20, den in 1i64..5,
        a in arb_monomial(2, 6),
        b in arb_monomial(2, 6),
        p in arb_monomial(2, 6),
    ) {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let ord = MonomialOrder::weighted(
            vec![
                BigRational::new(BigInt::from(w1), BigInt::from(den)),
                BigRational::from_integer(BigInt::from(w2)),
            ],
            vec![0, 1],
        )
        .unwrap();
        prop_assert_eq!(
            ord.compare(&a, &b).unwrap(),
            ord.compare(&b, &a).unwrap().reverse()
        );
        let unit = Monomial::unit(2);
        prop_assert_ne!(ord.compare(&unit, &a).unwrap(), Ordering::Greater);
        if ord.compare(&a, &b).unwrap() == Ordering::Less {
            prop_assert_eq!(
                ord.compare(&a.mul(&p).unwrap(), &b.mul(&p).unwrap()).unwrap(),
                Ordering::Less
            );
        }
    }

    // Fields are integral domains: leading monomials multiply.
    #[test]
    fn leading_monomial_is_multiplicative(
        f in arb_poly("2^2", 2, 3, 4),
        g in arb_poly("2^2", 2, 3, 4),
        ord in arb_builtin_order(2),
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let prod = f.mul(&g).unwrap();
        prop_assert_eq!(
            prod.leading_monomial(&ord).unwrap(),
            f.leading_monomial(&ord).unwrap()
                .mul(&g.leading_monomial(&ord).unwrap())
                .unwrap()
        );
    }

    // Division: exact re-expansion and fully reduced remainder.
    #[test]
    fn division_invariant(
        f in arb_poly("3", 2, 3, 4),
        d1 in arb_poly("3", 2, 2, 3),
        d2 in arb_poly("3", 2, 2, 3),
        ord in arb_builtin_order(2),
    ) {
        prop_assume!(!d1.is_zero() && !d2.is_zero());
        let divisors = [d1, d2];
        let (quotients, remainder) = f.divide(&divisors, &ord).unwrap();
        let mut total = remainder.clone();
        for (q, d) in quotients.iter().zip(&divisors) {
            total = total.add(&q.mul(d).unwrap()).unwrap();
        }
        prop_assert_eq!(total, f);
        for m in remainder.support() {
            for d in &divisors {
                prop_assert!(!d.leading_monomial(&ord).unwrap().divides(m).unwrap());
            }
        }
    }

    // Reduction: degree window, idempotence, root preservation, and
    // independence from the divisor list order.
    #[test]
    fn reduction_contract(f in arb_poly("3", 2, 7, 4)) {
        prop_assume!(!f.is_zero());
        let field = Field::parse("3").unwrap();
        let grid = Grid::full(&field, 2).unwrap();
        let reduced = f.reduce_mod_grid(&grid).unwrap();
        prop_assert!(reduced.is_reduced(&grid));
        prop_assert_eq!(reduced.reduce_mod_grid(&grid).unwrap(), reduced.clone());
        for pt in grid.points() {
            prop_assert_eq!(
                f.evaluate(&pt).unwrap(),
                reduced.evaluate(&pt).unwrap()
            );
        }
        let mut divisors = grid.vanishing_polynomials();
        divisors.reverse();
        let ord = MonomialOrder::lex(vec![1, 0]).unwrap();
        let (_, other) = f.divide(&divisors, &ord).unwrap();
        prop_assert_eq!(other, reduced);
    }

    // Every concrete ordering's leading monomial is a possible one.
    #[test]
    fn possible_lms_cover_concrete_orderings(f in arb_poly("2^2", 2, 3, 4)) {
        prop_assume!(!f.is_zero());
        let possible = possible_leading_monomials(&f).unwrap();
        for ord in MonomialOrder::builtin_orderings(2) {
            prop_assert!(possible.contains(&f.leading_monomial(&ord).unwrap()));
        }
    }

    // parse . print is the identity on canonical polynomials.
    #[test]
    fn text_round_trip(f in arb_poly("3^2", 2, 4, 5)) {
        let field = Field::parse("3^2").unwrap();
        let back = Polynomial::parse(&f.to_string(), &field, 2).unwrap();
        prop_assert_eq!(back, f);
    }

    // Substitution composed over all variables equals direct evaluation.
    #[test]
    fn substitution_matches_evaluation(
        f in arb_poly("2^2", 3, 3, 4),
        idx in prop::collection::vec(0u64..4, 3),
    ) {
        let field = Field::parse("2^2").unwrap();
        let pt: Vec<_> = idx
            .iter()
            .map(|&i| field.element_from_index(i).unwrap())
            .collect();
        let mut g = f.clone();
        for (var, a) in pt.iter().enumerate() {
            g = g.substitute_variable(var, a).unwrap();
        }
        let direct = f.evaluate(&pt).unwrap();
        prop_assert_eq!(g.constant_value().cloned().unwrap_or(field.zero()), direct);
    }

    // Counting agrees with the independent pointwise root set.
    #[test]
    fn count_matches_root_set(f in arb_poly("2^2", 2, 3, 4)) {
        prop_assume!(!f.is_zero());
        let field = Field::parse("2^2").unwrap();
        let grid = Grid::full(&field, 2).unwrap();
        prop_assert_eq!(
            grid.count_roots(&f).unwrap(),
            grid.root_set(&f).unwrap().len() as u64
        );
    }
}
