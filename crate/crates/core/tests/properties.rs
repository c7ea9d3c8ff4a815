//! Cross-module algebraic properties on randomized inputs.

use chainrec_core::chainsum::{phi_binary, phi_chain, phi_dp, PhiRequest};
use chainrec_core::random::{random_problem, seeded_rng};
use chainrec_core::recurrence::eval_direct;
use chainrec_core::vectorproof::build_w;
use chainrec_core::{
    CoefficientSource, ForcingSource, Problem, Realization, Scalar, Symbol, SymbolProduct,
    SymbolicPoly,
};
use num::BigRational;
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Scalar::rational(p, q))
}

fn arb_symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        (1u32..=4).prop_flat_map(|n| (Just(n), 0..n)).prop_map(|(n, j)| Symbol::a(n, j)),
        (1u32..=3).prop_map(Symbol::c),
        Just(Symbol::W0),
    ]
}

fn arb_poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(
        (prop::collection::vec(arb_symbol(), 0..3), -9i64..=9),
        0..5,
    )
    .prop_map(|terms| {
        Scalar::Symbolic(SymbolicPoly::from_terms(terms.into_iter().map(
            |(symbols, coeff)| {
                (
                    SymbolProduct::from_symbols(symbols),
                    BigRational::new(coeff.into(), 1.into()),
                )
            },
        )))
    })
}

fn arb_exact() -> impl Strategy<Value = Scalar> {
    prop_oneof![arb_rational(), arb_poly()]
}

/// Both operands drawn in the same realization.
fn arb_exact_pair() -> impl Strategy<Value = (Scalar, Scalar)> {
    prop_oneof![
        (arb_rational(), arb_rational()),
        (arb_poly(), arb_poly()),
    ]
}

fn arb_exact_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop_oneof![
        (arb_rational(), arb_rational(), arb_rational()),
        (arb_poly(), arb_poly(), arb_poly()),
    ]
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative((x, y, z) in arb_exact_triple()) {
        let left = x.add(&y).unwrap().add(&z).unwrap();
        let right = x.add(&y.add(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
    }

    #[test]
    fn multiplication_is_associative_and_commutative((x, y, z) in arb_exact_triple()) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }

    #[test]
    fn multiplication_distributes_over_addition((x, y, z) in arb_exact_triple()) {
        let left = x.mul(&y.add(&z).unwrap()).unwrap();
        let right = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_hold(x in arb_exact()) {
        let realization = x.realization();
        prop_assert_eq!(x.add(&Scalar::zero(realization)).unwrap(), x.clone());
        prop_assert_eq!(x.mul(&Scalar::one(realization)).unwrap(), x.clone());
        prop_assert_eq!(x.mul(&Scalar::zero(realization)).unwrap(), Scalar::zero(realization));
    }

    #[test]
    fn additive_inverse_cancels_structurally((x, y) in arb_exact_pair()) {
        let sum = x.add(&y).unwrap();
        let back = sum.add(&y.neg()).unwrap();
        prop_assert_eq!(back, x.clone());
        // adding and subtracting the same polynomial leaves the structural zero
        let zero = x.add(&x.neg()).unwrap();
        prop_assert!(zero.is_zero());
        if let Scalar::Symbolic(p) = &zero {
            prop_assert_eq!(p.num_monomials(), 0);
        }
    }

    #[test]
    fn shifts_compose_additively(seed in 0u64..1000, l1 in 0u32..4, l2 in 0u32..4) {
        let mut rng = seeded_rng(seed);
        let source = chainrec_core::random::random_coefficients(&mut rng, 12);
        let twice = source.shifted(l1).shifted(l2);
        let once = source.shifted(l1 + l2);
        for n in 1..=4u32 {
            for j in 0..n {
                prop_assert_eq!(twice.at(n, j).unwrap(), once.at(n, j).unwrap());
            }
        }
    }

    #[test]
    fn forcing_is_linear_and_superposable(seed in 0u64..500) {
        let mut rng = seeded_rng(seed);
        let horizon = 6u32;
        let coefficients = chainrec_core::random::random_coefficients(&mut rng, horizon);
        let forcing_a = chainrec_core::random::random_forcing(&mut rng, horizon);
        let forcing_b = chainrec_core::random::random_forcing(&mut rng, horizon);
        let w0 = chainrec_core::random::random_rational(&mut rng);
        let zero = Scalar::zero(Realization::Rational);

        // combined forcing table c_a + c_b
        let combined = ForcingSource::table(
            (1..=horizon).map(|n| {
                (
                    n,
                    forcing_a.at(n).unwrap().add(&forcing_b.at(n).unwrap()).unwrap(),
                )
            }),
            Realization::Rational,
        )
        .unwrap();

        let run = |w0: &Scalar, forcing: &ForcingSource| {
            eval_direct(
                &Problem::new(w0.clone(), coefficients.clone(), forcing.clone(), horizon)
                    .unwrap(),
            )
            .unwrap()
        };

        // linearity in the forcing at w0 = 0
        let both = run(&zero, &combined);
        let only_a = run(&zero, &forcing_a);
        let only_b = run(&zero, &forcing_b);
        for n in 0..=horizon as usize {
            prop_assert_eq!(
                both.terms[n].clone(),
                only_a.terms[n].add(&only_b.terms[n]).unwrap()
            );
        }

        // superposition: full solution = homogeneous(w0) + forced(0)
        let full = run(&w0, &forcing_a);
        let homogeneous = run(&w0, &ForcingSource::zero(Realization::Rational));
        for n in 0..=horizon as usize {
            prop_assert_eq!(
                full.terms[n].clone(),
                homogeneous.terms[n].add(&only_a.terms[n]).unwrap()
            );
        }
    }

    #[test]
    fn phi_routes_agree(seed in 0u64..300, n in 0u32..=8) {
        let mut rng = seeded_rng(seed);
        let source = chainrec_core::random::random_coefficients(&mut rng, n.max(1));
        let req = PhiRequest::new(n, source);
        let by_binary = phi_binary(&req).unwrap();
        let by_chain = phi_chain(&req).unwrap();
        let by_dp = phi_dp(&req).unwrap();
        prop_assert_eq!(&by_binary, &by_chain);
        prop_assert_eq!(&by_chain, &by_dp);
    }

    #[test]
    fn state_vector_entry_sum_is_the_prefix_sum(seed in 0u64..300, n in 1u32..=7) {
        let mut rng = seeded_rng(seed);
        let problem = random_problem(&mut rng, n);
        let direct = eval_direct(&problem).unwrap();
        let w = build_w(&problem, n).unwrap();
        prop_assert_eq!(w.l1().unwrap(), direct.prefix[n as usize].clone());
    }

    #[test]
    fn generic_chain_monomials_have_unit_coefficients(n in 0u32..=8) {
        let req = PhiRequest::new(n, CoefficientSource::generic());
        let phi = phi_chain(&req).unwrap();
        let poly = phi.as_poly().unwrap();
        prop_assert_eq!(poly.num_monomials(), 1usize << n);
        for (_, coeff) in poly.terms() {
            prop_assert!(num::traits::One::is_one(coeff));
        }
    }
}

/// The prefix-sum closed form holds deep into the polynomial-time range,
/// and also when the operator inside it is evaluated by the binary route.
#[test]
fn closed_form_holds_at_depth_and_through_the_binary_route() {
    use chainrec_core::chainsum::prefix_sum_closed_form;

    let mut rng = seeded_rng(0xD0_0064);
    let problem = random_problem(&mut rng, 64);
    let direct = eval_direct(&problem).unwrap();
    for n in 1..=64u32 {
        assert_eq!(
            prefix_sum_closed_form(&problem, n).unwrap(),
            direct.prefix[n as usize],
            "dp-route closed form at n = {n}"
        );
    }

    // same closed form, operator values taken from the binary expansion
    let problem = random_problem(&mut rng, 14);
    let direct = eval_direct(&problem).unwrap();
    let coefficients = problem.coefficients();
    for n in 1..=14u32 {
        let phi_full = phi_binary(&PhiRequest::new(n, coefficients.clone())).unwrap();
        let mut total = problem.w0().mul(&phi_full).unwrap();
        for l in 1..=n {
            let phi = phi_binary(&PhiRequest::new(n - l, coefficients.shifted(l))).unwrap();
            let c_l = problem.forcing().at(l).unwrap();
            total = total.add(&c_l.mul(&phi).unwrap()).unwrap();
        }
        assert_eq!(
            total, direct.prefix[n as usize],
            "binary-route closed form at n = {n}"
        );
    }
}

/// The float realization is excluded from exact-identity suites; the routes
/// still have to agree within floating tolerance.
#[test]
fn float_routes_agree_within_tolerance() {
    use chainrec_core::chainsum::{prefix_sum_closed_form, term_closed_form};
    use chainrec_core::expr::{parse, VarSet};

    let problem = Problem::new(
        Scalar::Float(1.5),
        CoefficientSource::expression(
            parse("1/(n + j + 1)", VarSet::NAndJ).unwrap(),
            Realization::Float,
        )
        .unwrap(),
        ForcingSource::expression(parse("1/n - 1", VarSet::NOnly).unwrap(), Realization::Float)
            .unwrap(),
        12,
    )
    .unwrap();
    let direct = eval_direct(&problem).unwrap();
    let tol = 1e-9;
    for n in 1..=12u32 {
        let prefix = prefix_sum_closed_form(&problem, n).unwrap();
        assert!(
            prefix.approx_eq(&direct.prefix[n as usize], tol),
            "prefix at n = {n}: {prefix} vs {}",
            direct.prefix[n as usize]
        );
        let term = term_closed_form(&problem, n).unwrap();
        assert!(
            term.approx_eq(&direct.terms[n as usize], tol),
            "term at n = {n}: {term} vs {}",
            direct.terms[n as usize]
        );
        let state = build_w(&problem, n).unwrap();
        assert!(state.l1().unwrap().approx_eq(&direct.prefix[n as usize], tol));
        for j in 0..=n {
            assert!(state
                .block_sum(j)
                .unwrap()
                .approx_eq(&direct.terms[j as usize], tol));
        }
    }
}
