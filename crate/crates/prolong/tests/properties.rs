//! Randomized invariants of prolongation, monomial pruning, circuit
//! decomposition, and polarization, checked in exact arithmetic over many
//! small instances.

use proptest::prelude::*;
use prolong::blowup::build_blowup_graph;
use prolong::circuits::circuits_and_decomposition;
use prolong::engine::{self, Strategy as Alg};
use prolong::mono::MonomialSpace;
use prolong::monomial::{factorial, monomials_of_degree};
use prolong::{FormSpace, Polynomial, Q, VarSet, Z};

fn qi(n: i64) -> Q {
    Q::from(Z::from(n))
}

fn fact(n: u32) -> Q {
    Q::from(factorial(n))
}

/// Terms are (index into monomials_of_degree(n, d), coefficient).
fn space_from_terms(n: usize, d: u32, gens: Vec<Vec<(usize, i64)>>) -> FormSpace {
    let vars = VarSet::numbered("x", n);
    let monos = monomials_of_degree(n, d);
    let polys: Vec<Polynomial> = gens
        .into_iter()
        .map(|terms| {
            Polynomial::from_terms(
                vars.clone(),
                terms.into_iter().map(|(i, c)| (monos[i].clone(), qi(c))),
            )
        })
        .collect();
    FormSpace::new(vars, d, polys).expect("generators share the stated degree")
}

fn small_coeff() -> impl Strategy<Value = i64> + Clone {
    prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])
}

/// A form space with up to six sparse generators, n in 2..=5, d in 1..=3.
fn arb_space() -> impl Strategy<Value = FormSpace> {
    (2usize..=5, 1u32..=3)
        .prop_flat_map(|(n, d)| {
            let count = monomials_of_degree(n, d).len();
            let term = (0..count, small_coeff());
            let gens = prop::collection::vec(prop::collection::vec(term, 1..=3), 1..=6);
            (Just(n), Just(d), gens)
        })
        .prop_map(|(n, d, gens)| space_from_terms(n, d, gens))
}

/// A pair A within B over the same variables and degree.
fn arb_nested_pair() -> impl Strategy<Value = (FormSpace, FormSpace)> {
    (2usize..=5, 1u32..=3)
        .prop_flat_map(|(n, d)| {
            let count = monomials_of_degree(n, d).len();
            let gen = prop::collection::vec((0..count, small_coeff()), 1..=3);
            let inner = prop::collection::vec(gen.clone(), 1..=4);
            let extra = prop::collection::vec(gen, 0..=2);
            (Just(n), Just(d), inner, extra)
        })
        .prop_map(|(n, d, inner, extra)| {
            let a = space_from_terms(n, d, inner.clone());
            let mut all = inner;
            all.extend(extra);
            (a, space_from_terms(n, d, all))
        })
}

/// A nonempty set of distinct monomials of one degree.
fn arb_monomial_space(degrees: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = MonomialSpace> {
    (2usize..=5, degrees)
        .prop_flat_map(|(n, d)| {
            let count = monomials_of_degree(n, d).len();
            let picks = prop::collection::btree_set(0..count, 1..=count.min(6));
            (Just(n), Just(d), picks)
        })
        .prop_map(|(n, d, picks)| {
            let all = monomials_of_degree(n, d);
            MonomialSpace::new(
                VarSet::numbered("x", n),
                d,
                picks.into_iter().map(|i| all[i].clone()),
            )
            .expect("picked monomials share the stated degree")
        })
}

/// A space spanned by differences of monomials. These decompose into one
/// dimensional support blocks often enough to exercise the conditional
/// circuit property.
fn arb_binomial_space() -> impl Strategy<Value = FormSpace> {
    (2usize..=5, 1u32..=3)
        .prop_flat_map(|(n, d)| {
            let count = monomials_of_degree(n, d).len();
            let pairs = prop::collection::vec((0..count, 0..count), 1..=4);
            (Just(n), Just(d), pairs)
        })
        .prop_map(|(n, d, pairs)| {
            let gens = pairs
                .into_iter()
                .map(|(i, j)| vec![(i, 1), (j, -1)])
                .collect();
            space_from_terms(n, d, gens)
        })
}

/// A nonzero homogeneous form with distinct-monomial terms.
fn arb_form(degrees: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = (usize, Polynomial)> {
    (2usize..=5, degrees)
        .prop_flat_map(|(n, d)| {
            let count = monomials_of_degree(n, d).len();
            let terms = prop::collection::btree_map(0..count, small_coeff(), 1..=4);
            (Just(n), Just(d), terms)
        })
        .prop_map(|(n, d, terms)| {
            let vars = VarSet::numbered("x", n);
            let monos = monomials_of_degree(n, d);
            let f = Polynomial::from_terms(
                vars,
                terms.into_iter().map(|(i, c)| (monos[i].clone(), qi(c))),
            );
            (n, f)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn every_strategy_computes_the_same_prolongation(a in arb_space(), r in 1u32..=2) {
        let reference = engine::prolong(&a, r, Alg::Derivative).unwrap();
        for &s in &Alg::ALL[1..] {
            prop_assert_eq!(&engine::prolong(&a, r, s).unwrap(), &reference, "strategy {}", s);
        }
    }

    #[test]
    fn prolonging_r_steps_equals_r_single_steps(a in arb_space(), r in 1u32..=2) {
        let direct = engine::prolong(&a, r, Alg::Derivative).unwrap();
        let mut stepped = a;
        for _ in 0..r {
            stepped = engine::prolong(&stepped, 1, Alg::Derivative).unwrap();
        }
        prop_assert_eq!(direct, stepped);
    }

    #[test]
    fn order_r_derivatives_of_prolonged_forms_land_in_the_space(
        a in arb_space(),
        r in 1u32..=2,
    ) {
        let p = engine::prolong(&a, r, Alg::Derivative).unwrap();
        for f in p.basis() {
            for beta in monomials_of_degree(a.vars().len(), r) {
                prop_assert!(a.contains(&f.differentiate(&beta)).unwrap());
            }
        }
    }

    #[test]
    fn prolongation_preserves_containment((a, b) in arb_nested_pair(), r in 1u32..=2) {
        let pa = engine::prolong(&a, r, Alg::Derivative).unwrap();
        let pb = engine::prolong(&b, r, Alg::Derivative).unwrap();
        prop_assert!(pb.contains_space(&pa).unwrap());
    }

    #[test]
    fn support_of_prolongation_respects_monomial_pruning(a in arb_space(), r in 1u32..=2) {
        let p = engine::prolong(&a, r, Alg::Derivative).unwrap();
        let bound = MonomialSpace::support_of(&a).prolong(r).unwrap();
        for m in p.monomial_support() {
            prop_assert!(bound.contains(&m), "{} escapes the bound", m.format(a.vars()));
        }
    }

    #[test]
    fn circuit_generation_survives_prolongation(a in arb_binomial_space(), r in 1u32..=2) {
        prop_assume!(circuits_and_decomposition(&a).minimally_generated_by_circuits);
        let p = engine::prolong(&a, r, Alg::Derivative).unwrap();
        prop_assert!(circuits_and_decomposition(&p).minimally_generated_by_circuits);
    }

    #[test]
    fn monomial_spans_prolong_to_monomial_spans(
        m in arb_monomial_space(1..=3),
        r in 1u32..=2,
    ) {
        let direct = engine::prolong(&m.to_formspace(), r, Alg::Derivative).unwrap();
        prop_assert_eq!(direct, m.prolong(r).unwrap().to_formspace());
    }

    #[test]
    fn clique_enumeration_matches_divisor_filtering(
        m in arb_monomial_space(2..=2),
        r in 1u32..=2,
    ) {
        let graph = build_blowup_graph(&m, r).unwrap();
        prop_assert_eq!(graph.clique_prolong(), m.prolong(r).unwrap());
    }

    #[test]
    fn monomial_prolongation_iterates_one_step_at_a_time(
        m in arb_monomial_space(1..=3),
        r in 1u32..=2,
    ) {
        let direct = m.prolong(r).unwrap();
        let mut stepped = m;
        for _ in 0..r {
            stepped = stepped.prolong(1).unwrap();
        }
        prop_assert_eq!(direct, stepped);
    }

    #[test]
    fn polarization_is_symmetric_multilinear_and_rescales_the_diagonal(
        (_, f) in arb_form(1..=3),
    ) {
        let d = f.homogeneous_degree().unwrap().unwrap();
        let p = prolong::polarize::polarize(&f).unwrap();
        prop_assert!(p.is_multilinear());
        for a in 1..=p.blocks() {
            for b in (a + 1)..=p.blocks() {
                let swapped = p.swap_blocks(a, b);
                prop_assert_eq!(swapped.poly(), p.poly());
            }
        }
        prop_assert_eq!(p.diagonal(), f.scale(&fact(d)));
    }

    #[test]
    fn partial_polarization_recovers_scaled_derivatives(
        (split, (n, f)) in (2u32..=3)
            .prop_flat_map(|t| (1..t, Just(t)))
            .prop_flat_map(|(r, t)| (Just((t - r, r)), arb_form(t..=t))),
    ) {
        let (d, r) = split;
        let p = prolong::polarize::partial_polarize(&f, d, r).unwrap();
        let scale = fact(d) * fact(r);
        for beta in monomials_of_degree(n, r) {
            let direct = f.differentiate(&beta).scale(&scale);
            prop_assert_eq!(direct, p.block_derivative_at_zero(2, &beta), "beta = {:?}", beta);
        }
    }

    #[test]
    fn derivatives_compose_through_monomial_products(
        (n, f) in arb_form(2..=3),
        picks in prop::collection::vec(0usize..5, 2),
    ) {
        let b1 = prolong::Monomial::var(n, picks[0] % n);
        let b2 = prolong::Monomial::var(n, picks[1] % n);
        let twice = f.differentiate(&b1).differentiate(&b2);
        prop_assert_eq!(&twice, &f.differentiate(&b1.mul(&b2)));
        prop_assert_eq!(&twice, &f.differentiate(&b2).differentiate(&b1));
    }
}
