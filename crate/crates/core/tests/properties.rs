use num_rational::BigRational;
use orthograph_core::polyspace::{expectation, expectation_graph, inner_product, orthopoly};
use orthograph_core::symnum::{IntPoly, RatFunc};
use orthograph_core::{Graph, InvariantPoly, Setting, Vertex};
use proptest::prelude::*;

fn ratfunc(num: Vec<i64>, shifts: Vec<i64>, npow: u32) -> RatFunc {
    let mut den = IntPoly::monomial(1, npow as usize);
    for s in shifts {
        den = &den * &IntPoly::affine(1, s);
    }
    RatFunc::new(IntPoly::from_i64s(&num), den).unwrap()
}

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec(-9i64..10, 1..4), prop::collection::vec(1i64..5, 0..3), 0u32..3)
        .prop_map(|(a, b, c)| ratfunc(a, b, c))
}

fn settings() -> impl Strategy<Value = Setting> {
    prop_oneof![Just(Setting::Gaussian), Just(Setting::Spherical), Just(Setting::Boolean)]
}

/// Graphs on vertices 1..=4 with up to `max_edges` edges, legal in the setting.
fn arb_graph(setting: Setting, max_edges: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec((1u32..5, 1u32..5), 0..=max_edges).prop_map(move |pairs| {
        let pairs: Vec<(Vertex, Vertex)> = pairs
            .into_iter()
            .filter(|(a, b)| a != b || setting.allows_loops())
            .collect();
        Graph::on_vertices(setting, &[1, 2, 3, 4], &pairs).unwrap()
    })
}

fn arb_perm() -> impl Strategy<Value = Vec<Vertex>> {
    Just(vec![1, 2, 3, 4]).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_laws(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn ratfunc_evaluation_is_a_homomorphism(a in arb_ratfunc(), b in arb_ratfunc(), x in 6i64..40) {
        let ea = a.eval_int(x).unwrap();
        let eb = b.eval_int(x).unwrap();
        prop_assert_eq!((&a * &b).eval_int(x).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval_int(x).unwrap(), ea + eb);
    }

    #[test]
    fn iso_key_ignores_relabeling((s, g) in settings().prop_flat_map(|s| (Just(s), arb_graph(s, 5))), perm in arb_perm()) {
        let h = g.relabel(|v| perm[v as usize - 1]).unwrap();
        prop_assert_eq!(g.iso_key(), h.iso_key());
        prop_assert_eq!(g.setting(), s);
    }

    #[test]
    fn orthopoly_is_monic_and_centered((_s, g) in settings().prop_flat_map(|s| (Just(s), arb_graph(s, 3)))) {
        let p = orthopoly(&g).unwrap();
        prop_assert!(p.coeff(&g).is_one());
        let e = expectation(&p).unwrap();
        if g.num_edges() == 0 {
            prop_assert!(e.is_one());
        } else {
            prop_assert!(e.is_zero());
        }
    }

    #[test]
    fn inner_product_symmetric_and_invariant(
        (g, h) in settings().prop_flat_map(|s| (arb_graph(s, 3), arb_graph(s, 3))),
        perm in arb_perm(),
    ) {
        let v = inner_product(&g, &h).unwrap();
        prop_assert_eq!(inner_product(&h, &g).unwrap(), v.clone());
        let f = |v: Vertex| perm[v as usize - 1];
        let (pg, ph) = (g.relabel(f).unwrap(), h.relabel(f).unwrap());
        prop_assert_eq!(inner_product(&pg, &ph).unwrap(), v.clone());
        if !g.degree_equivalent(&h).unwrap() {
            prop_assert!(v.is_zero());
        }
    }

    #[test]
    fn expectation_is_linear((s, g, h) in settings().prop_flat_map(|s| (Just(s), arb_graph(s, 3), arb_graph(s, 3))), a in -5i64..6) {
        let mut p = InvariantPoly::zero(s, g.vertices());
        p.add_term(g.edges().to_vec(), RatFunc::from_int(a));
        p.add_term(h.edges().to_vec(), RatFunc::n_pow(1));
        let want = &(&RatFunc::from_int(a) * &expectation_graph(&g).unwrap())
            + &(&RatFunc::n_pow(1) * &expectation_graph(&h).unwrap());
        prop_assert_eq!(expectation(&p).unwrap(), want);
    }
}

#[test]
fn ratfunc_eval_matches_rational_arithmetic() {
    let r = ratfunc(vec![3, -1], vec![2], 1);
    let x = BigRational::from_integer(5.into());
    assert_eq!(r.eval(&x).unwrap(), BigRational::new((-2).into(), 35.into()));
}
