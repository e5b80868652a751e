use orthograph::core::polyspace::orthopoly;
use orthograph::core::symnum::{IntPoly, RatFunc, Style};
use orthograph::core::{Graph, Setting, Vertex};
use orthograph::format::{self, ParseError};
use proptest::prelude::*;

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec(-20i64..21, 1..5), prop::collection::vec(-3i64..5, 0..3), 0usize..4).prop_map(
        |(num, shifts, npow)| {
            let mut den = IntPoly::monomial(1, npow);
            for s in shifts {
                den = &den * &IntPoly::affine(1, s);
            }
            RatFunc::new(IntPoly::from_i64s(&num), den).unwrap()
        },
    )
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    let settings = prop_oneof![Just(Setting::Gaussian), Just(Setting::Spherical), Just(Setting::Boolean)];
    (settings, prop::collection::vec((1u32..5, 1u32..5), 0..4)).prop_map(|(s, pairs)| {
        let pairs: Vec<(Vertex, Vertex)> = pairs.into_iter().filter(|(a, b)| a != b || s.allows_loops()).collect();
        Graph::on_vertices(s, &[1, 2, 3, 4], &pairs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_text_round_trip(r in arb_ratfunc()) {
        for style in [Style::Ascii, Style::Unicode] {
            let text = r.render(style);
            prop_assert_eq!(format::parse_ratfunc(&text).unwrap(), r.clone(), "{}", text);
        }
        prop_assert_eq!(format::ratfunc_from_json(&format::ratfunc_to_json(&r)).unwrap(), r);
    }

    #[test]
    fn graph_json_round_trip(g in arb_graph()) {
        let text = format::graph_to_json(&g).to_string();
        prop_assert_eq!(format::graph_from_json(&text, None).unwrap(), g);
    }

    #[test]
    fn orthopoly_text_and_json_round_trip(g in arb_graph()) {
        let p = orthopoly(&g).unwrap();
        for style in [Style::Ascii, Style::Unicode] {
            let text = p.render(style);
            prop_assert_eq!(format::parse_poly(&text, g.setting(), Some(g.vertices())).unwrap(), p.clone(), "{}", text);
        }
        prop_assert_eq!(format::poly_from_json(&format::poly_to_json(&p)).unwrap(), p);
    }
}

#[test]
fn syntax_errors_carry_positions() {
    match format::parse_poly("x12 + (n", Setting::Spherical, None) {
        Err(ParseError::Syntax { line, column, .. }) => {
            assert_eq!(line, 1);
            assert!(column >= 7, "{column}");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(format::graph_from_json("[[1,2]", None), Err(ParseError::Json(_))));
    assert!(format::graph_from_json("[[1,1]]", Some(Setting::Spherical)).is_err());
}

#[test]
fn fourier_targets() {
    let text = r#"{"setting": "spherical", "n": 6, "targets": [{"edges": [[1,2],[2,3],[3,4],[4,5],[1,5]], "value": "1/3"}]}"#;
    let (graphs, target) = format::fourier_target_from_json(text).unwrap();
    assert_eq!(graphs.len(), 1);
    assert_eq!(target.n, 6);
    assert_eq!(target.targets[0].1, format::parse_rational("1/3").unwrap());
}
