use orthograph_core::polyspace::{
    cancellation_applies, degree4_inner_product, inner_product, inner_product_upper_bound,
    inner_product_via_expectation,
};
use orthograph_core::symnum::Style;
use orthograph_core::{Graph, Setting};

fn sph(vs: &[u32], pairs: &[(u32, u32)]) -> Graph {
    Graph::on_vertices(Setting::Spherical, vs, pairs).unwrap()
}

fn k5_pair() -> (Graph, Graph) {
    let vs = [1, 2, 3, 4, 5];
    (
        sph(&vs, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]),
        sph(&vs, &[(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)]),
    )
}

#[test]
fn k5_cycles() {
    let (g, h) = k5_pair();
    let v = inner_product(&g, &h).unwrap();
    assert_eq!(v.render(Style::Ascii), "-8(n-1)(n-2)(n-4)/(n^8(n+2)^4)");
    assert_eq!(degree4_inner_product(&g, &h).unwrap(), v);
    assert_eq!(inner_product_via_expectation(&g, &h).unwrap(), v);
    assert!(!cancellation_applies(&g, &h).unwrap());
    let bound = inner_product_upper_bound(&g, &h).unwrap();
    assert_eq!(bound.order(), Some(-8));
    assert_eq!(v.order(), Some(-9));
}

#[test]
fn parallel_four_cycles() {
    let vs = [1, 2, 3, 4];
    let g = sph(&vs, &[(1, 2), (1, 2), (3, 4), (3, 4)]);
    let h = sph(&vs, &[(2, 3), (2, 3), (1, 4), (1, 4)]);
    let v = inner_product(&g, &h).unwrap();
    assert_eq!(v.render(Style::Ascii), "8(n-1)/(n^4(n+2)^3)");
    assert_eq!(degree4_inner_product(&g, &h).unwrap(), v);
    assert_eq!(inner_product_via_expectation(&g, &h).unwrap(), v);
}
