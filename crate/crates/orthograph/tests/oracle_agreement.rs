use num_rational::BigRational;
use orthograph::core::polyspace::{expectation_graph, inner_product, orthopoly};
use orthograph::core::{Graph, InvariantPoly, Setting};
use orthograph::oracle::{self, SampleConfig};
use orthograph::verify;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `E[<a,b>^k]` over `a, b` uniform in `{±1}^n`, by listing all points.
fn cube_power(n: u32, k: u32) -> BigRational {
    let mut total = 0i64;
    for a in 0..1u32 << n {
        for b in 0..1u32 << n {
            let dot = n as i64 - 2 * i64::from((a ^ b).count_ones());
            total += dot.pow(k);
        }
    }
    q(total, 1i64 << (2 * n))
}

#[test]
fn boolean_moments_on_the_cube() {
    for (k, edges) in [(2u32, 2usize), (4, 4)] {
        let g = Graph::from_pairs(Setting::Boolean, &vec![(1, 2); edges]).unwrap();
        for n in 2..=4u32 {
            let want = cube_power(n, k);
            assert_eq!(expectation_graph(&g).unwrap().eval_int(n.into()).unwrap(), want);
            assert_eq!(oracle::exact_expectation_graph(&g, n.into()).unwrap(), want);
        }
    }
    assert_eq!(cube_power(3, 4), q(21, 1));
}

/// `E[<a,b>^2 <a,c>^2]` for independent standard Gaussians: by hand,
/// `n(n + 2)`.
#[test]
fn gaussian_shared_vertex() {
    let g = Graph::from_pairs(Setting::Gaussian, &[(1, 2), (1, 2), (1, 3), (1, 3)]).unwrap();
    for n in 2..=6i64 {
        let want = q(n * (n + 2), 1);
        assert_eq!(expectation_graph(&g).unwrap().eval_int(n).unwrap(), want);
        assert_eq!(oracle::exact_expectation_graph(&g, n).unwrap(), want);
    }
}

#[test]
fn spherical_triangle_expectation() {
    let tri = Graph::from_pairs(Setting::Spherical, &[(1, 2), (2, 3), (1, 3)]).unwrap();
    for n in 2..=6i64 {
        assert_eq!(oracle::exact_expectation_graph(&tri, n).unwrap(), q(1, n * n));
        assert_eq!(expectation_graph(&tri).unwrap().eval_int(n).unwrap(), q(1, n * n));
    }
}

#[test]
fn gram_schmidt_spot_checks() {
    let graphs = [
        Graph::from_pairs(Setting::Gaussian, &[(1, 2), (2, 3), (1, 3)]).unwrap(),
        Graph::from_pairs(Setting::Spherical, &[(1, 2), (1, 2), (2, 3)]).unwrap(),
        Graph::from_hyperedges(Setting::Boolean, &[&[1, 2, 3, 4], &[1, 2]]).unwrap(),
    ];
    for g in &graphs {
        for n in [4i64, 5] {
            let p = orthopoly(g).unwrap().eval_at(n).unwrap();
            assert_eq!(oracle::gram_schmidt_at_n(g, n).unwrap(), p, "{g:?}");
            assert_eq!(oracle::truncation_at_n(g, n).unwrap(), p, "{g:?}");
        }
    }
}

#[test]
fn norms_agree_with_the_oracle() {
    let g = Graph::from_pairs(Setting::Spherical, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
    for n in [4i64, 6] {
        assert_eq!(oracle::norm_squared_at_n(&g, n).unwrap(), inner_product(&g, &g).unwrap().eval_int(n).unwrap());
    }
}

#[test]
fn monte_carlo_is_seeded() {
    let g = Graph::from_pairs(Setting::Spherical, &[(1, 2), (1, 2)]).unwrap();
    let p = InvariantPoly::monomial(&g).eval_at(10).unwrap();
    let cfg = SampleConfig { n: 10, sample_count: 20_000, rng_seed: 7, tolerance_sigmas: 4.0 };
    let a = oracle::monte_carlo_expectation(&p, &cfg).unwrap();
    let b = oracle::monte_carlo_expectation(&p, &cfg).unwrap();
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    assert!(a.within(0.1, 4.0));
}

#[test]
fn suites_report_no_failures() {
    for suite in ["named-pairs", "inversion", "invariance", "isserlis-discrepancy", "dominance"] {
        let r = verify::run(suite, verify::DEFAULT_SEED).unwrap().unwrap();
        assert!(r.passed(), "{suite}: {:?}", r.failures().collect::<Vec<_>>());
    }
    assert!(verify::run("no-such-suite", 0).is_none());
}
